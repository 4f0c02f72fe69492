#pragma once

// Text language for describing polynomials, 1-forms, form spaces, Lie
// algebras, Godbillon-Vey sequences, point configurations and the analysis
// queries over them.  See docs/grammar.ebnf for the full grammar.
//
// Precedence, tightest first:  ^   *   unary -   /\   + -
// d(...) is a primary expression.  Rationals are written p/q with integer
// literals; there are no floating-point literals.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/exterior.hpp"
#include "iforms/formspace.hpp"
#include "iforms/gv.hpp"
#include "iforms/lie.hpp"
#include "iforms/steiner.hpp"

namespace iforms::dsl {

struct SrcLoc {
  int line = 1;
  int col = 1;
};

struct Diagnostic {
  SrcLoc loc;
  std::string message;
  std::vector<std::string> expected; // candidate tokens, may be empty

  std::string to_string() const {
    std::string s = std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) s += ", ";
        s += expected[i];
      }
      s += ")";
    }
    return s;
  }
};

struct ParseError : Error {
  Diagnostic diag;
  explicit ParseError(Diagnostic d) : Error(d.to_string()), diag(std::move(d)) {}
};

struct ElabError : Error {
  Diagnostic diag;
  explicit ElabError(Diagnostic d) : Error(d.to_string()), diag(std::move(d)) {}
  ElabError(SrcLoc loc, std::string msg) : ElabError(Diagnostic{loc, std::move(msg), {}}) {}
};

// --------------------------------------------------------------------------
// Tokens
// --------------------------------------------------------------------------

enum class Tok {
  Integer, Name,
  Semi, Comma, LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Assign, Plus, Minus, Star, Caret, Slash, Wedge,
  End
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Integer: return "integer";
    case Tok::Name: return "name";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::Wedge: return "'/\\'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SrcLoc loc;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  SrcLoc loc;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t n = 0; n < k; ++n) {
      if (i < src.size() && src[i] == '\n') {
        ++loc.line;
        loc.col = 1;
      } else {
        ++loc.col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SrcLoc start = loc;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t += src[i];
        advance(1);
      }
      out.push_back({Tok::Integer, std::move(t), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t += src[i];
        advance(1);
      }
      out.push_back({Tok::Name, std::move(t), start});
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '\\') {
      advance(2);
      out.push_back({Tok::Wedge, "/\\", start});
      continue;
    }
    Tok k;
    switch (c) {
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '=': k = Tok::Assign; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '/': k = Tok::Slash; break;
      default:
        throw ParseError(Diagnostic{start, std::string("unexpected character '") + c + "'", {}});
    }
    advance(1);
    out.push_back({k, std::string(1, c), start});
  }
  out.push_back({Tok::End, "", loc});
  return out;
}

// --------------------------------------------------------------------------
// Abstract syntax
// --------------------------------------------------------------------------

struct Expr {
  enum class Kind { Lit, Var, Z, Ref, Neg, Add, Sub, Mul, Pow, Wedge, D };
  Kind kind = Kind::Lit;
  SrcLoc loc;
  Rational lit;          // Lit
  int var = 0;           // Var: coordinate index
  std::string name;      // Ref
  unsigned exponent = 0; // Pow
  std::vector<Expr> kids;
};

struct VectorLit {
  SrcLoc loc;
  std::vector<Rational> entries;
};

struct BracketDef {
  SrcLoc loc;
  int i = 0, j = 0;                            // 1-based basis indices
  std::vector<std::pair<Rational, int>> terms; // coeff, 1-based e-index
};

struct Rhs {
  enum class Kind { Expression, Space, Seq, Points, Algebra };
  Kind kind = Kind::Expression;
  SrcLoc loc;
  std::vector<Expr> exprs;        // Expression (1 entry), Space, Seq
  std::vector<VectorLit> vectors; // Points
  int algebra_dim = 0;            // Algebra
  std::vector<BracketDef> brackets;
};

struct QueryArg {
  std::variant<Expr, VectorLit> value;
};

struct Statement {
  enum class Kind { Ambient, Binding, Query };
  Kind kind = Kind::Ambient;
  SrcLoc loc;
  int ambient = 0;          // Ambient
  std::string name;         // Binding name or query name
  Rhs rhs;                  // Binding
  std::vector<QueryArg> args;
  std::optional<bool> expect; // Query
};

struct Ast {
  std::vector<Statement> statements;
};

inline const std::vector<std::string>& query_names() {
  static const std::vector<std::string> names = {
      "check",     "rank",       "quadrics",    "steiner",  "veronese_web", "lie_jacobi",
      "lie_check", "lie_quadrics", "gv_check",  "gv_curve", "gv_obstruction", "stats"};
  return names;
}

inline bool is_query_name(const std::string& s) {
  for (const auto& q : query_names())
    if (q == s) return true;
  return false;
}

inline bool is_variable_name(const std::string& s) {
  if (s == "z") return true;
  if (s.size() < 2 || s[0] != 'x') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline bool is_reserved_name(const std::string& s) {
  static const std::vector<std::string> words = {"ambient", "space", "seq",  "points",
                                                 "algebra", "d",     "e",    "expect",
                                                 "true",    "false"};
  for (const auto& w : words)
    if (w == s) return true;
  return is_query_name(s) || is_variable_name(s);
}

// --------------------------------------------------------------------------
// Parser: recursive descent with precedence climbing for expressions
// --------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Ast parse_file() {
    Ast ast;
    while (peek().kind != Tok::End) ast.statements.push_back(parse_statement());
    return ast;
  }

 private:
  static constexpr int kMaxDepth = 200;
  static constexpr unsigned kMaxExponent = 1024;
  static constexpr int kMaxAmbient = 64;

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, std::string msg, std::vector<std::string> expected = {}) {
    throw ParseError(Diagnostic{t.loc, std::move(msg), std::move(expected)});
  }

  Token expect(Tok kind) {
    if (peek().kind != kind)
      fail(peek(), std::string("unexpected ") + describe(peek()), {tok_name(kind)});
    return take();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  long expect_small_integer(long max, const char* what) {
    const Token t = expect(Tok::Integer);
    if (t.text.size() > 9) fail(t, std::string(what) + " out of range");
    const long v = std::stol(t.text);
    if (v > max) fail(t, std::string(what) + " out of range");
    return v;
  }

  Statement parse_statement() {
    const Token& t = peek();
    if (t.kind != Tok::Name)
      fail(t, std::string("unexpected ") + describe(t), {"statement"});
    if (t.text == "ambient") {
      Statement s;
      s.kind = Statement::Kind::Ambient;
      s.loc = take().loc;
      s.ambient = static_cast<int>(expect_small_integer(kMaxAmbient, "ambient dimension"));
      if (s.ambient < 1)
        throw ParseError(Diagnostic{s.loc, "ambient dimension must be at least 1", {}});
      expect(Tok::Semi);
      return s;
    }
    if (is_query_name(t.text) && peek(1).kind == Tok::LParen) return parse_query();
    // binding: name '=' rhs ';'
    Statement s;
    s.kind = Statement::Kind::Binding;
    const Token name = take();
    s.loc = name.loc;
    s.name = name.text;
    if (is_reserved_name(s.name)) fail(name, "'" + s.name + "' is a reserved name");
    expect(Tok::Assign);
    s.rhs = parse_rhs();
    expect(Tok::Semi);
    return s;
  }

  Statement parse_query() {
    Statement s;
    s.kind = Statement::Kind::Query;
    const Token name = take();
    s.loc = name.loc;
    s.name = name.text;
    expect(Tok::LParen);
    if (peek().kind != Tok::RParen) {
      while (true) {
        QueryArg a;
        if (peek().kind == Tok::LBracket)
          a.value = parse_vector();
        else
          a.value = parse_expr(0);
        s.args.push_back(std::move(a));
        if (peek().kind != Tok::Comma) break;
        take();
      }
    }
    expect(Tok::RParen);
    if (peek().kind == Tok::Name && peek().text == "expect") {
      take();
      const Token b = peek();
      if (b.kind == Tok::Name && (b.text == "true" || b.text == "false")) {
        s.expect = b.text == "true";
        take();
      } else {
        fail(b, std::string("unexpected ") + describe(b), {"'true'", "'false'"});
      }
    }
    expect(Tok::Semi);
    return s;
  }

  Rhs parse_rhs() {
    Rhs r;
    r.loc = peek().loc;
    if (peek().kind == Tok::Name) {
      const std::string& w = peek().text;
      if (w == "space" || w == "seq") {
        r.kind = w == "space" ? Rhs::Kind::Space : Rhs::Kind::Seq;
        take();
        expect(Tok::LParen);
        r.exprs.push_back(parse_expr(0));
        while (peek().kind == Tok::Comma) {
          take();
          r.exprs.push_back(parse_expr(0));
        }
        expect(Tok::RParen);
        return r;
      }
      if (w == "points") {
        r.kind = Rhs::Kind::Points;
        take();
        expect(Tok::LParen);
        r.vectors.push_back(parse_vector());
        while (peek().kind == Tok::Comma) {
          take();
          r.vectors.push_back(parse_vector());
        }
        expect(Tok::RParen);
        return r;
      }
      if (w == "algebra") {
        r.kind = Rhs::Kind::Algebra;
        take();
        expect(Tok::LParen);
        r.algebra_dim = static_cast<int>(expect_small_integer(kMaxAmbient, "algebra dimension"));
        expect(Tok::RParen);
        expect(Tok::LBrace);
        while (peek().kind != Tok::RBrace) r.brackets.push_back(parse_bracket_def());
        expect(Tok::RBrace);
        return r;
      }
    }
    r.kind = Rhs::Kind::Expression;
    r.exprs.push_back(parse_expr(0));
    return r;
  }

  VectorLit parse_vector() {
    VectorLit v;
    v.loc = expect(Tok::LBracket).loc;
    v.entries.push_back(parse_signed_rational());
    while (peek().kind == Tok::Comma) {
      take();
      v.entries.push_back(parse_signed_rational());
    }
    expect(Tok::RBracket);
    return v;
  }

  Rational parse_signed_rational() {
    bool neg = false;
    while (peek().kind == Tok::Minus) {
      take();
      neg = !neg;
    }
    Rational r = parse_rational_literal();
    return neg ? -r : r;
  }

  Rational parse_rational_literal() {
    const Token num = expect(Tok::Integer);
    Int n(num.text);
    if (peek().kind == Tok::Slash) {
      take();
      const Token den = expect(Tok::Integer);
      Int d(den.text);
      if (d == 0) fail(den, "zero denominator");
      return Rational(n, d);
    }
    return Rational(n);
  }

  BracketDef parse_bracket_def() {
    BracketDef b;
    b.loc = expect(Tok::LBracket).loc;
    b.i = static_cast<int>(expect_small_integer(kMaxAmbient, "basis index"));
    expect(Tok::Comma);
    b.j = static_cast<int>(expect_small_integer(kMaxAmbient, "basis index"));
    expect(Tok::RBracket);
    expect(Tok::Assign);
    bool neg = peek().kind == Tok::Minus;
    if (neg) take();
    parse_lin_term(b, neg);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = take().kind == Tok::Minus;
      parse_lin_term(b, minus);
    }
    expect(Tok::Semi);
    return b;
  }

  void parse_lin_term(BracketDef& b, bool negate) {
    Rational coeff(1);
    bool have_coeff = false;
    if (peek().kind == Tok::Integer) {
      coeff = parse_rational_literal();
      have_coeff = true;
      if (peek().kind == Tok::Star)
        take();
      else {
        // bare rational: only the zero bracket is meaningful
        if (coeff != 0)
          fail(peek(), "constant term in a bracket definition (use c*e(k) or 0)");
        return;
      }
    }
    const Token e = peek();
    if (e.kind != Tok::Name || e.text != "e")
      fail(e, std::string("unexpected ") + describe(e), {"'e('", have_coeff ? "'*'" : "rational"});
    take();
    expect(Tok::LParen);
    const int k = static_cast<int>(expect_small_integer(kMaxAmbient, "basis index"));
    expect(Tok::RParen);
    b.terms.emplace_back(negate ? -coeff : coeff, k);
  }

  // Precedence climbing.  Levels: 0 = + -, 1 = /\, 2 = *, then unary minus,
  // then ^, then primaries.
  Expr parse_expr(int level, int depth = 0) {
    if (depth > kMaxDepth)
      fail(peek(), "expression too deeply nested");
    if (level == 0) {
      Expr lhs = parse_expr(1, depth + 1);
      while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        const Token op = take();
        Expr rhs = parse_expr(1, depth + 1);
        Expr node;
        node.kind = op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
        node.loc = op.loc;
        node.kids.push_back(std::move(lhs));
        node.kids.push_back(std::move(rhs));
        lhs = std::move(node);
      }
      return lhs;
    }
    if (level == 1) {
      Expr lhs = parse_expr(2, depth + 1);
      while (peek().kind == Tok::Wedge) {
        const Token op = take();
        Expr rhs = parse_expr(2, depth + 1);
        Expr node;
        node.kind = Expr::Kind::Wedge;
        node.loc = op.loc;
        node.kids.push_back(std::move(lhs));
        node.kids.push_back(std::move(rhs));
        lhs = std::move(node);
      }
      return lhs;
    }
    // level 2: products of unary factors
    Expr lhs = parse_unary(depth + 1);
    while (peek().kind == Tok::Star) {
      const Token op = take();
      Expr rhs = parse_unary(depth + 1);
      Expr node;
      node.kind = Expr::Kind::Mul;
      node.loc = op.loc;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_unary(int depth) {
    if (depth > kMaxDepth) fail(peek(), "expression too deeply nested");
    if (peek().kind == Tok::Minus) {
      const Token op = take();
      Expr node;
      node.kind = Expr::Kind::Neg;
      node.loc = op.loc;
      node.kids.push_back(parse_unary(depth + 1));
      return node;
    }
    return parse_power(depth + 1);
  }

  Expr parse_power(int depth) {
    Expr base = parse_primary(depth + 1);
    if (peek().kind == Tok::Caret) {
      const Token op = take();
      const long e = expect_small_integer(kMaxExponent, "exponent");
      Expr node;
      node.kind = Expr::Kind::Pow;
      node.loc = op.loc;
      node.exponent = static_cast<unsigned>(e);
      node.kids.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Expr parse_primary(int depth) {
    if (depth > kMaxDepth) fail(peek(), "expression too deeply nested");
    const Token t = peek();
    if (t.kind == Tok::Integer) {
      Expr e;
      e.kind = Expr::Kind::Lit;
      e.loc = t.loc;
      e.lit = parse_rational_literal();
      return e;
    }
    if (t.kind == Tok::LParen) {
      take();
      Expr e = parse_expr(0, depth + 1);
      expect(Tok::RParen);
      return e;
    }
    if (t.kind == Tok::Name) {
      if (t.text == "d" && peek(1).kind == Tok::LParen) {
        take();
        take();
        Expr inner = parse_expr(0, depth + 1);
        expect(Tok::RParen);
        Expr e;
        e.kind = Expr::Kind::D;
        e.loc = t.loc;
        e.kids.push_back(std::move(inner));
        return e;
      }
      if (t.text == "z") {
        take();
        Expr e;
        e.kind = Expr::Kind::Z;
        e.loc = t.loc;
        return e;
      }
      if (is_variable_name(t.text)) {
        take();
        Expr e;
        e.kind = Expr::Kind::Var;
        e.loc = t.loc;
        if (t.text.size() > 4) fail(t, "variable index out of range");
        e.var = std::stoi(t.text.substr(1));
        return e;
      }
      if (is_reserved_name(t.text))
        fail(t, "'" + t.text + "' cannot appear in an expression");
      take();
      Expr e;
      e.kind = Expr::Kind::Ref;
      e.loc = t.loc;
      e.name = t.text;
      return e;
    }
    fail(t, std::string("unexpected ") + describe(t), {"expression"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline Ast parse(const std::string& source) { return Parser(source).parse_file(); }

// --------------------------------------------------------------------------
// Pretty printer (canonical form; print-parse-print is a fixed point)
// --------------------------------------------------------------------------

namespace detail {

// Precedence levels for printing: 0 add, 1 wedge, 2 mul, 3 neg, 4 pow, 5 atom.
inline int print_level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 0;
    case Expr::Kind::Wedge: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

inline std::string print_expr(const Expr& e, int min_level) {
  const int lvl = print_level(e);
  std::string s;
  switch (e.kind) {
    case Expr::Kind::Lit: s = iforms::to_string(e.lit); break;
    case Expr::Kind::Var: s = "x" + std::to_string(e.var); break;
    case Expr::Kind::Z: s = "z"; break;
    case Expr::Kind::Ref: s = e.name; break;
    case Expr::Kind::Neg: s = "-" + print_expr(e.kids[0], 3); break;
    case Expr::Kind::Add:
      s = print_expr(e.kids[0], 0) + " + " + print_expr(e.kids[1], 1);
      break;
    case Expr::Kind::Sub:
      s = print_expr(e.kids[0], 0) + " - " + print_expr(e.kids[1], 1);
      break;
    case Expr::Kind::Wedge:
      s = print_expr(e.kids[0], 1) + " /\\ " + print_expr(e.kids[1], 2);
      break;
    case Expr::Kind::Mul:
      s = print_expr(e.kids[0], 2) + "*" + print_expr(e.kids[1], 3);
      break;
    case Expr::Kind::Pow: {
      // A rational literal base with a denominator must be parenthesized.
      const Expr& b = e.kids[0];
      std::string base = print_expr(b, 5);
      if (b.kind == Expr::Kind::Lit && rat_den(b.lit) != 1) base = "(" + base + ")";
      s = base + "^" + std::to_string(e.exponent);
      break;
    }
    case Expr::Kind::D: s = "d(" + print_expr(e.kids[0], 0) + ")"; break;
  }
  if (lvl < min_level) s = "(" + s + ")";
  return s;
}

inline std::string print_vector(const VectorLit& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (i) s += ", ";
    s += iforms::to_string(v.entries[i]);
  }
  return s + "]";
}

} // namespace detail

inline std::string pretty_print(const Ast& ast) {
  std::string out;
  for (const auto& s : ast.statements) {
    switch (s.kind) {
      case Statement::Kind::Ambient:
        out += "ambient " + std::to_string(s.ambient) + ";";
        break;
      case Statement::Kind::Binding: {
        out += s.name + " = ";
        switch (s.rhs.kind) {
          case Rhs::Kind::Expression:
            out += detail::print_expr(s.rhs.exprs[0], 0);
            break;
          case Rhs::Kind::Space:
          case Rhs::Kind::Seq: {
            out += s.rhs.kind == Rhs::Kind::Space ? "space(" : "seq(";
            for (std::size_t i = 0; i < s.rhs.exprs.size(); ++i) {
              if (i) out += ", ";
              out += detail::print_expr(s.rhs.exprs[i], 0);
            }
            out += ")";
            break;
          }
          case Rhs::Kind::Points: {
            out += "points(";
            for (std::size_t i = 0; i < s.rhs.vectors.size(); ++i) {
              if (i) out += ", ";
              out += detail::print_vector(s.rhs.vectors[i]);
            }
            out += ")";
            break;
          }
          case Rhs::Kind::Algebra: {
            out += "algebra(" + std::to_string(s.rhs.algebra_dim) + ") {";
            for (const auto& b : s.rhs.brackets) {
              out += " [" + std::to_string(b.i) + "," + std::to_string(b.j) + "] = ";
              if (b.terms.empty()) {
                out += "0";
              } else {
                bool first = true;
                for (const auto& [c, k] : b.terms) {
                  Rational a = c;
                  if (first) {
                    if (a < 0) {
                      out += "-";
                      a = -a;
                    }
                  } else {
                    out += a < 0 ? " - " : " + ";
                    if (a < 0) a = -a;
                  }
                  first = false;
                  if (a != 1) out += iforms::to_string(a) + "*";
                  out += "e(" + std::to_string(k) + ")";
                }
              }
              out += ";";
            }
            out += " }";
            break;
          }
        }
        out += ";";
        break;
      }
      case Statement::Kind::Query: {
        out += s.name + "(";
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          if (i) out += ", ";
          if (std::holds_alternative<Expr>(s.args[i].value))
            out += detail::print_expr(std::get<Expr>(s.args[i].value), 0);
          else
            out += detail::print_vector(std::get<VectorLit>(s.args[i].value));
        }
        out += ")";
        if (s.expect) out += std::string(" expect ") + (*s.expect ? "true" : "false");
        out += ";";
        break;
      }
    }
    out += "\n";
  }
  return out;
}

// --------------------------------------------------------------------------
// Elaboration
// --------------------------------------------------------------------------

using Value = std::variant<PForm, FormSpace, GVSequence, PointConfig, LieAlgebra>;

enum class QueryKind {
  Check, Rank, Quadrics, Steiner, VeroneseWeb,
  LieJacobi, LieCheck, LieQuadrics,
  GvCheck, GvCurve, GvObstruction, Stats
};

struct ResolvedQuery {
  QueryKind kind = QueryKind::Check;
  SrcLoc loc;
  std::string display; // canonical source text of the query
  std::vector<Value> values;
  std::vector<std::vector<Rational>> vectors;
  std::vector<long> ints;
  std::optional<bool> expect;
};

/// Fully typed result of elaborating a file: the ambient dimension, the
/// bindings in declaration order, and the type-checked queries.
struct Session {
  int ambient = 0; // 0 when never declared
  std::vector<std::pair<std::string, Value>> bindings;
  std::vector<ResolvedQuery> queries;

  const Value* find(const std::string& name) const {
    for (const auto& [n, v] : bindings)
      if (n == name) return &v;
    return nullptr;
  }
};

namespace detail {

class Elaborator {
 public:
  Session run(const Ast& ast) {
    bool seen_binding = false;
    for (const auto& st : ast.statements) {
      switch (st.kind) {
        case Statement::Kind::Ambient:
          if (session_.ambient != 0)
            throw ElabError(st.loc, "duplicate ambient declaration");
          if (seen_binding)
            throw ElabError(st.loc, "ambient must be declared before any binding");
          session_.ambient = st.ambient;
          break;
        case Statement::Kind::Binding: {
          seen_binding = true;
          if (session_.find(st.name))
            throw ElabError(st.loc, "duplicate binding '" + st.name + "'");
          session_.bindings.emplace_back(st.name, eval_rhs(st.rhs, st.loc));
          break;
        }
        case Statement::Kind::Query:
          session_.queries.push_back(resolve_query(st));
          break;
      }
    }
    return std::move(session_);
  }

 private:
  int nvars() const { return session_.ambient + 1; } // trailing z slot

  void require_ambient(SrcLoc loc) const {
    if (session_.ambient == 0)
      throw ElabError(loc, "no ambient dimension declared ('ambient N;')");
  }

  PForm eval_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Lit:
        require_ambient(e.loc);
        return PForm::scalar(MPoly::constant(nvars(), e.lit));
      case Expr::Kind::Var:
        require_ambient(e.loc);
        if (e.var >= session_.ambient)
          throw ElabError(e.loc, "variable x" + std::to_string(e.var) +
                                     " outside ambient dimension " +
                                     std::to_string(session_.ambient));
        return PForm::scalar(MPoly::variable(nvars(), e.var));
      case Expr::Kind::Z:
        require_ambient(e.loc);
        return PForm::scalar(MPoly::variable(nvars(), session_.ambient));
      case Expr::Kind::Ref: {
        const Value* v = session_.find(e.name);
        if (!v) throw ElabError(e.loc, "unbound name '" + e.name + "'");
        if (!std::holds_alternative<PForm>(*v))
          throw ElabError(e.loc, "'" + e.name + "' is not a polynomial or form");
        return std::get<PForm>(*v);
      }
      case Expr::Kind::Neg:
        return -eval_expr(e.kids[0]);
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        PForm a = eval_expr(e.kids[0]);
        PForm b = eval_expr(e.kids[1]);
        if (a.degree() != b.degree())
          throw ElabError(e.loc, "sum of forms of different degrees (" +
                                     std::to_string(a.degree()) + " and " +
                                     std::to_string(b.degree()) + ")");
        return e.kind == Expr::Kind::Add ? a + b : a - b;
      }
      case Expr::Kind::Mul: {
        PForm a = eval_expr(e.kids[0]);
        PForm b = eval_expr(e.kids[1]);
        if (a.degree() == 0) return b * scalar_of(a);
        if (b.degree() == 0) return a * scalar_of(b);
        throw ElabError(e.loc, "product of two forms of positive degree (use /\\)");
      }
      case Expr::Kind::Pow: {
        PForm base = eval_expr(e.kids[0]);
        if (base.degree() != 0)
          throw ElabError(e.loc, "exponent applied to a form of positive degree");
        return PForm::scalar(scalar_of(base).pow(e.exponent));
      }
      case Expr::Kind::Wedge:
        return wedge(eval_expr(e.kids[0]), eval_expr(e.kids[1]));
      case Expr::Kind::D:
        return ext_d(eval_expr(e.kids[0]));
    }
    throw ElabError(e.loc, "internal: unhandled expression kind");
  }

  static MPoly scalar_of(const PForm& a) {
    if (a.is_zero()) return MPoly(a.nvars());
    return *a.component({});
  }

  /// A 1-form argument for space/seq members: must not involve z.
  PForm eval_xonly_1form(const Expr& e, const char* what) {
    PForm f = eval_expr(e);
    if (f.degree() != 1)
      throw ElabError(e.loc, std::string(what) + ": member is not a 1-form (degree " +
                                 std::to_string(f.degree()) + ")");
    try {
      return f.narrowed(session_.ambient);
    } catch (const DomainError&) {
      throw ElabError(e.loc, std::string(what) + ": member involves z");
    }
  }

  Value eval_rhs(const Rhs& r, SrcLoc loc) {
    switch (r.kind) {
      case Rhs::Kind::Expression:
        return eval_expr(r.exprs[0]);
      case Rhs::Kind::Space: {
        require_ambient(loc);
        std::vector<PForm> basis;
        basis.reserve(r.exprs.size());
        for (const auto& e : r.exprs) basis.push_back(eval_xonly_1form(e, "space"));
        try {
          return FormSpace(std::move(basis));
        } catch (const Error& err) {
          throw ElabError(loc, std::string("space: ") + err.what());
        }
      }
      case Rhs::Kind::Seq: {
        require_ambient(loc);
        std::vector<PForm> forms;
        forms.reserve(r.exprs.size());
        for (const auto& e : r.exprs) forms.push_back(eval_xonly_1form(e, "seq"));
        try {
          return GVSequence(std::move(forms));
        } catch (const Error& err) {
          throw ElabError(loc, std::string("seq: ") + err.what());
        }
      }
      case Rhs::Kind::Points: {
        std::vector<std::vector<Rational>> pts;
        pts.reserve(r.vectors.size());
        for (const auto& v : r.vectors) pts.push_back(v.entries);
        try {
          return PointConfig(std::move(pts));
        } catch (const Error& err) {
          throw ElabError(loc, std::string("points: ") + err.what());
        }
      }
      case Rhs::Kind::Algebra: {
        std::vector<LieAlgebra::Bracket> brackets;
        std::map<std::pair<int, int>, bool> seen;
        for (const auto& b : r.brackets) {
          if (b.i < 1 || b.i > r.algebra_dim || b.j < 1 || b.j > r.algebra_dim)
            throw ElabError(b.loc, "bracket index outside algebra dimension");
          if (b.i >= b.j)
            throw ElabError(b.loc, "bracket indices must satisfy i < j");
          if (seen[{b.i, b.j}])
            throw ElabError(b.loc, "duplicate bracket definition");
          seen[{b.i, b.j}] = true;
          LieAlgebra::Bracket out;
          out.i = b.i - 1;
          out.j = b.j - 1;
          out.coeffs.assign(static_cast<std::size_t>(r.algebra_dim), Rational(0));
          for (const auto& [c, k] : b.terms) {
            if (k < 1 || k > r.algebra_dim)
              throw ElabError(b.loc, "basis index outside algebra dimension");
            out.coeffs[static_cast<std::size_t>(k - 1)] += c;
          }
          brackets.push_back(std::move(out));
        }
        try {
          return LieAlgebra(r.algebra_dim, brackets);
        } catch (const Error& err) {
          throw ElabError(loc, std::string("algebra: ") + err.what());
        }
      }
    }
    throw ElabError(loc, "internal: unhandled rhs kind");
  }

  template <typename T>
  const T& arg_as(const Statement& st, std::size_t i, const char* type_name,
                  std::vector<Value>& out) {
    if (i >= st.args.size())
      throw ElabError(st.loc, st.name + ": missing argument " + std::to_string(i + 1));
    const auto* expr = std::get_if<Expr>(&st.args[i].value);
    if (!expr)
      throw ElabError(st.loc, st.name + ": argument " + std::to_string(i + 1) + " must be a " +
                                  type_name);
    if constexpr (std::is_same_v<T, PForm>) {
      out.push_back(eval_expr(*expr));
    } else {
      if (expr->kind != Expr::Kind::Ref)
        throw ElabError(expr->loc, st.name + ": argument " + std::to_string(i + 1) +
                                       " must name a " + type_name);
      const Value* v = session_.find(expr->name);
      if (!v) throw ElabError(expr->loc, "unbound name '" + expr->name + "'");
      if (!std::holds_alternative<T>(*v))
        throw ElabError(expr->loc, "'" + expr->name + "' is not a " + type_name);
      out.push_back(*v);
    }
    return std::get<T>(out.back());
  }

  std::vector<Rational> arg_vector(const Statement& st, std::size_t i) {
    if (i >= st.args.size())
      throw ElabError(st.loc, st.name + ": missing argument " + std::to_string(i + 1));
    const auto* v = std::get_if<VectorLit>(&st.args[i].value);
    if (!v)
      throw ElabError(st.loc, st.name + ": argument " + std::to_string(i + 1) +
                                  " must be a vector [..]");
    return v->entries;
  }

  long arg_int(const Statement& st, std::size_t i) {
    if (i >= st.args.size())
      throw ElabError(st.loc, st.name + ": missing argument " + std::to_string(i + 1));
    const auto* e = std::get_if<Expr>(&st.args[i].value);
    if (!e || e->kind != Expr::Kind::Lit || rat_den(e->lit) != 1 || rat_num(e->lit) > 1000000)
      throw ElabError(st.loc, st.name + ": argument " + std::to_string(i + 1) +
                                  " must be a small integer");
    return static_cast<long>(rat_num(e->lit));
  }

  void check_arg_count(const Statement& st, std::size_t n) {
    if (st.args.size() != n)
      throw ElabError(st.loc, st.name + ": expected " + std::to_string(n) + " argument(s), got " +
                                  std::to_string(st.args.size()));
  }

  ResolvedQuery resolve_query(const Statement& st) {
    ResolvedQuery q;
    q.loc = st.loc;
    q.expect = st.expect;
    {
      Ast one;
      Statement copy = st;
      copy.expect.reset(); // display without the expectation
      one.statements.push_back(std::move(copy));
      q.display = pretty_print(one);
      while (!q.display.empty() && (q.display.back() == '\n' || q.display.back() == ';'))
        q.display.pop_back();
    }
    const std::string& n = st.name;
    if (n == "check") {
      q.kind = QueryKind::Check;
      check_arg_count(st, 1);
      const PForm& f = arg_as<PForm>(st, 0, "1-form", q.values);
      if (f.degree() != 1)
        throw ElabError(st.loc, "check: argument is not a 1-form (degree " +
                                    std::to_string(f.degree()) + ")");
    } else if (n == "rank" || n == "quadrics") {
      q.kind = n == "rank" ? QueryKind::Rank : QueryKind::Quadrics;
      check_arg_count(st, 1);
      arg_as<FormSpace>(st, 0, "form space", q.values);
    } else if (n == "steiner") {
      q.kind = QueryKind::Steiner;
      check_arg_count(st, 1);
      arg_as<PointConfig>(st, 0, "point configuration", q.values);
    } else if (n == "veronese_web") {
      q.kind = QueryKind::VeroneseWeb;
      if (st.args.size() < 2)
        throw ElabError(st.loc, "veronese_web: need a form space and its member forms");
      const FormSpace& w = arg_as<FormSpace>(st, 0, "form space", q.values);
      if (st.args.size() - 1 != w.dim() + 2)
        throw ElabError(st.loc, "veronese_web: need dim W + 2 = " + std::to_string(w.dim() + 2) +
                                    " forms, got " + std::to_string(st.args.size() - 1));
      for (std::size_t i = 1; i < st.args.size(); ++i) {
        const PForm& f = arg_as<PForm>(st, i, "1-form", q.values);
        if (f.degree() != 1)
          throw ElabError(st.loc, "veronese_web: argument " + std::to_string(i + 1) +
                                      " is not a 1-form");
        try {
          q.values.back() = f.narrowed(std::get<FormSpace>(q.values.front()).nvars());
        } catch (const DomainError&) {
          throw ElabError(st.loc, "veronese_web: member involves z");
        }
      }
    } else if (n == "lie_jacobi" || n == "lie_quadrics") {
      q.kind = n == "lie_jacobi" ? QueryKind::LieJacobi : QueryKind::LieQuadrics;
      check_arg_count(st, 1);
      arg_as<LieAlgebra>(st, 0, "Lie algebra", q.values);
    } else if (n == "lie_check") {
      q.kind = QueryKind::LieCheck;
      check_arg_count(st, 2);
      const LieAlgebra& l = arg_as<LieAlgebra>(st, 0, "Lie algebra", q.values);
      auto v = arg_vector(st, 1);
      if (static_cast<int>(v.size()) != l.dim())
        throw ElabError(st.loc, "lie_check: coordinate vector must have length " +
                                    std::to_string(l.dim()));
      q.vectors.push_back(std::move(v));
    } else if (n == "gv_check" || n == "gv_curve" || n == "gv_obstruction") {
      q.kind = n == "gv_check" ? QueryKind::GvCheck
               : n == "gv_curve" ? QueryKind::GvCurve
                                 : QueryKind::GvObstruction;
      check_arg_count(st, 1);
      arg_as<GVSequence>(st, 0, "sequence", q.values);
    } else if (n == "stats") {
      q.kind = QueryKind::Stats;
      check_arg_count(st, 2);
      q.ints.push_back(arg_int(st, 0));
      q.ints.push_back(arg_int(st, 1));
    } else {
      throw ElabError(st.loc, "unknown query '" + n + "'");
    }
    if (q.expect) {
      switch (q.kind) {
        case QueryKind::Check:
        case QueryKind::LieCheck:
        case QueryKind::LieJacobi:
        case QueryKind::VeroneseWeb:
        case QueryKind::GvCheck:
        case QueryKind::GvObstruction:
          break;
        default:
          throw ElabError(st.loc, "'expect' applies only to true/false queries");
      }
    }
    return q;
  }

  Session session_;
};

} // namespace detail

inline Session elaborate(const Ast& ast) { return detail::Elaborator().run(ast); }

inline Session load(const std::string& source) { return elaborate(parse(source)); }

} // namespace iforms::dsl
