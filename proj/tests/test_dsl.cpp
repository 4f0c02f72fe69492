#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iforms/demo_fixtures.hpp"
#include "iforms/dsl.hpp"

using namespace iforms;
namespace d = iforms::dsl;

TEST_CASE("parsing simple bindings", "[parse]") {
  const auto ast = d::parse("ambient 3; w = (2 + 3*x0)*d(x1);");
  REQUIRE(ast.statements.size() == 2);
  CHECK(ast.statements[0].kind == d::Statement::Kind::Ambient);
  CHECK(ast.statements[0].ambient == 3);
  CHECK(ast.statements[1].kind == d::Statement::Kind::Binding);
  CHECK(ast.statements[1].name == "w");

  const auto session = d::elaborate(ast);
  REQUIRE(session.bindings.size() == 1);
  const auto& w = std::get<PForm>(session.bindings[0].second);
  CHECK(w.degree() == 1);
  // coefficient of dx1 is 2 + 3 x0 (over ambient+z = 4 variables)
  const MPoly* c = w.component({1});
  REQUIRE(c);
  CHECK(*c == MPoly::constant(4, 2) + MPoly::variable(4, 0) * Rational(3));
}

TEST_CASE("parsing a wedge binding", "[parse]") {
  const auto session = d::load("ambient 3; w = d(x0) /\\ d(x1);");
  const auto& w = std::get<PForm>(session.bindings[0].second);
  CHECK(w.degree() == 2);
  CHECK(*w.component({0, 1}) == MPoly::constant(4, 1));
}

TEST_CASE("syntax error diagnostics carry position and expectations", "[parse]") {
  try {
    d::parse("ambient 2;\nw = d(x0) + ;");
    FAIL("expected ParseError");
  } catch (const d::ParseError& e) {
    CHECK(e.diag.loc.line == 2);
    CHECK(e.diag.loc.col == 13);
    CHECK_FALSE(e.diag.expected.empty());
    CHECK(e.diag.expected[0] == "expression");
  }
}

TEST_CASE("lexical and structural errors", "[parse]") {
  CHECK_THROWS_AS(d::parse("w = $;"), d::ParseError);
  CHECK_THROWS_AS(d::load("ambient 2; ambient 3;"), d::ElabError);
  CHECK_THROWS_AS(d::parse("w = 1/0;"), d::ParseError); // zero denominator
  CHECK_THROWS_AS(d::load("ambient 2; w = x0; w = x1;"), d::ElabError);
  CHECK_THROWS_AS(d::parse("space = 3;"), d::ParseError); // reserved name
  // Missing ambient.
  CHECK_THROWS_AS(d::load("w = x0;"), d::ElabError);
  // Ambient after a binding.
  CHECK_THROWS_AS(d::load("a = 1; ambient 2;"), d::ElabError);
}

TEST_CASE("elaboration type errors", "[elaborate]") {
  // rank of a polynomial
  try {
    d::load("ambient 2; q = x0 + 1; rank(q);");
    FAIL("expected ElabError");
  } catch (const d::ElabError& e) {
    CHECK(std::string(e.what()).find("form space") != std::string::npos);
    CHECK(e.diag.loc.line == 1);
  }
  // is_integrable on a 2-form
  CHECK_THROWS_AS(d::load("ambient 3; check(d(x0) /\\ d(x1));"), d::ElabError);
  // variable outside the ambient dimension
  CHECK_THROWS_AS(d::load("ambient 2; w = x5;"), d::ElabError);
  // unbound name
  CHECK_THROWS_AS(d::load("ambient 2; check(nope);"), d::ElabError);
  // sums of mismatched degrees
  CHECK_THROWS_AS(d::load("ambient 2; w = x0 + d(x0);"), d::ElabError);
  // product of two 1-forms without a wedge
  CHECK_THROWS_AS(d::load("ambient 2; w = d(x0)*d(x1);"), d::ElabError);
  // exponent on a form
  CHECK_THROWS_AS(d::load("ambient 2; w = d(x0)^2;"), d::ElabError);
  // space member involving z
  CHECK_THROWS_AS(d::load("ambient 2; W = space(d(x0), z*d(x1));"), d::ElabError);
  // expect on a non-boolean query
  CHECK_THROWS_AS(d::load("ambient 2; W = space(d(x0)); rank(W) expect true;"), d::ElabError);
}

TEST_CASE("z is the development variable", "[elaborate]") {
  // A hand-written development can be checked directly.
  const auto session = d::load("ambient 1; check(d(z) + (1 + z)*d(x0));");
  REQUIRE(session.queries.size() == 1);
  const auto& form = std::get<PForm>(session.queries[0].values[0]);
  CHECK(form.degree() == 1);
  CHECK(is_integrable(form));
}

TEST_CASE("fixture files elaborate to typed sessions", "[elaborate]") {
  const auto family = d::load(demos::rnc_family(2));
  CHECK(family.ambient == 3);
  std::size_t spaces = 0, veronese = 0;
  for (const auto& [name, v] : family.bindings)
    spaces += std::holds_alternative<FormSpace>(v);
  for (const auto& q : family.queries)
    veronese += q.kind == d::QueryKind::VeroneseWeb;
  CHECK(spaces == 1);
  CHECK(veronese == 1);

  const auto sl2 = d::load(demos::sl2());
  bool has_algebra = false;
  for (const auto& [name, v] : sl2.bindings)
    has_algebra = has_algebra || std::holds_alternative<LieAlgebra>(v);
  CHECK(has_algebra);
  CHECK(sl2.queries.size() == 5);

  CHECK_NOTHROW(d::load(demos::godbillon_vey()));
  CHECK_NOTHROW(d::load(demos::steiner_conic()));
  CHECK_NOTHROW(d::load(demos::sl2_point()));
}

TEST_CASE("algebra constructor validation", "[elaborate]") {
  CHECK_THROWS_AS(d::load("L = algebra(3) { [2,1] = e(1); };"), d::ElabError);
  CHECK_THROWS_AS(d::load("L = algebra(3) { [1,5] = e(1); };"), d::ElabError);
  CHECK_THROWS_AS(d::load("L = algebra(3) { [1,2] = e(7); };"), d::ElabError);
  CHECK_THROWS_AS(d::load("L = algebra(3) { [1,2] = e(1); [1,2] = e(2); };"), d::ElabError);
  CHECK_THROWS_AS(d::load("L = algebra(2) { [1,2] = 5; };"), d::ParseError);
  // Zero brackets and multi-term combinations parse.
  const auto s = d::load("L = algebra(3) { [1,2] = 0; [1,3] = 2*e(1) - 1/2*e(3); };");
  const auto& l = std::get<LieAlgebra>(s.bindings[0].second);
  CHECK(l.at(0, 2, 0) == 2);
  CHECK(l.at(0, 2, 2) == Rational(-1, 2));
  CHECK(l.at(2, 0, 0) == -2);
}

TEST_CASE("pretty-print round trip is a fixed point", "[print]") {
  const std::vector<std::string> sources = {
      demos::sl2(),
      demos::godbillon_vey(),
      demos::rnc_family(2),
      demos::rnc_family(4),
      demos::steiner_conic(),
      demos::sl2_point(),
      "ambient 2; w = -x0^2 + 3/2*x1 - (x0 + x1)*(x0 - x1);",
      "ambient 2; w = d(x0) /\\ d(x1) + d(x1) /\\ d(x0);",
      "ambient 1; q = (1/2)^3 - -x0;",
      "P = points([1, 0], [0, 1], [1, 1], [2, -1]); steiner(P);",
      "stats(3, 2);",
  };
  for (const auto& src : sources) {
    const std::string once = d::pretty_print(d::parse(src));
    const std::string twice = d::pretty_print(d::parse(once));
    CHECK(once == twice);
    // The canonical text also elaborates identically.
    CHECK_NOTHROW(d::load(once));
  }
}

TEST_CASE("query display strings are canonical", "[print]") {
  const auto s = d::load("ambient 2; check(  d( x0 )  ) expect   true ;");
  REQUIRE(s.queries.size() == 1);
  CHECK(s.queries[0].display == "check(d(x0))");
  REQUIRE(s.queries[0].expect.has_value());
  CHECK(*s.queries[0].expect == true);
}

TEST_CASE("deep nesting fails gracefully", "[parse]") {
  std::string src = "ambient 1; w = ";
  for (int i = 0; i < 500; ++i) src += "(";
  src += "x0";
  for (int i = 0; i < 500; ++i) src += ")";
  src += ";";
  CHECK_THROWS_AS(d::parse(src), d::ParseError);
}

TEST_CASE("fuzzed token soup never crashes", "[parse][fuzz]") {
  static const char* pieces[] = {"ambient", "space",  "seq",  "points", "algebra", "check",
                                 "rank",    "stats",  "d",    "e",      "z",       "x0",
                                 "x12",     "w",      "Q",    "1",      "42",      "3/4",
                                 "(",       ")",      "[",    "]",      "{",       "}",
                                 ";",       ",",      "=",    "+",      "-",       "*",
                                 "^",       "/\\",    "/",    "expect", "true",    "false",
                                 "#",       "\n",     "_a",   "veronese_web"};
  std::mt19937_64 rng(139);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pieces) - 1);
  std::uniform_int_distribution<int> len(1, 40);
  int parsed_ok = 0;
  for (int it = 0; it < 2000; ++it) {
    std::string src;
    const int l = len(rng);
    for (int k = 0; k < l; ++k) {
      src += pieces[pick(rng)];
      src += " ";
    }
    try {
      d::load(src);
      ++parsed_ok;
    } catch (const d::ParseError& e) {
      CHECK(e.diag.loc.line >= 1);
      CHECK(e.diag.loc.col >= 1);
    } catch (const d::ElabError& e) {
      CHECK(e.diag.loc.line >= 1);
      CHECK(e.diag.loc.col >= 1);
    }
    // anything else escapes and fails the test
  }
  CHECK(parsed_ok >= 0);
}

TEST_CASE("fuzzed random bytes never crash", "[parse][fuzz]") {
  std::mt19937_64 rng(149);
  std::uniform_int_distribution<int> byte(1, 127);
  std::uniform_int_distribution<int> len(1, 60);
  for (int it = 0; it < 2000; ++it) {
    std::string src;
    const int l = len(rng);
    for (int k = 0; k < l; ++k) src += static_cast<char>(byte(rng));
    try {
      d::load(src);
    } catch (const d::ParseError&) {
    } catch (const d::ElabError&) {
    }
  }
  SUCCEED("no crash");
}
