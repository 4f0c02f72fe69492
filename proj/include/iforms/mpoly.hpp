#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/rational.hpp"

namespace iforms {

/// Exponent vector of a monomial in x_0..x_{nvars-1}.
using ExpVec = std::vector<unsigned>;

/// Graded-lexicographic order on exponent vectors: total degree first, then
/// lexicographic with x_0 most significant.  Fixes a deterministic term
/// iteration order for printing and for quadric labels.
struct GradedLex {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate polynomial over Q.  Zero coefficients are never
/// stored; the zero polynomial has an empty term map.
class MPoly {
 public:
  using TermMap = std::map<ExpVec, Rational, GradedLex>;

  explicit MPoly(int nvars = 0) : nvars_(nvars) {
    if (nvars < 0) throw DomainError("MPoly: negative variable count");
  }

  static MPoly constant(int nvars, Rational c) {
    MPoly p(nvars);
    if (c != 0) p.terms_.emplace(ExpVec(static_cast<std::size_t>(nvars), 0), std::move(c));
    return p;
  }

  static MPoly variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw DomainError("MPoly::variable: index out of range");
    MPoly p(nvars);
    ExpVec e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static MPoly monomial(int nvars, ExpVec e, Rational c) {
    if (static_cast<int>(e.size()) != nvars)
      throw MismatchError("MPoly::monomial: exponent vector length");
    MPoly p(nvars);
    if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
  }

  Rational constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw DomainError("constant_value: polynomial is not constant");
    return terms_.begin()->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned t = 0;
      for (unsigned k : e) t += k;
      if (t > d) d = t;
    }
    return d;
  }

  /// Coefficient of the graded-lex largest monomial (0 for the zero poly).
  Rational leading_coefficient() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
  }

  void add_term(const ExpVec& e, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(e.size()) != nvars_) throw MismatchError("add_term: exponent length");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MPoly& operator-=(const MPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_same(b);
    MPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        ExpVec e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }

  bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  MPoly pow(unsigned k) const {
    MPoly r = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  MPoly derivative(int var) const {
    if (var < 0 || var >= nvars_) throw DomainError("derivative: variable out of range");
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      const unsigned k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      ExpVec d(e);
      d[static_cast<std::size_t>(var)] = k - 1;
      r.add_term(d, c * Rational(k));
    }
    return r;
  }

  /// Substitute x_i -> images[i] (each over a common variable count).
  MPoly subst(std::span<const MPoly> images) const {
    if (static_cast<int>(images.size()) != nvars_)
      throw MismatchError("subst: wrong image count");
    const int out_vars = images.empty() ? 0 : images[0].nvars();
    for (const auto& im : images)
      if (im.nvars() != out_vars) throw MismatchError("subst: mixed image variable counts");
    // Cache powers of each image.
    std::vector<std::vector<MPoly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      powers[i].push_back(MPoly::constant(out_vars, 1));
    MPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
      MPoly t = MPoly::constant(out_vars, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
        if (e[i] > 0) t = t * powers[i][e[i]];
      }
      r += t;
    }
    return r;
  }

  Rational eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != nvars_) throw MismatchError("eval: wrong point size");
    Rational r = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      r += t;
    }
    return r;
  }

  /// Reinterpret over a larger variable set (new trailing variables unused).
  MPoly widened(int new_nvars) const {
    if (new_nvars < nvars_) throw DomainError("widened: cannot shrink");
    MPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
      ExpVec w(e);
      w.resize(static_cast<std::size_t>(new_nvars), 0);
      r.terms_.emplace(std::move(w), c);
    }
    return r;
  }

  /// Drop unused trailing variables down to new_nvars; the dropped variables
  /// must not occur in any term.
  MPoly narrowed(int new_nvars) const {
    if (new_nvars > nvars_) throw DomainError("narrowed: cannot grow");
    MPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = static_cast<std::size_t>(new_nvars); i < e.size(); ++i)
        if (e[i] != 0) throw DomainError("narrowed: trailing variable in use");
      ExpVec w(e.begin(), e.begin() + new_nvars);
      r.terms_.emplace(std::move(w), c);
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    // Highest graded-lex term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (first) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      std::string vars;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (e[i] > 1) vars += "^" + std::to_string(e[i]);
      }
      if (vars.empty()) {
        s += iforms::to_string(a);
      } else {
        if (a != 1) s += iforms::to_string(a) + "*";
        s += vars;
      }
    }
    return s;
  }

 private:
  void check_same(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw MismatchError("MPoly: variable-count mismatch");
  }

  int nvars_;
  TermMap terms_;
};

/// Determinant of a square MPoly matrix by Laplace expansion with subset
/// memoization (the matrices here have at most 7 rows).
inline MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("mpoly_det: empty matrix");
  const int nvars = m[0][0].nvars();
  for (const auto& row : m)
    if (row.size() != n) throw MismatchError("mpoly_det: matrix not square");
  if (n > 20) throw DomainError("mpoly_det: matrix too large");
  // table[S] = det of rows 0..popcount(S)-1 against column set S.
  std::vector<MPoly> table(1ul << n, MPoly(nvars));
  table[0] = MPoly::constant(nvars, 1);
  for (unsigned long s = 1; s < (1ul << n); ++s) {
    const int k = __builtin_popcountl(s);
    MPoly acc(nvars);
    int pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(s >> c & 1)) continue;
      if (!m[static_cast<std::size_t>(k - 1)][c].is_zero()) {
        MPoly t = m[static_cast<std::size_t>(k - 1)][c] * table[s & ~(1ul << c)];
        if ((k - 1 + pos) % 2 != 0) t = -t;
        acc += t;
      }
      ++pos;
    }
    table[s] = std::move(acc);
  }
  return table[(1ul << n) - 1];
}

/// Adjugate of a square MPoly matrix: adj(A)[i][j] = cofactor C_ji, so that
/// A * adj(A) = det(A) * I.
inline std::vector<std::vector<MPoly>> mpoly_adjugate(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  const int nvars = m[0][0].nvars();
  std::vector<std::vector<MPoly>> adj(n, std::vector<MPoly>(n, MPoly(nvars)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<MPoly>> minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<MPoly> row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          row.push_back(m[r][c]);
        }
        minor.push_back(std::move(row));
      }
      MPoly cof = n == 1 ? MPoly::constant(nvars, 1) : mpoly_det(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      adj[j][i] = std::move(cof);
    }
  }
  return adj;
}

/// Canonical projective representative of a polynomial vector: one common
/// rational scale clearing all denominators and integer content, sign fixed
/// by the first nonzero entry's leading coefficient.
inline std::vector<MPoly> primitive_normalize(std::vector<MPoly> v) {
  std::vector<Rational> all;
  for (const auto& p : v)
    for (const auto& [e, c] : p.terms()) all.push_back(c);
  if (all.empty()) throw DomainError("primitive_normalize: all entries are zero");
  Rational s = primitive_scale(all);
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    if (p.leading_coefficient() * s < 0) s = -s;
    break;
  }
  for (auto& p : v) p *= s;
  return v;
}

} // namespace iforms
