#pragma once

#include <string>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/rational.hpp"

namespace iforms {

/// Homogeneous binary form in (s, t): coeffs[k] is the coefficient of
/// s^(d-k) t^k.  The zero form of degree d is all-zero coefficients.
class BiForm {
 public:
  explicit BiForm(int degree = 0)
      : coeffs_(static_cast<std::size_t>(degree) + 1, Rational(0)) {
    if (degree < 0) throw DomainError("BiForm: negative degree");
  }

  static BiForm from_coeffs(std::vector<Rational> c) {
    if (c.empty()) throw DomainError("BiForm: empty coefficient list");
    BiForm f(static_cast<int>(c.size()) - 1);
    f.coeffs_ = std::move(c);
    return f;
  }

  static BiForm monomial(int degree, int k, Rational c = Rational(1)) {
    BiForm f(degree);
    if (k < 0 || k > degree) throw DomainError("BiForm::monomial: index out of range");
    f.coeffs_[static_cast<std::size_t>(k)] = std::move(c);
    return f;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool operator==(const BiForm& o) const { return coeffs_ == o.coeffs_; }

  BiForm operator-() const {
    BiForm r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  BiForm& operator+=(const BiForm& o) {
    if (degree() != o.degree()) throw MismatchError("BiForm +: degree mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }

  BiForm& operator-=(const BiForm& o) {
    if (degree() != o.degree()) throw MismatchError("BiForm -: degree mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }

  friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
  friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }

  friend BiForm operator*(const BiForm& a, const BiForm& b) {
    BiForm r(a.degree() + b.degree());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  BiForm& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  friend BiForm operator*(BiForm a, const Rational& c) { return a *= c; }
  friend BiForm operator*(const Rational& c, BiForm a) { return a *= c; }

  Rational eval(const Rational& s, const Rational& t) const {
    // Horner in t with the s-powers folded in.
    const int d = degree();
    Rational r = 0;
    for (int k = 0; k <= d; ++k) {
      Rational term = coeffs_[static_cast<std::size_t>(k)];
      if (term == 0) continue;
      for (int i = 0; i < d - k; ++i) term *= s;
      for (int i = 0; i < k; ++i) term *= t;
      r += term;
    }
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    const int d = degree();
    std::string out;
    bool first = true;
    for (int k = 0; k <= d; ++k) {
      Rational c = coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      if (first) {
        if (c < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      first = false;
      std::string mono;
      if (d - k > 0) mono += "s" + (d - k > 1 ? "^" + std::to_string(d - k) : "");
      if (k > 0) {
        if (!mono.empty()) mono += "*";
        mono += "t" + (k > 1 ? "^" + std::to_string(k) : "");
      }
      if (mono.empty()) {
        out += iforms::to_string(c);
      } else {
        if (c != 1) out += iforms::to_string(c) + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  std::vector<Rational> coeffs_;
};

namespace detail {

// f = s^smult t^tmult * (homogenization of unit), where unit has nonzero
// constant and leading coefficients.
struct BiFormSplit {
  int smult = 0, tmult = 0;
  std::vector<Rational> unit; // univariate in T = t/s, low to high
};

inline BiFormSplit split_biform(const BiForm& f) {
  if (f.is_zero()) throw DomainError("split_biform: zero form");
  const auto& c = f.coeffs();
  std::size_t a = 0, b = c.size() - 1;
  while (c[a] == 0) ++a;
  while (c[b] == 0) --b;
  BiFormSplit s;
  s.tmult = static_cast<int>(a);
  s.smult = f.degree() - static_cast<int>(b);
  s.unit.assign(c.begin() + static_cast<long>(a), c.begin() + static_cast<long>(b) + 1);
  return s;
}

inline BiForm assemble_biform(const BiFormSplit& s) {
  const int d = s.smult + s.tmult + static_cast<int>(s.unit.size()) - 1;
  BiForm f(d);
  for (std::size_t j = 0; j < s.unit.size(); ++j)
    f[static_cast<std::size_t>(s.tmult) + j] = s.unit[j];
  return f;
}

inline std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (b.empty() || b.back() == 0) throw DomainError("poly_mod: zero divisor");
  while (a.size() >= b.size()) {
    const Rational q = a.back() / b.back();
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

inline std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (!b.empty() && b.back() == 0) b.pop_back();
  while (!b.empty()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) throw DomainError("poly_gcd: both inputs zero");
  const Rational lead = a.back();
  for (auto& c : a) c /= lead; // monic
  return a;
}

// Exact division, throws if the division is not exact.
inline std::vector<Rational> poly_divexact(std::vector<Rational> a,
                                           const std::vector<Rational>& b) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (b.empty() || b.back() == 0) throw DomainError("poly_divexact: zero divisor");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw DomainError("poly_divexact: not divisible");
  std::vector<Rational> q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t off = a.size() - b.size();
    q[off] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
    if (a.size() < b.size()) throw DomainError("poly_divexact: not divisible");
  }
  return q;
}

} // namespace detail

/// Greatest common divisor of two binary forms (monic-normalized unit part).
inline BiForm biform_gcd(const BiForm& f, const BiForm& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("biform_gcd: zero input");
  auto sf = detail::split_biform(f);
  auto sg = detail::split_biform(g);
  detail::BiFormSplit r;
  r.smult = std::min(sf.smult, sg.smult);
  r.tmult = std::min(sf.tmult, sg.tmult);
  r.unit = detail::poly_gcd(sf.unit, sg.unit);
  return detail::assemble_biform(r);
}

/// Exact quotient f / g; throws DomainError when g does not divide f.
inline BiForm biform_divexact(const BiForm& f, const BiForm& g) {
  if (g.is_zero()) throw DomainError("biform_divexact: zero divisor");
  if (f.is_zero()) return BiForm(f.degree() - g.degree());
  auto sf = detail::split_biform(f);
  auto sg = detail::split_biform(g);
  if (sf.smult < sg.smult || sf.tmult < sg.tmult)
    throw DomainError("biform_divexact: not divisible");
  detail::BiFormSplit r;
  r.smult = sf.smult - sg.smult;
  r.tmult = sf.tmult - sg.tmult;
  r.unit = detail::poly_divexact(sf.unit, sg.unit);
  if (r.unit.empty()) throw DomainError("biform_divexact: internal zero quotient");
  return detail::assemble_biform(r);
}

/// Substitute (s, t) -> (a s + b t, c s + d t).
inline BiForm mobius_compose(const BiForm& f, const Rational& a, const Rational& b,
                             const Rational& c, const Rational& d) {
  const int deg = f.degree();
  BiForm r(deg);
  const BiForm ls = BiForm::from_coeffs({a, b});
  const BiForm lt = BiForm::from_coeffs({c, d});
  BiForm acc(0);
  for (int k = 0; k <= deg; ++k) {
    const Rational& coef = f.coeffs()[static_cast<std::size_t>(k)];
    if (coef == 0) continue;
    BiForm term = BiForm::from_coeffs({coef});
    for (int i = 0; i < deg - k; ++i) term = term * ls;
    for (int i = 0; i < k; ++i) term = term * lt;
    r += term;
  }
  return r;
}

/// Canonical projective representative of a biform vector: one common scale,
/// sign fixed by the first nonzero coefficient of the first nonzero form.
inline std::vector<BiForm> primitive_normalize(std::vector<BiForm> v) {
  std::vector<Rational> all;
  for (const auto& f : v)
    for (const auto& c : f.coeffs()) all.push_back(c);
  bool any = false;
  for (const auto& c : all) any = any || c != 0;
  if (!any) throw DomainError("primitive_normalize: all entries are zero");
  Rational s = primitive_scale(all);
  for (const auto& f : v) {
    if (f.is_zero()) continue;
    for (const auto& c : f.coeffs())
      if (c != 0) {
        if (c * s < 0) s = -s;
        break;
      }
    break;
  }
  for (auto& f : v) f *= s;
  return v;
}

} // namespace iforms
