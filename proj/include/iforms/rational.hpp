#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "iforms/error.hpp"

namespace iforms {

// Exact scalars for the whole toolkit; no floating point anywhere.
// cpp_rational keeps gcd(|num|, den) = 1, den >= 1 and zero as 0/1.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::string to_string(const Int& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1; // exact at every step
  }
  return r;
}

inline Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Scale factor that clears denominators and divides out the common integer
/// content of a list of rationals.  Returns 1 for an all-zero list.
inline Rational primitive_scale(const std::vector<Rational>& values) {
  Int num_gcd = 0;
  Int den_lcm = 1;
  for (const auto& v : values) {
    if (v == 0) continue;
    num_gcd = int_gcd(num_gcd, boost::multiprecision::abs(rat_num(v)));
    den_lcm = int_lcm(den_lcm, rat_den(v));
  }
  if (num_gcd == 0) return Rational(1);
  return Rational(den_lcm, num_gcd);
}

/// Canonical representative of a projective rational vector: integral entries
/// with content 1, first nonzero entry positive.
inline std::vector<Rational> primitive_normalize(std::vector<Rational> v) {
  Rational s = primitive_scale(v);
  bool all_zero = true;
  for (auto& x : v) {
    if (x != 0) all_zero = false;
  }
  if (all_zero) throw DomainError("primitive_normalize: all entries are zero");
  for (auto& x : v) x *= s;
  for (const auto& x : v) {
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  }
  return v;
}

} // namespace iforms
