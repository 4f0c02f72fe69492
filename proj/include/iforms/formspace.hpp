#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iforms/biform.hpp"
#include "iforms/error.hpp"
#include "iforms/exterior.hpp"
#include "iforms/qmatrix.hpp"

namespace iforms {

/// Finite-dimensional space of 1-forms, held as an ordered basis.  The basis
/// must be linearly independent over the constants: the matrix of all
/// polynomial coefficients has full row rank.
class FormSpace {
 public:
  explicit FormSpace(std::vector<PForm> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw DomainError("FormSpace: empty basis");
    nvars_ = basis_.front().nvars();
    for (const auto& w : basis_) {
      if (w.nvars() != nvars_) throw MismatchError("FormSpace: mixed variable counts");
      if (w.degree() != 1) throw DomainError("FormSpace: basis element is not a 1-form");
    }
    if (coefficient_matrix().rank() != basis_.size())
      throw DomainError("FormSpace: basis is linearly dependent");
  }

  int nvars() const { return nvars_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<PForm>& basis() const { return basis_; }

  /// Rows = basis elements, columns = the union of (coordinate index,
  /// coefficient monomial) pairs in a fixed deterministic order.
  QMatrix coefficient_matrix(const PForm* extra = nullptr) const {
    using Col = std::pair<int, ExpVec>;
    struct ColLess {
      bool operator()(const Col& a, const Col& b) const {
        if (a.first != b.first) return a.first < b.first;
        return GradedLex{}(a.second, b.second);
      }
    };
    std::map<Col, std::size_t, ColLess> cols;
    auto scan = [&](const PForm& w) {
      for (const auto& [idx, c] : w.comps())
        for (const auto& [e, v] : c.terms()) cols.emplace(Col{idx[0], e}, 0);
    };
    for (const auto& w : basis_) scan(w);
    if (extra) scan(*extra);
    std::size_t k = 0;
    for (auto& [c, pos] : cols) pos = k++;
    QMatrix m(basis_.size() + (extra ? 1 : 0), cols.size());
    auto fill = [&](std::size_t row, const PForm& w) {
      for (const auto& [idx, c] : w.comps())
        for (const auto& [e, v] : c.terms()) m(row, cols.at(Col{idx[0], e})) = v;
    };
    for (std::size_t i = 0; i < basis_.size(); ++i) fill(i, basis_[i]);
    if (extra) fill(basis_.size(), *extra);
    return m;
  }

  /// sum_i lambda_i * basis_i.
  PForm combine(std::span<const Rational> lambda) const {
    if (lambda.size() != basis_.size()) throw MismatchError("combine: coordinate count");
    PForm w(nvars_, 1);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (lambda[i] != 0) w += basis_[i] * lambda[i];
    return w;
  }

 private:
  int nvars_ = 0;
  std::vector<PForm> basis_;
};

/// Coordinates of a 1-form in the basis of W, or nullopt when the form does
/// not lie in W.
inline std::optional<std::vector<Rational>> coordinates_in_basis(const FormSpace& w,
                                                                 const PForm& form) {
  if (form.nvars() != w.nvars() || form.degree() != 1)
    throw MismatchError("coordinates_in_basis: form shape");
  QMatrix m = w.coefficient_matrix(&form);
  // Solve basis^T * x = form over the shared column space.
  QMatrix a(m.cols(), w.dim());
  std::vector<Rational> b(m.cols(), Rational(0));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < w.dim(); ++i) a(j, i) = m(i, j);
    b[j] = m(w.dim(), j);
  }
  return a.solve(b);
}

/// Frobenius integrability: w ^ dw = 0 exactly.
inline bool is_integrable(const PForm& w) {
  if (w.degree() != 1) throw DomainError("is_integrable: input is not a 1-form");
  return wedge(w, ext_d(w)).is_zero();
}

/// The greatest r such that some r-fold wedge of basis elements of W is a
/// nonzero r-form.  Enumerates from min(dim W, nvars) downward and returns on
/// the first nonzero wedge; subsets are tried in lexicographic order.
inline int rank(const FormSpace& w) {
  const int cap = static_cast<int>(std::min<std::size_t>(w.dim(), static_cast<std::size_t>(w.nvars())));
  for (int r = cap; r >= 1; --r) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
      PForm acc = w.basis()[pick[0]];
      for (std::size_t i = 1; i < pick.size(); ++i) acc = wedge(acc, w.basis()[pick[i]]);
      if (!acc.is_zero()) return r;
      // next lexicographic combination
      int i = r - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                           w.dim() - static_cast<std::size_t>(r - i))
        --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < r; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return 0;
}

/// Label of one quadric generator of I_W: the 3-form basis tuple and the
/// coefficient monomial it came from.
struct QuadricLabel {
  std::array<int, 3> form_indices{};
  ExpVec monomial; // empty for constant-coefficient settings

  bool operator==(const QuadricLabel& o) const {
    return form_indices == o.form_indices && monomial == o.monomial;
  }
};

struct QuadricLabelLess {
  bool operator()(const QuadricLabel& a, const QuadricLabel& b) const {
    if (a.form_indices != b.form_indices) return a.form_indices < b.form_indices;
    return GradedLex{}(a.monomial, b.monomial);
  }
};

struct Quadric {
  QuadricLabel label;
  QMatrix matrix; // symmetric
};

/// The quadratic forms in the coordinates of P(W) cutting out I_W.  Matrices
/// are symmetric, deduplicated up to rational scale (first label wins), and
/// never zero.
class QuadricSystem {
 public:
  QuadricSystem(std::size_t dimension, std::vector<Quadric> entries)
      : dim_(dimension), entries_(std::move(entries)) {}

  std::size_t dimension() const { return dim_; }
  const std::vector<Quadric>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::size_t dim_;
  std::vector<Quadric> entries_;
};

namespace detail {

inline std::vector<Rational> flatten_normalized(const QMatrix& m) {
  std::vector<Rational> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return primitive_normalize(std::move(v));
}

/// Shared quadric assembly: coeff_of(i, j) yields the 3-form T_ij = w_i ^ d w_j
/// expanded into (tuple, monomial) -> Rational contributions.
inline QuadricSystem build_quadric_system(
    std::size_t dim,
    const std::map<QuadricLabel, QMatrix, QuadricLabelLess>& raw) {
  std::vector<Quadric> out;
  std::vector<std::vector<Rational>> seen;
  for (const auto& [label, c] : raw) {
    // Symmetrize: values of the quadratic form are unchanged.
    QMatrix m(dim, dim);
    bool zero = true;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        m(i, j) = (c(i, j) + c(j, i)) / 2;
        if (m(i, j) != 0) zero = false;
      }
    if (zero) continue;
    auto key = flatten_normalized(m);
    bool dup = false;
    for (const auto& k : seen)
      if (k == key) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back(std::move(key));
    out.push_back(Quadric{label, std::move(m)});
  }
  return QuadricSystem(dim, std::move(out));
}

} // namespace detail

/// Quadric generators of I_W from expanding (sum_i l_i w_i) ^ d(sum_j l_j w_j):
/// each (3-form tuple, coefficient monomial) contributes one quadratic form in
/// the coordinates l.
inline QuadricSystem iw_quadrics(const FormSpace& w) {
  const std::size_t dim = w.dim();
  std::map<QuadricLabel, QMatrix, QuadricLabelLess> raw;
  for (std::size_t j = 0; j < dim; ++j) {
    const PForm dwj = ext_d(w.basis()[j]);
    for (std::size_t i = 0; i < dim; ++i) {
      const PForm t = wedge(w.basis()[i], dwj);
      for (const auto& [idx, poly] : t.comps()) {
        for (const auto& [mono, coeff] : poly.terms()) {
          QuadricLabel label{{idx[0], idx[1], idx[2]}, mono};
          auto it = raw.find(label);
          if (it == raw.end()) it = raw.emplace(label, QMatrix(dim, dim)).first;
          it->second(i, j) += coeff;
        }
      }
    }
  }
  return detail::build_quadric_system(dim, raw);
}

/// lambda^T M lambda for every stored quadric, in stored order.
inline std::vector<Rational> eval_quadrics(const QuadricSystem& q,
                                           std::span<const Rational> lambda) {
  if (lambda.size() != q.dimension()) throw MismatchError("eval_quadrics: size mismatch");
  std::vector<Rational> out;
  out.reserve(q.size());
  for (const auto& e : q.entries()) {
    Rational v = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] == 0) continue;
      for (std::size_t j = 0; j < lambda.size(); ++j)
        if (lambda[j] != 0) v += lambda[i] * e.matrix(i, j) * lambda[j];
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// No n+1 of the given points of P^n lie in a hyperplane: every (n+1)-subset
/// of the coordinate vectors is linearly independent.
inline bool general_position(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) return true;
  const std::size_t len = points.front().size();
  for (const auto& p : points) {
    if (p.size() != len) throw MismatchError("general_position: mixed lengths");
    bool zero = true;
    for (const auto& c : p) zero = zero && c == 0;
    if (zero) throw DomainError("general_position: zero vector among points");
  }
  if (points.size() < len) return true;
  std::vector<std::size_t> pick(len);
  for (std::size_t i = 0; i < len; ++i) pick[i] = i;
  while (true) {
    QMatrix m(len, len);
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j) m(i, j) = points[pick[i]][j];
    if (m.det() == 0) return false;
    std::size_t i = len;
    while (i > 0 && pick[i - 1] == points.size() - (len - (i - 1))) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < len; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

/// Projective curve parameterized by homogeneous binary forms of a common
/// degree.  The constructor reduces the parameterization (divides out the
/// common BiForm factor) and primitive-normalizes the coefficients.
class CurveParam {
 public:
  explicit CurveParam(std::vector<BiForm> comps) {
    if (comps.empty()) throw DomainError("CurveParam: no components");
    const int d = comps.front().degree();
    bool all_zero = true;
    for (const auto& c : comps) {
      if (c.degree() != d) throw MismatchError("CurveParam: mixed degrees");
      all_zero = all_zero && c.is_zero();
    }
    if (all_zero) throw DomainError("CurveParam: all components are zero");
    // Reduce: divide out the gcd of the nonzero components.
    BiForm g(0);
    bool have = false;
    for (const auto& c : comps) {
      if (c.is_zero()) continue;
      g = have ? biform_gcd(g, c) : c;
      have = true;
    }
    if (g.degree() > 0) {
      for (auto& c : comps) c = biform_divexact(c, g);
    }
    comps_ = primitive_normalize(std::move(comps));
  }

  std::size_t size() const { return comps_.size(); }
  int degree() const { return comps_.front().degree(); }
  const std::vector<BiForm>& components() const { return comps_; }

  std::vector<Rational> eval(const Rational& s, const Rational& t) const {
    std::vector<Rational> p;
    p.reserve(comps_.size());
    for (const auto& c : comps_) p.push_back(c.eval(s, t));
    return p;
  }

  /// Reparameterize by (s,t) -> (a s + b t, c s + d t), ad - bc != 0.
  CurveParam reparameterized(const Rational& a, const Rational& b, const Rational& c,
                             const Rational& d) const {
    if (a * d - b * c == 0) throw DomainError("reparameterized: singular parameter change");
    std::vector<BiForm> out;
    out.reserve(comps_.size());
    for (const auto& f : comps_) out.push_back(mobius_compose(f, a, b, c, d));
    return CurveParam(std::move(out));
  }

 private:
  std::vector<BiForm> comps_;
};

/// True iff the curve lies in I_W: every quadric of iw_quadrics(W) composed
/// with the parameterization vanishes identically in (s,t).
inline bool curve_in_iw(const FormSpace& w, const CurveParam& c) {
  if (c.size() != w.dim()) throw MismatchError("curve_in_iw: component count != dim W");
  const QuadricSystem q = iw_quadrics(w);
  for (const auto& e : q.entries()) {
    BiForm acc(2 * c.degree());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (e.matrix(i, j) == 0) continue;
        acc += c.components()[i] * c.components()[j] * e.matrix(i, j);
      }
    if (!acc.is_zero()) return false;
  }
  return true;
}

struct RncVerdict {
  int span_dim = 0; // dimension of the projective linear span
  int degree = 0;   // degree of the reduced parameterization
  bool is_rnc = false;
};

/// Minimal-degree test for a parameterized curve: span dimension is the rank
/// of the coefficient matrix minus one; the curve is a rational normal curve
/// in its span iff degree equals span dimension (degree >= 1).
inline RncVerdict curve_is_rnc(const CurveParam& c) {
  QMatrix m(c.size(), static_cast<std::size_t>(c.degree()) + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& coeffs = c.components()[i].coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) m(i, k) = coeffs[k];
  }
  RncVerdict v;
  v.span_dim = static_cast<int>(m.rank()) - 1;
  v.degree = c.degree();
  v.is_rnc = v.degree >= 1 && v.degree == v.span_dim;
  return v;
}

struct RnDdStats {
  Int codimension;
  Int degree;
};

/// Codimension and degree of the component R_n(d,d) of the space of degree
/// 2d-2 foliations spread by pencils of degree-d hypersurfaces.
inline RnDdStats rn_dd_stats(int n, int d) {
  if (n < 3) throw DomainError("rn_dd_stats: require n >= 3");
  if (d < 1) throw DomainError("rn_dd_stats: require d >= 1");
  auto cap_n = [&](int k) -> Int {
    return binomial(static_cast<unsigned>(n + k), static_cast<unsigned>(k)) - 1;
  };
  const Int nd = cap_n(d);
  if (nd < 2) throw DomainError("rn_dd_stats: require N_d >= 2");
  RnDdStats s;
  s.codimension = Int(n + 1) * cap_n(2 * d - 1) - cap_n(2 * d) + (n - 1) - (2 * nd - 2);
  const unsigned ndu = static_cast<unsigned>(nd);
  const Int numer = binomial(2 * ndu - 2, ndu);
  Int q, r;
  boost::multiprecision::divide_qr(numer, Int(nd - 1), q, r);
  if (r != 0) throw DomainError("rn_dd_stats: degree formula not divisible");
  s.degree = q;
  return s;
}

} // namespace iforms
