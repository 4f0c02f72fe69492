#pragma once

#include <map>
#include <string>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/formspace.hpp"
#include "iforms/qmatrix.hpp"
#include "iforms/rational.hpp"

namespace iforms {

/// Element of the exterior algebra over the dual g* of a Lie algebra:
/// constant coefficients on strictly increasing covector index tuples.
/// Kept separate from PForm; left-invariant forms are not germs with
/// polynomial coefficients.
class ConstForm {
 public:
  ConstForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || degree < 0) throw DomainError("ConstForm: negative size");
  }

  static ConstForm covector(int dim, int i) {
    if (i < 0 || i >= dim) throw DomainError("ConstForm::covector: index out of range");
    ConstForm a(dim, 1);
    a.comps_.emplace(IndexTuple{i}, Rational(1));
    return a;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, Rational>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  void add_term(IndexTuple idx, const Rational& c) {
    if (static_cast<int>(idx.size()) != degree_) throw MismatchError("add_term: tuple length");
    if (c == 0) return;
    for (int i : idx)
      if (i < 0 || i >= dim_) throw DomainError("add_term: index out of range");
    const int sign = detail::sort_indices(idx);
    if (sign == 0) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
      comps_.emplace(std::move(idx), sign == 1 ? c : -c);
    } else {
      it->second += sign == 1 ? c : -c;
      if (it->second == 0) comps_.erase(it);
    }
  }

  ConstForm operator-() const {
    ConstForm r(dim_, degree_);
    for (const auto& [i, c] : comps_) r.comps_.emplace(i, -c);
    return r;
  }

  ConstForm& operator+=(const ConstForm& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw MismatchError("ConstForm +: shape");
    for (const auto& [i, c] : o.comps_) {
      auto it = comps_.find(i);
      if (it == comps_.end()) {
        comps_.emplace(i, c);
      } else {
        it->second += c;
        if (it->second == 0) comps_.erase(it);
      }
    }
    return *this;
  }
  friend ConstForm operator+(ConstForm a, const ConstForm& b) { return a += b; }
  friend ConstForm operator-(ConstForm a, const ConstForm& b) { return a += -b; }

  ConstForm& operator*=(const Rational& c) {
    if (c == 0) {
      comps_.clear();
      return *this;
    }
    for (auto& [i, v] : comps_) v *= c;
    return *this;
  }
  friend ConstForm operator*(ConstForm a, const Rational& c) { return a *= c; }
  friend ConstForm operator*(const Rational& c, ConstForm a) { return a *= c; }

  bool operator==(const ConstForm& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && comps_ == o.comps_;
  }

 private:
  int dim_;
  int degree_;
  std::map<IndexTuple, Rational> comps_;
};

inline ConstForm wedge(const ConstForm& a, const ConstForm& b) {
  if (a.dim() != b.dim()) throw MismatchError("wedge: dim mismatch");
  ConstForm r(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.comps())
    for (const auto& [ib, cb] : b.comps()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  return r;
}

/// Lie algebra given by structure constants c[i][j][k] for
/// [e_i, e_j] = sum_k c[i][j][k] e_k, antisymmetric in (i, j).
class LieAlgebra {
 public:
  struct Bracket {
    int i = 0, j = 0; // 0-based, i < j
    std::vector<Rational> coeffs;
  };

  LieAlgebra(int dim, const std::vector<Bracket>& brackets) : dim_(dim) {
    if (dim < 1) throw DomainError("LieAlgebra: dimension must be positive");
    c_.assign(static_cast<std::size_t>(dim),
              std::vector<std::vector<Rational>>(
                  static_cast<std::size_t>(dim),
                  std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0))));
    for (const auto& b : brackets) {
      if (b.i < 0 || b.j < 0 || b.i >= dim || b.j >= dim || b.i == b.j)
        throw DomainError("LieAlgebra: bad bracket indices");
      if (static_cast<int>(b.coeffs.size()) != dim)
        throw MismatchError("LieAlgebra: bracket coefficient count");
      for (int k = 0; k < dim; ++k) {
        set(b.i, b.j, k, b.coeffs[static_cast<std::size_t>(k)]);
        set(b.j, b.i, k, -b.coeffs[static_cast<std::size_t>(k)]);
      }
    }
  }

  /// Full structure tensor constructor; antisymmetry is validated, not fixed.
  explicit LieAlgebra(std::vector<std::vector<std::vector<Rational>>> c)
      : dim_(static_cast<int>(c.size())), c_(std::move(c)) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          if (at(i, j, k) != -at(j, i, k))
            throw DomainError("LieAlgebra: structure constants are not antisymmetric");
  }

  int dim() const { return dim_; }

  const Rational& at(int i, int j, int k) const {
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }

  /// [u, v] in coordinates.
  std::vector<Rational> bracket(const std::vector<Rational>& u,
                                const std::vector<Rational>& v) const {
    if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
      throw MismatchError("bracket: coordinate size");
    std::vector<Rational> r(static_cast<std::size_t>(dim_), Rational(0));
    for (int i = 0; i < dim_; ++i) {
      if (u[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (v[static_cast<std::size_t>(j)] == 0) continue;
        for (int k = 0; k < dim_; ++k)
          r[static_cast<std::size_t>(k)] +=
              u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] * at(i, j, k);
      }
    }
    return r;
  }

 private:
  void set(int i, int j, int k, const Rational& v) {
    c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = v;
  }

  int dim_;
  std::vector<std::vector<std::vector<Rational>>> c_;
};

/// Jacobi identity on all index triples.
inline bool check_jacobi(const LieAlgebra& l) {
  const int n = l.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int t = 0; t < n; ++t) {
          Rational s = 0;
          for (int m = 0; m < n; ++m)
            s += l.at(i, j, m) * l.at(m, k, t) + l.at(j, k, m) * l.at(m, i, t) +
                 l.at(k, i, m) * l.at(m, j, t);
          if (s != 0) return false;
        }
  return true;
}

namespace detail {

/// The differential without the Jacobi gate; d^2 = 0 is only guaranteed when
/// the structure constants satisfy Jacobi.
inline ConstForm coalgebra_d_raw(const LieAlgebra& l, const ConstForm& a) {
  const int n = l.dim();
  auto d_covector = [&](int k) {
    ConstForm r(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) r.add_term({i, j}, -l.at(i, j, k));
    return r;
  };
  ConstForm out(n, a.degree() + 1);
  for (const auto& [idx, c] : a.comps()) {
    for (std::size_t r = 0; r < idx.size(); ++r) {
      ConstForm term = d_covector(idx[r]);
      // prefix covectors, then the differentiated slot, then the suffix
      for (std::size_t q = r; q-- > 0;) term = wedge(ConstForm::covector(n, idx[q]), term);
      for (std::size_t q = r + 1; q < idx.size(); ++q)
        term = wedge(term, ConstForm::covector(n, idx[q]));
      out += term * (r % 2 == 0 ? c : -c);
    }
  }
  return out;
}

} // namespace detail

/// Chevalley-Eilenberg differential on the exterior algebra of g*, with the
/// convention d xi (u, v) = -xi([u, v]): on basis covectors,
/// d e*_k = - sum_{i<j} c[i][j][k] e*_i ^ e*_j, extended as an antiderivation.
inline ConstForm coalgebra_d(const LieAlgebra& l, const ConstForm& a) {
  if (a.dim() != l.dim()) throw MismatchError("coalgebra_d: dimension mismatch");
  if (!check_jacobi(l)) throw PreconditionError("coalgebra_d: Jacobi identity fails");
  return detail::coalgebra_d_raw(l, a);
}

/// Direct integrability test in Lambda^3 g* for omega = sum lambda_i e*_i.
inline bool lie_integrable(const LieAlgebra& l, std::span<const Rational> lambda) {
  if (static_cast<int>(lambda.size()) != l.dim())
    throw MismatchError("lie_integrable: coordinate count");
  const int n = l.dim();
  ConstForm w(n, 1);
  for (int i = 0; i < n; ++i) w.add_term({i}, lambda[static_cast<std::size_t>(i)]);
  return wedge(w, coalgebra_d(l, w)).is_zero();
}

/// Quadric generators of the variety of integrable left-invariant 1-forms in
/// P(g*), as the coefficients of omega ^ d omega in Lambda^3 g*.
inline QuadricSystem lie_iw(const LieAlgebra& l) {
  if (!check_jacobi(l)) throw PreconditionError("lie_iw: Jacobi identity fails");
  const int n = l.dim();
  const std::size_t dim = static_cast<std::size_t>(n);
  std::map<QuadricLabel, QMatrix, QuadricLabelLess> raw;
  for (int j = 0; j < n; ++j) {
    const ConstForm dj = coalgebra_d(l, ConstForm::covector(n, j));
    for (int i = 0; i < n; ++i) {
      const ConstForm t = wedge(ConstForm::covector(n, i), dj);
      for (const auto& [idx, coeff] : t.comps()) {
        QuadricLabel label{{idx[0], idx[1], idx[2]}, ExpVec{}};
        auto it = raw.find(label);
        if (it == raw.end()) it = raw.emplace(label, QMatrix(dim, dim)).first;
        it->second(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += coeff;
      }
    }
  }
  return detail::build_quadric_system(dim, raw);
}

/// For an integrable class, the kernel of omega must be a codimension-one
/// subalgebra: check that the bracket of any two kernel basis vectors lands
/// back in the kernel.
inline bool kernel_is_subalgebra(const LieAlgebra& l, std::span<const Rational> lambda) {
  if (static_cast<int>(lambda.size()) != l.dim())
    throw MismatchError("kernel_is_subalgebra: coordinate count");
  QMatrix m(1, lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) m(0, i) = lambda[i];
  auto kernel = m.kernel_basis();
  auto pairs_with = [&](const std::vector<Rational>& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * v[i];
    return s;
  };
  for (std::size_t a = 0; a < kernel.size(); ++a)
    for (std::size_t b = a + 1; b < kernel.size(); ++b)
      if (pairs_with(l.bracket(kernel[a], kernel[b])) != 0) return false;
  return true;
}

} // namespace iforms
