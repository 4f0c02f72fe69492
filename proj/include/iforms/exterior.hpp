#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/mpoly.hpp"
#include "iforms/qmatrix.hpp"

namespace iforms {

/// Strictly increasing index tuple labelling dx_{i1} ^ ... ^ dx_{iq}.
using IndexTuple = std::vector<int>;

namespace detail {

// Sort an index tuple, returning the permutation sign, or 0 on a repeat.
inline int sort_indices(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

} // namespace detail

/// Differential q-form with polynomial coefficients.  Component tuples are
/// kept strictly increasing; zero coefficients are never stored.  A degree
/// above nvars is legal and denotes the zero form of that degree.
class PForm {
 public:
  using CompMap = std::map<IndexTuple, MPoly>;

  PForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 0 || degree < 0) throw DomainError("PForm: negative size");
  }

  static PForm zero(int nvars, int degree) { return PForm(nvars, degree); }

  /// The scalar (degree-0) form given by a polynomial.
  static PForm scalar(MPoly f) {
    PForm a(f.nvars(), 0);
    if (!f.is_zero()) a.comps_.emplace(IndexTuple{}, std::move(f));
    return a;
  }

  /// dx_i.
  static PForm d_coordinate(int nvars, int i) {
    if (i < 0 || i >= nvars) throw DomainError("d_coordinate: index out of range");
    PForm a(nvars, 1);
    a.comps_.emplace(IndexTuple{i}, MPoly::constant(nvars, 1));
    return a;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const CompMap& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  const MPoly* component(const IndexTuple& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? nullptr : &it->second;
  }

  /// Add c * dx_idx; idx may be unsorted (the alternating sign is applied).
  void add_term(IndexTuple idx, const MPoly& c) {
    if (static_cast<int>(idx.size()) != degree_) throw MismatchError("add_term: tuple length");
    if (c.nvars() != nvars_) throw MismatchError("add_term: coefficient variables");
    if (c.is_zero()) return;
    for (int i : idx)
      if (i < 0 || i >= nvars_) throw DomainError("add_term: index out of range");
    const int sign = detail::sort_indices(idx);
    if (sign == 0) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
      comps_.emplace(std::move(idx), sign == 1 ? c : -c);
    } else {
      it->second += sign == 1 ? c : -c;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  PForm operator-() const {
    PForm r(nvars_, degree_);
    for (const auto& [i, c] : comps_) r.comps_.emplace(i, -c);
    return r;
  }

  PForm& operator+=(const PForm& o) {
    check_compatible(o);
    for (const auto& [i, c] : o.comps_) {
      auto it = comps_.find(i);
      if (it == comps_.end()) {
        comps_.emplace(i, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) comps_.erase(it);
      }
    }
    return *this;
  }

  PForm& operator-=(const PForm& o) { return *this += -o; }

  friend PForm operator+(PForm a, const PForm& b) { return a += b; }
  friend PForm operator-(PForm a, const PForm& b) { return a -= b; }

  PForm& operator*=(const MPoly& f) {
    if (f.nvars() != nvars_) throw MismatchError("PForm *: variable mismatch");
    CompMap out;
    for (const auto& [i, c] : comps_) {
      MPoly p = c * f;
      if (!p.is_zero()) out.emplace(i, std::move(p));
    }
    comps_ = std::move(out);
    return *this;
  }
  friend PForm operator*(PForm a, const MPoly& f) { return a *= f; }
  friend PForm operator*(const MPoly& f, PForm a) { return a *= f; }

  PForm& operator*=(const Rational& c) {
    if (c == 0) {
      comps_.clear();
      return *this;
    }
    for (auto& [i, p] : comps_) p *= c;
    return *this;
  }
  friend PForm operator*(PForm a, const Rational& c) { return a *= c; }
  friend PForm operator*(const Rational& c, PForm a) { return a *= c; }

  bool operator==(const PForm& o) const {
    return nvars_ == o.nvars_ && degree_ == o.degree_ && comps_ == o.comps_;
  }

  /// Reinterpret over a larger variable set.
  PForm widened(int new_nvars) const {
    PForm r(new_nvars, degree_);
    for (const auto& [i, c] : comps_) r.comps_.emplace(i, c.widened(new_nvars));
    return r;
  }

  /// Drop unused trailing variables; throws if any appear in an index or a
  /// coefficient.
  PForm narrowed(int new_nvars) const {
    PForm r(new_nvars, degree_);
    for (const auto& [i, c] : comps_) {
      for (int k : i)
        if (k >= new_nvars) throw DomainError("narrowed: trailing variable in use");
      r.comps_.emplace(i, c.narrowed(new_nvars));
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (comps_.empty()) return "0";
    std::string s;
    for (const auto& [idx, c] : comps_) {
      if (!s.empty()) s += " + ";
      std::string basis;
      for (int k : idx) {
        if (!basis.empty()) basis += "^";
        basis += "d" + (static_cast<std::size_t>(k) < names.size() ? names[static_cast<std::size_t>(k)]
                                                                   : "x" + std::to_string(k));
      }
      if (idx.empty()) {
        s += c.to_string(names);
      } else {
        s += "(" + c.to_string(names) + ")*" + basis;
      }
    }
    return s;
  }

 private:
  void check_compatible(const PForm& o) const {
    if (nvars_ != o.nvars_) throw MismatchError("PForm: variable-count mismatch");
    if (degree_ != o.degree_) throw MismatchError("PForm: degree mismatch");
  }

  int nvars_;
  int degree_;
  CompMap comps_;
};

/// Polynomial vector field sum_i comps[i] * d/dx_i.
class VectorField {
 public:
  explicit VectorField(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw DomainError("VectorField: negative variable count");
  }

  static VectorField coordinate(int nvars, int i) {
    VectorField v(nvars);
    v.set_component(i, MPoly::constant(nvars, 1));
    return v;
  }

  int nvars() const { return nvars_; }
  const std::map<int, MPoly>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  MPoly component(int i) const {
    auto it = comps_.find(i);
    return it == comps_.end() ? MPoly(nvars_) : it->second;
  }

  void set_component(int i, MPoly c) {
    if (i < 0 || i >= nvars_) throw DomainError("set_component: index out of range");
    if (c.nvars() != nvars_) throw MismatchError("set_component: coefficient variables");
    if (c.is_zero())
      comps_.erase(i);
    else
      comps_[i] = std::move(c);
  }

  void add_component(int i, const MPoly& c) {
    MPoly s = component(i) + c;
    set_component(i, std::move(s));
  }

  VectorField operator-() const {
    VectorField r(nvars_);
    for (const auto& [i, c] : comps_) r.comps_.emplace(i, -c);
    return r;
  }

  bool operator==(const VectorField& o) const {
    return nvars_ == o.nvars_ && comps_ == o.comps_;
  }

  /// Directional derivative of a polynomial along this field.
  MPoly apply(const MPoly& f) const {
    if (f.nvars() != nvars_) throw MismatchError("apply: variable mismatch");
    MPoly r(nvars_);
    for (const auto& [i, c] : comps_) r += c * f.derivative(i);
    return r;
  }

 private:
  int nvars_;
  std::map<int, MPoly> comps_;
};

/// Exterior product.  Results of degree above nvars collapse to zero terms
/// automatically (repeated indices).
inline PForm wedge(const PForm& a, const PForm& b) {
  if (a.nvars() != b.nvars()) throw MismatchError("wedge: variable-count mismatch");
  PForm r(a.nvars(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.comps()) {
    for (const auto& [ib, cb] : b.comps()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  }
  return r;
}

/// Exterior derivative.
inline PForm ext_d(const PForm& a) {
  PForm r(a.nvars(), a.degree() + 1);
  for (const auto& [idx, c] : a.comps()) {
    for (int k = 0; k < a.nvars(); ++k) {
      MPoly dk = c.derivative(k);
      if (dk.is_zero()) continue;
      IndexTuple t = idx;
      t.insert(t.begin(), k);
      r.add_term(std::move(t), dk);
    }
  }
  return r;
}

/// Interior product (contraction) with a vector field.
inline PForm contract(const PForm& a, const VectorField& v) {
  if (a.nvars() != v.nvars()) throw MismatchError("contract: variable-count mismatch");
  if (a.degree() < 1) throw DomainError("contract: form has degree 0");
  PForm r(a.nvars(), a.degree() - 1);
  for (const auto& [idx, c] : a.comps()) {
    for (std::size_t slot = 0; slot < idx.size(); ++slot) {
      auto it = v.comps().find(idx[slot]);
      if (it == v.comps().end()) continue;
      MPoly coeff = c * it->second;
      if (slot % 2 != 0) coeff = -coeff;
      IndexTuple t;
      t.reserve(idx.size() - 1);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (j != slot) t.push_back(idx[j]);
      r.add_term(std::move(t), coeff);
    }
  }
  return r;
}

/// Lie bracket of vector fields: [u,v]_k = sum_m (u_m d_m v_k - v_m d_m u_k).
inline VectorField lie_bracket(const VectorField& u, const VectorField& v) {
  if (u.nvars() != v.nvars()) throw MismatchError("lie_bracket: variable-count mismatch");
  VectorField r(u.nvars());
  for (const auto& [k, vk] : v.comps()) r.add_component(k, u.apply(vk));
  for (const auto& [k, uk] : u.comps()) r.add_component(k, -v.apply(uk));
  return r;
}

/// Pullback along the linear change of coordinates x -> M x (M invertible
/// over Q).  Coefficients are substituted and each dx_i maps to the i-th row
/// of M paired with the dx_j.
inline PForm pullback_linear(const QMatrix& m, const PForm& a) {
  const int n = a.nvars();
  if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
    throw MismatchError("pullback_linear: matrix shape");
  if (m.det() == 0) throw DomainError("pullback_linear: matrix not invertible");
  std::vector<MPoly> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    MPoly p(n);
    for (int j = 0; j < n; ++j) {
      const Rational& mij = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (mij != 0) p += MPoly::variable(n, j) * mij;
    }
    images.push_back(std::move(p));
  }
  std::vector<PForm> dimages;
  dimages.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    PForm f(n, 1);
    for (int j = 0; j < n; ++j) {
      const Rational& mij = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (mij != 0) f.add_term({j}, MPoly::constant(n, mij));
    }
    dimages.push_back(std::move(f));
  }
  PForm r(n, a.degree());
  for (const auto& [idx, c] : a.comps()) {
    PForm term = PForm::scalar(c.subst(images));
    for (int k : idx) term = wedge(term, dimages[static_cast<std::size_t>(k)]);
    r += term;
  }
  return r;
}

/// Top-degree wedge coefficient of nvars vector fields: the determinant of
/// their component matrix against the volume element.
inline MPoly top_wedge_coefficient(const std::vector<VectorField>& fields) {
  if (fields.empty()) throw DomainError("top_wedge_coefficient: no fields");
  const int n = fields[0].nvars();
  if (static_cast<int>(fields.size()) != n)
    throw MismatchError("top_wedge_coefficient: need nvars fields");
  std::vector<std::vector<MPoly>> m;
  m.reserve(fields.size());
  for (const auto& f : fields) {
    if (f.nvars() != n) throw MismatchError("top_wedge_coefficient: variable mismatch");
    std::vector<MPoly> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(f.component(j));
    m.push_back(std::move(row));
  }
  return mpoly_det(m);
}

/// For n = nvars-1 fields, the coefficient of [f_i, f_j] ^ f_1 ^ ... ^ f_n
/// against the volume element, for each pair i < j in lexicographic order.
/// All zero iff the distribution is involutive where the fields are
/// independent.
inline std::vector<MPoly> involutivity_defects(const std::vector<VectorField>& fields) {
  if (fields.empty()) throw DomainError("involutivity_defects: no fields");
  const int n = fields[0].nvars();
  if (static_cast<int>(fields.size()) != n - 1)
    throw MismatchError("involutivity_defects: need nvars-1 fields");
  std::vector<MPoly> out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      std::vector<VectorField> rows;
      rows.reserve(fields.size() + 1);
      rows.push_back(lie_bracket(fields[i], fields[j]));
      for (const auto& f : fields) rows.push_back(f);
      out.push_back(top_wedge_coefficient(rows));
    }
  }
  return out;
}

} // namespace iforms
