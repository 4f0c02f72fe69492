#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "iforms/error.hpp"
#include "iforms/rational.hpp"

namespace iforms {

/// Dense matrix over the rationals.  Everything here is exact Gaussian
/// elimination; the matrices in this toolkit stay small (a handful of rows).
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return QMatrix();
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw MismatchError("from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::vector<Rational> row(std::size_t i) const {
    return std::vector<Rational>(a_.begin() + static_cast<long>(i * cols_),
                                 a_.begin() + static_cast<long>((i + 1) * cols_));
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw MismatchError("matrix product: shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
      }
    return r;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw MismatchError("matrix apply: size mismatch");
    std::vector<Rational> r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  QMatrix scaled(const Rational& c) const {
    QMatrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  std::size_t rank() const {
    QMatrix m = *this;
    return m.echelonize().pivots.size();
  }

  Rational det() const {
    if (rows_ != cols_) throw MismatchError("det: matrix not square");
    QMatrix m = *this;
    auto e = m.echelonize();
    if (e.pivots.size() < rows_) return 0;
    Rational d = e.sign;
    for (std::size_t i = 0; i < rows_; ++i) d *= m(i, e.pivots[i]);
    return d;
  }

  /// Basis of the right null space { v : A v = 0 }.
  std::vector<std::vector<Rational>> kernel_basis() const {
    QMatrix m = *this;
    auto e = m.echelonize();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    m.back_substitute(e);
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rational> v(cols_, Rational(0));
      v[free] = 1;
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        v[e.pivots[r]] = -m(r, free) / m(r, e.pivots[r]);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Solve A x = b exactly.  Returns a solution with free variables set to
  /// zero, or nullopt when the system is inconsistent.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
    if (b.size() != rows_) throw MismatchError("solve: rhs size mismatch");
    QMatrix m(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      m(i, cols_) = b[i];
    }
    auto e = m.echelonize(cols_);
    // Inconsistent iff some row is (0 ... 0 | nonzero).
    for (std::size_t i = e.pivots.size(); i < rows_; ++i)
      if (m(i, cols_) != 0) return std::nullopt;
    m.back_substitute(e);
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      x[e.pivots[r]] = m(r, cols_) / m(r, e.pivots[r]);
    return x;
  }

  std::optional<QMatrix> inverse() const {
    if (rows_ != cols_) throw MismatchError("inverse: matrix not square");
    QMatrix m(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      m(i, cols_ + i) = 1;
    }
    auto e = m.echelonize(cols_);
    if (e.pivots.size() < rows_) return std::nullopt;
    m.back_substitute(e);
    QMatrix inv(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational p = m(r, e.pivots[r]);
      for (std::size_t j = 0; j < cols_; ++j) inv(e.pivots[r], j) = m(r, cols_ + j) / p;
    }
    return inv;
  }

 private:
  struct Echelon {
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    int sign = 1;                    // parity of the row swaps
  };

  // Row-echelon form in place over the first `limit` columns.
  Echelon echelonize(std::size_t limit = static_cast<std::size_t>(-1)) {
    if (limit > cols_) limit = cols_;
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r) {
        swap_rows(p, r);
        e.sign = -e.sign;
      }
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if ((*this)(i, c) == 0) continue;
        const Rational f = (*this)(i, c) / (*this)(r, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      e.pivots.push_back(c);
      ++r;
    }
    return e;
  }

  // Clear entries above the pivots (echelonize must have run first).
  void back_substitute(const Echelon& e) {
    for (std::size_t r = e.pivots.size(); r-- > 0;) {
      const std::size_t c = e.pivots[r];
      for (std::size_t i = 0; i < r; ++i) {
        if ((*this)(i, c) == 0) continue;
        const Rational f = (*this)(i, c) / (*this)(r, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

} // namespace iforms
