#pragma once

#include <string>
#include <vector>

#include "iforms/biform.hpp"
#include "iforms/error.hpp"
#include "iforms/formspace.hpp"
#include "iforms/qmatrix.hpp"

namespace iforms {

namespace detail {

inline bool projectively_equal(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  // Rule out the zero/zero degenerate match.
  bool az = true, bz = true;
  for (const auto& x : a) az = az && x == 0;
  for (const auto& x : b) bz = bz && x == 0;
  return !az && !bz;
}

inline BiForm biform_det(const std::vector<std::vector<BiForm>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("biform_det: empty matrix");
  if (n > 20) throw DomainError("biform_det: matrix too large");
  const int entry_deg = m[0][0].degree();
  std::vector<BiForm> table(1ul << n, BiForm(0));
  table[0] = BiForm::from_coeffs({Rational(1)});
  for (unsigned long s = 1; s < (1ul << n); ++s) {
    const int k = __builtin_popcountl(s);
    BiForm acc(k * entry_deg);
    int pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(s >> c & 1)) continue;
      const BiForm& e = m[static_cast<std::size_t>(k - 1)][c];
      if (!e.is_zero()) {
        BiForm t = e * table[s & ~(1ul << c)];
        if ((k - 1 + pos) % 2 != 0) t = -t;
        acc += t;
      }
      ++pos;
    }
    table[s] = std::move(acc);
  }
  return table[(1ul << n) - 1];
}

} // namespace detail

/// n+3 points of P^n in general position, stored as primitive-normalized
/// coordinate vectors of length n+1.
class PointConfig {
 public:
  explicit PointConfig(std::vector<std::vector<Rational>> points) {
    if (points.empty()) throw DomainError("PointConfig: no points");
    const std::size_t len = points.front().size();
    if (len < 2) throw DomainError("PointConfig: points need at least 2 coordinates");
    n_ = static_cast<int>(len) - 1;
    if (points.size() != len + 2)
      throw MismatchError("PointConfig: need exactly n+3 points in P^n");
    for (auto& p : points) {
      if (p.size() != len) throw MismatchError("PointConfig: mixed coordinate lengths");
      p = primitive_normalize(std::move(p));
    }
    if (!general_position(points))
      throw PreconditionError("PointConfig: points are not in general position");
    pts_ = std::move(points);
  }

  int n() const { return n_; }
  std::size_t size() const { return pts_.size(); }
  const std::vector<std::vector<Rational>>& points() const { return pts_; }
  const std::vector<Rational>& point(std::size_t i) const { return pts_.at(i); }

 private:
  int n_ = 0;
  std::vector<std::vector<Rational>> pts_;
};

/// The pencil of hyperplanes s F + t G = 0 through one of the spans
/// Pi_i = span({p_0, ..., p_{n-1}} minus p_i).
struct PencilPair {
  std::vector<Rational> f, g; // linear forms of length n+1
};

inline Rational eval_linear(const std::vector<Rational>& form, const std::vector<Rational>& p) {
  if (form.size() != p.size()) throw MismatchError("eval_linear: size mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < form.size(); ++i) r += form[i] * p[i];
  return r;
}

/// Pencil through Pi_i, normalized so that p_n lies on (0:1), p_{n+1} on
/// (1:0) and p_{n+2} on (1:1) (0-based point indices; drop index i in
/// 0..n-1).
inline PencilPair pencil_for_index(const PointConfig& p, int i) {
  const int n = p.n();
  if (i < 0 || i >= n) throw DomainError("pencil_for_index: index out of range");
  // Linear forms vanishing on the n-1 spanning points: kernel of their matrix.
  QMatrix m(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n) + 1);
  std::size_t row = 0;
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j)
      m(row, j) = p.point(static_cast<std::size_t>(k))[j];
    ++row;
  }
  auto kernel = m.kernel_basis();
  if (kernel.size() != 2)
    throw PreconditionError("pencil_for_index: degenerate kernel dimension (general position failure)");
  const auto& u = kernel[0];
  const auto& w = kernel[1];
  const auto& q1 = p.point(static_cast<std::size_t>(n));     // goes to (0:1)
  const auto& q2 = p.point(static_cast<std::size_t>(n) + 1); // goes to (1:0)
  const auto& q3 = p.point(static_cast<std::size_t>(n) + 2); // goes to (1:1)
  auto combine = [&](const Rational& a, const Rational& b) {
    std::vector<Rational> r(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) r[j] = a * u[j] + b * w[j];
    return r;
  };
  // F vanishes at q2, G vanishes at q1.
  std::vector<Rational> f = combine(eval_linear(w, q2), -eval_linear(u, q2));
  std::vector<Rational> g = combine(eval_linear(w, q1), -eval_linear(u, q1));
  const Rational fq3 = eval_linear(f, q3);
  const Rational gq3 = eval_linear(g, q3);
  if (fq3 == 0 || gq3 == 0)
    throw PreconditionError("pencil_for_index: normalization point on a pencil member "
                            "(general position failure)");
  // Scale so that F(q3) + G(q3) = 0, then normalize (F, G) jointly.
  const Rational c = -fq3 / gq3;
  for (auto& x : g) x *= c;
  std::vector<Rational> both = f;
  both.insert(both.end(), g.begin(), g.end());
  both = primitive_normalize(std::move(both));
  PencilPair out;
  out.f.assign(both.begin(), both.begin() + static_cast<long>(f.size()));
  out.g.assign(both.begin() + static_cast<long>(f.size()), both.end());
  return out;
}

/// Steiner's construction: the unique rational normal curve through the n+3
/// points, parameterized by the signed maximal minors of the pencil matrix
/// [s F_i + t G_i].
inline CurveParam steiner_rnc(const PointConfig& p) {
  const int n = p.n();
  std::vector<PencilPair> pencils;
  pencils.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pencils.push_back(pencil_for_index(p, i));
  std::vector<BiForm> comps;
  comps.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<std::vector<BiForm>> minor;
    minor.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::vector<BiForm> mrow;
      mrow.reserve(static_cast<std::size_t>(n));
      for (int col = 0; col <= n; ++col) {
        if (col == j) continue;
        mrow.push_back(BiForm::from_coeffs({pencils[static_cast<std::size_t>(i)].f[static_cast<std::size_t>(col)],
                                            pencils[static_cast<std::size_t>(i)].g[static_cast<std::size_t>(col)]}));
      }
      minor.push_back(std::move(mrow));
    }
    BiForm d = n == 0 ? BiForm::from_coeffs({Rational(1)}) : detail::biform_det(minor);
    if (j % 2 != 0) d = -d;
    comps.push_back(std::move(d));
  }
  CurveParam curve(std::move(comps));
  // The three normalization parameters must land on their points.
  const struct {
    Rational s, t;
    std::size_t idx;
  } checks[] = {{0, 1, static_cast<std::size_t>(n)},
                {1, 0, static_cast<std::size_t>(n) + 1},
                {1, 1, static_cast<std::size_t>(n) + 2}};
  for (const auto& ck : checks) {
    if (!detail::projectively_equal(curve.eval(ck.s, ck.t), p.point(ck.idx)))
      throw DomainError("steiner_rnc: normalization parameter missed its point");
  }
  return curve;
}

/// Polynomial frames v~_j with w_i(v~_j) = det(A) * delta_ij, built from the
/// adjugate of the basis coefficient matrix A_ij = (coefficient of dx_j in
/// w_i).  Requires dim W = nvars.
inline std::vector<VectorField> adjugate_frames(const FormSpace& w) {
  const int n = w.nvars();
  if (w.dim() != static_cast<std::size_t>(n))
    throw MismatchError("adjugate_frames: require dim W = nvars");
  std::vector<std::vector<MPoly>> a(w.dim(), std::vector<MPoly>(w.dim(), MPoly(n)));
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (int j = 0; j < n; ++j) {
      const MPoly* c = w.basis()[i].component({j});
      if (c) a[i][static_cast<std::size_t>(j)] = *c;
    }
  auto adj = mpoly_adjugate(a);
  std::vector<VectorField> frames;
  frames.reserve(w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) {
    VectorField v(n);
    for (std::size_t k = 0; k < w.dim(); ++k) v.set_component(static_cast<int>(k), adj[k][j]);
    frames.push_back(std::move(v));
  }
  return frames;
}

struct VeroneseWebResult {
  CurveParam curve;
  bool contained = false;
};

/// Given dim W + 2 integrable members of W in general position, build the
/// unique rational normal curve through their classes and test containment
/// in I_W.  All preconditions are checked eagerly and reported individually.
inline VeroneseWebResult verify_veronese_web(const FormSpace& w, const std::vector<PForm>& forms) {
  if (forms.size() != w.dim() + 2)
    throw MismatchError("verify_veronese_web: need dim W + 2 forms");
  std::vector<std::string> violations;
  if (rank(w) != static_cast<int>(w.dim()))
    violations.push_back("rank(W) < dim W (rank deficiency)");
  std::vector<std::vector<Rational>> coords;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (!is_integrable(forms[k]))
      violations.push_back("form " + std::to_string(k) + " is not integrable");
    auto c = coordinates_in_basis(w, forms[k]);
    if (!c) {
      violations.push_back("form " + std::to_string(k) + " does not lie in W");
      continue;
    }
    bool zero = true;
    for (const auto& x : *c) zero = zero && x == 0;
    if (zero) {
      violations.push_back("form " + std::to_string(k) + " is zero");
      continue;
    }
    coords.push_back(primitive_normalize(std::move(*c)));
  }
  if (coords.size() == forms.size() && !general_position(coords))
    violations.push_back("classes of the forms are not in general position in P(W)");
  if (!violations.empty()) throw PreconditionError(std::move(violations));
  PointConfig config(std::move(coords));
  VeroneseWebResult out{steiner_rnc(config), false};
  out.contained = curve_in_iw(w, out.curve);
  return out;
}

} // namespace iforms
