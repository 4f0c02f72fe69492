#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "iforms/steiner.hpp"
#include "test_support.hpp"

using namespace iforms;

namespace {

PForm dx(int nvars, int i) { return PForm::d_coordinate(nvars, i); }

MPoly family_coefficient(int nvars, int j) {
  MPoly f = MPoly::constant(nvars, j + 1);
  for (int i = 0; i < nvars; ++i) f += MPoly::variable(nvars, i) * Rational(j);
  return f;
}

std::vector<PForm> family_basis(int n) {
  std::vector<PForm> basis;
  for (int j = 0; j <= n; ++j)
    basis.push_back(dx(n + 1, j) * family_coefficient(n + 1, j));
  return basis;
}

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  bool az = true;
  for (const auto& x : a) az = az && x == 0;
  return !az;
}

PointConfig conic_points() {
  return PointConfig({{1, 0, 0}, {0, 0, 1}, {1, 1, 1}, {1, 2, 4}, {1, 3, 9}});
}

/// For i < n, p_i lies on exactly one member of pencil i; return that
/// parameter.
std::pair<Rational, Rational> parameter_hitting(const PencilPair& pencil,
                                                const std::vector<Rational>& p) {
  const Rational fs = eval_linear(pencil.f, p);
  const Rational gs = eval_linear(pencil.g, p);
  REQUIRE((fs != 0 || gs != 0));
  // s*F(p) + t*G(p) = 0
  return {gs, -fs};
}

/// Count of distinct projective parameters mapping onto p: the gcd degree of
/// the 2x2 minors of (curve, p).
int preimage_count(const CurveParam& c, const std::vector<Rational>& p) {
  BiForm g(0);
  bool have = false;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      BiForm minor = c.components()[i] * p[j] - c.components()[j] * p[i];
      if (minor.is_zero()) continue;
      g = have ? biform_gcd(g, minor) : minor;
      have = true;
    }
  REQUIRE(have); // p is a single point, the curve is nondegenerate
  return g.degree();
}

} // namespace

TEST_CASE("point configuration validation", "[points]") {
  CHECK_NOTHROW(conic_points());
  // Wrong count.
  CHECK_THROWS_AS(PointConfig({{1, 0, 0}, {0, 1, 0}}), MismatchError);
  // Degenerate: three collinear points in P^2.
  CHECK_THROWS_AS(
      PointConfig({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      PreconditionError);
  // Zero vector.
  CHECK_THROWS_AS(
      PointConfig({{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      DomainError);
}

TEST_CASE("pencil normalization conditions", "[pencil]") {
  const PointConfig p = conic_points();
  const int n = p.n();
  for (int i = 0; i < n; ++i) {
    const PencilPair pencil = pencil_for_index(p, i);
    // Both forms vanish on the spanning points of Pi_i.
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      CHECK(eval_linear(pencil.f, p.point(static_cast<std::size_t>(k))) == 0);
      CHECK(eval_linear(pencil.g, p.point(static_cast<std::size_t>(k))) == 0);
    }
    CHECK(eval_linear(pencil.g, p.point(static_cast<std::size_t>(n))) == 0);
    CHECK(eval_linear(pencil.f, p.point(static_cast<std::size_t>(n) + 1)) == 0);
    CHECK(eval_linear(pencil.f, p.point(static_cast<std::size_t>(n) + 2)) +
              eval_linear(pencil.g, p.point(static_cast<std::size_t>(n) + 2)) ==
          0);
  }
  CHECK_THROWS_AS(pencil_for_index(p, n), DomainError);
}

TEST_CASE("pencil structure for a coordinate-simplex configuration", "[pencil]") {
  // p_0..p_n = e_0..e_n plus two generic points: every pencil form is
  // supported on coordinates {i, n} only.
  const int n = 3;
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i <= n; ++i) {
    std::vector<Rational> e(static_cast<std::size_t>(n) + 1, Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    pts.push_back(std::move(e));
  }
  pts.push_back({1, 1, 1, 1});
  pts.push_back({1, 2, 4, 8});
  const PointConfig p(pts);
  for (int i = 0; i < n; ++i) {
    const PencilPair pencil = pencil_for_index(p, i);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      CHECK(pencil.f[static_cast<std::size_t>(k)] == 0);
      CHECK(pencil.g[static_cast<std::size_t>(k)] == 0);
    }
  }
}

TEST_CASE("steiner conic through five points on y^2 = xz", "[steiner]") {
  const PointConfig p = conic_points();
  const CurveParam c = steiner_rnc(p);
  CHECK(c.degree() == 2);
  // The image satisfies y^2 - xz = 0 identically.
  const BiForm defect =
      c.components()[1] * c.components()[1] - c.components()[0] * c.components()[2];
  CHECK(defect.is_zero());
  // Normalization parameters map to p_n, p_{n+1}, p_{n+2}.
  CHECK(proportional(c.eval(0, 1), p.point(2)));
  CHECK(proportional(c.eval(1, 0), p.point(3)));
  CHECK(proportional(c.eval(1, 1), p.point(4)));
  // For i < n there is exactly one parameter hitting p_i.
  for (int i = 0; i < p.n(); ++i) {
    const auto [s, t] = parameter_hitting(pencil_for_index(p, i),
                                          p.point(static_cast<std::size_t>(i)));
    CHECK(proportional(c.eval(s, t), p.point(static_cast<std::size_t>(i))));
    CHECK(preimage_count(c, p.point(static_cast<std::size_t>(i))) == 1);
  }
  const auto v = curve_is_rnc(c);
  CHECK(v.is_rnc);
  CHECK(v.degree == p.n());
}

TEST_CASE("random general-position configurations", "[steiner][property]") {
  ts::Rng rng(107);
  int built = 0;
  while (built < 30) {
    std::uniform_int_distribution<int> ndist(2, 5);
    const int n = ndist(rng);
    std::vector<std::vector<Rational>> pts;
    for (int i = 0; i < n + 3; ++i) pts.push_back(ts::rand_point(rng, static_cast<std::size_t>(n) + 1));
    if (!general_position(pts)) continue;
    ++built;
    const PointConfig p(pts);
    const CurveParam c = steiner_rnc(p);
    const auto v = curve_is_rnc(c);
    CHECK(v.degree == n);
    CHECK(v.is_rnc);
    // Passes through every configuration point.
    CHECK(proportional(c.eval(0, 1), p.point(static_cast<std::size_t>(n))));
    CHECK(proportional(c.eval(1, 0), p.point(static_cast<std::size_t>(n) + 1)));
    CHECK(proportional(c.eval(1, 1), p.point(static_cast<std::size_t>(n) + 2)));
    for (int i = 0; i < n; ++i) {
      const auto [s, t] = parameter_hitting(pencil_for_index(p, i),
                                            p.point(static_cast<std::size_t>(i)));
      CHECK(proportional(c.eval(s, t), p.point(static_cast<std::size_t>(i))));
    }
  }
}

TEST_CASE("permuting the pencil points leaves the curve unchanged", "[steiner][property]") {
  ts::Rng rng(109);
  const PointConfig base = conic_points();
  const CurveParam c0 = steiner_rnc(base);
  const auto v0 = curve_is_rnc(c0);
  std::vector<std::size_t> perm{0, 1};
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<std::vector<Rational>> pts;
    for (std::size_t i : perm) pts.push_back(base.point(i));
    for (std::size_t i = 2; i < base.size(); ++i) pts.push_back(base.point(i));
    const CurveParam c1 = steiner_rnc(PointConfig(pts));
    const auto v1 = curve_is_rnc(c1);
    CHECK(v1.degree == v0.degree);
    CHECK(v1.span_dim == v0.span_dim);
    // Same image: both parameterizations pass through all five points ...
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(preimage_count(c1, base.point(i)) >= 1);
    // ... and the permuted curve still satisfies the conic equation.
    const BiForm defect =
        c1.components()[1] * c1.components()[1] - c1.components()[0] * c1.components()[2];
    CHECK(defect.is_zero());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("veronese web verification on the degree-n family", "[veronese]") {
  const int n = 2, nv = n + 1;
  FormSpace w(family_basis(n));
  PForm wsum(nv, 1), wharm(nv, 1);
  for (int i = 0; i <= n; ++i) {
    wsum += w.basis()[i];
    wharm += w.basis()[i] * Rational(1, i + 2);
  }
  std::vector<PForm> members = w.basis();
  members.push_back(wsum);
  members.push_back(wharm);
  const auto res = verify_veronese_web(w, members);
  CHECK(res.contained);
  const auto v = curve_is_rnc(res.curve);
  CHECK(v.degree == n);
  CHECK(v.is_rnc);

  // Independent route: sample 2*deg+1 points of the curve and check each is
  // integrable (a biform of degree 2d vanishing at 2d+1 points is zero).
  for (int k = 0; k <= 2 * res.curve.degree(); ++k) {
    const auto lambda = res.curve.eval(1, k);
    CHECK(is_integrable(w.combine(lambda)));
  }
  CHECK(is_integrable(w.combine(res.curve.eval(0, 1))));
}

TEST_CASE("veronese web is invariant under linear coordinate changes", "[veronese][property]") {
  const int n = 2, nv = n + 1;
  ts::Rng rng(113);
  for (int it = 0; it < 5; ++it) {
    const QMatrix m = ts::rand_invertible(rng, nv);
    std::vector<PForm> basis;
    for (const auto& f : family_basis(n)) basis.push_back(pullback_linear(m, f));
    FormSpace w(basis);
    PForm wsum(nv, 1), wharm(nv, 1);
    for (int i = 0; i <= n; ++i) {
      wsum += basis[static_cast<std::size_t>(i)];
      wharm += basis[static_cast<std::size_t>(i)] * Rational(1, i + 2);
    }
    std::vector<PForm> members = basis;
    members.push_back(wsum);
    members.push_back(wharm);
    const auto res = verify_veronese_web(w, members);
    CHECK(res.contained);
    CHECK(curve_is_rnc(res.curve).degree == n);
  }
}

TEST_CASE("veronese web precondition reporting", "[veronese]") {
  const int nv = 3;
  // Rank-deficient space: dim 3, rank 2.
  FormSpace deficient({dx(2, 0), dx(2, 1), dx(2, 1) * MPoly::variable(2, 0)});
  std::vector<PForm> members = deficient.basis();
  members.push_back(deficient.basis()[0] + deficient.basis()[1]);
  members.push_back(deficient.basis()[0] + deficient.basis()[2]);
  try {
    verify_veronese_web(deficient, members);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    bool mentions_rank = false;
    for (const auto& v : e.violations) mentions_rank |= v.find("rank") != std::string::npos;
    CHECK(mentions_rank);
  }

  // Non-integrable member.
  FormSpace w(family_basis(2));
  std::vector<PForm> bad = w.basis();
  PForm wbad(nv, 1);
  for (int i = 0; i <= 2; ++i) wbad += w.basis()[static_cast<std::size_t>(i)] * Rational(i + 1);
  bad.push_back(wbad);
  PForm wsum(nv, 1);
  for (int i = 0; i <= 2; ++i) wsum += w.basis()[static_cast<std::size_t>(i)];
  bad.push_back(wsum);
  try {
    verify_veronese_web(w, bad);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    bool mentions = false;
    for (const auto& v : e.violations) mentions |= v.find("not integrable") != std::string::npos;
    CHECK(mentions);
  }

  // General-position failure: a repeated class.
  std::vector<PForm> repeated = w.basis();
  repeated.push_back(w.basis()[0]);
  repeated.push_back(w.basis()[0] * Rational(2));
  try {
    verify_veronese_web(w, repeated);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    bool mentions = false;
    for (const auto& v : e.violations)
      mentions |= v.find("general position") != std::string::npos;
    CHECK(mentions);
  }

  // Wrong count is an argument error, not a precondition report.
  CHECK_THROWS_AS(verify_veronese_web(w, w.basis()), MismatchError);
}

TEST_CASE("veronese web for a pencil of closed forms", "[veronese]") {
  // dim W = 2: every member of span{dx0, dx1} in C^2 is integrable, so any
  // four distinct classes admit their (degree-1) curve inside I_W.
  FormSpace w({dx(2, 0), dx(2, 1)});
  std::vector<PForm> members{dx(2, 0), dx(2, 1), dx(2, 0) + dx(2, 1),
                             dx(2, 0) + dx(2, 1) * Rational(2)};
  const auto res = verify_veronese_web(w, members);
  CHECK(res.contained);
  CHECK(res.curve.degree() == 1);
}
