#include <catch2/catch_amalgamated.hpp>

#include "iforms/lie.hpp"
#include "test_support.hpp"

using namespace iforms;

namespace {

// The d-table dalpha = alpha^beta, dbeta = alpha^gamma, dgamma = beta^gamma
// back-solves (with d xi(u,v) = -xi([u,v])) to these structure constants.
LieAlgebra sl2() {
  return LieAlgebra(3, {{0, 1, {-1, 0, 0}}, {0, 2, {0, -1, 0}}, {1, 2, {0, 0, -1}}});
}

// dalpha = dbeta = 0, dgamma = alpha^beta.
LieAlgebra heisenberg() {
  return LieAlgebra(3, {{0, 1, {0, 0, -1}}});
}

LieAlgebra abelian(int dim) { return LieAlgebra(dim, {}); }

bool d_squares_to_zero(const LieAlgebra& l) {
  for (int k = 0; k < l.dim(); ++k) {
    const ConstForm dk = detail::coalgebra_d_raw(l, ConstForm::covector(l.dim(), k));
    if (!detail::coalgebra_d_raw(l, dk).is_zero()) return false;
  }
  return true;
}

} // namespace

TEST_CASE("structure constant validation", "[lie]") {
  CHECK_THROWS_AS(LieAlgebra(3, {{0, 0, {1, 0, 0}}}), DomainError);
  CHECK_THROWS_AS(LieAlgebra(3, {{0, 1, {1, 0}}}), MismatchError);
  // Full-tensor constructor rejects broken antisymmetry.
  std::vector<std::vector<std::vector<Rational>>> c(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
  c[0][1][0] = 1;
  c[1][0][0] = 1; // should be -1
  CHECK_THROWS_AS(LieAlgebra(std::move(c)), DomainError);
}

TEST_CASE("jacobi verification", "[lie]") {
  CHECK(check_jacobi(abelian(4)));
  CHECK(check_jacobi(sl2()));
  CHECK(check_jacobi(heisenberg()));
  // Perturbing one sl(2) constant breaks Jacobi.
  LieAlgebra broken(3, {{0, 1, {-1, 0, 0}}, {0, 2, {0, -1, 1}}, {1, 2, {0, 0, -1}}});
  CHECK_FALSE(check_jacobi(broken));
}

TEST_CASE("coalgebra differential reproduces the sl(2) table", "[lie]") {
  const LieAlgebra l = sl2();
  const ConstForm a = ConstForm::covector(3, 0);
  const ConstForm b = ConstForm::covector(3, 1);
  const ConstForm g = ConstForm::covector(3, 2);
  CHECK(coalgebra_d(l, a) == wedge(a, b));
  CHECK(coalgebra_d(l, b) == wedge(a, g));
  CHECK(coalgebra_d(l, g) == wedge(b, g));
}

TEST_CASE("coalgebra differential on the abelian algebra vanishes", "[lie]") {
  const LieAlgebra l = abelian(3);
  for (int k = 0; k < 3; ++k)
    CHECK(coalgebra_d(l, ConstForm::covector(3, k)).is_zero());
}

TEST_CASE("heisenberg differential", "[lie]") {
  const LieAlgebra l = heisenberg();
  const ConstForm a = ConstForm::covector(3, 0);
  const ConstForm b = ConstForm::covector(3, 1);
  const ConstForm g = ConstForm::covector(3, 2);
  const ConstForm dg = coalgebra_d(l, g);
  CHECK(dg == wedge(a, b));
  CHECK_FALSE(wedge(dg, g).is_zero()); // gamma is not integrable
  CHECK(coalgebra_d(l, dg).is_zero());
}

TEST_CASE("differential is an antiderivation and squares to zero", "[lie][property]") {
  const LieAlgebra l = sl2();
  // Graded Leibniz on wedge products of covectors.
  const ConstForm a = ConstForm::covector(3, 0);
  const ConstForm b = ConstForm::covector(3, 1);
  const ConstForm g = ConstForm::covector(3, 2);
  for (const auto& [u, v] : {std::pair{a, b}, {a, g}, {b, g}}) {
    CHECK(coalgebra_d(l, wedge(u, v)) ==
          wedge(coalgebra_d(l, u), v) - wedge(u, coalgebra_d(l, v)));
  }
  for (int k = 0; k < 3; ++k)
    CHECK(coalgebra_d(l, coalgebra_d(l, ConstForm::covector(3, k))).is_zero());
}

TEST_CASE("jacobi holds iff d squares to zero", "[lie][property]") {
  ts::Rng rng(127);
  int agreements = 0;
  for (int it = 0; it < 60; ++it) {
    // Random antisymmetric constants, mostly non-Jacobi, sometimes Jacobi.
    const int dim = 3;
    std::vector<std::vector<std::vector<Rational>>> c(
        dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
    std::uniform_int_distribution<int> small(-2, 2);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
              small(rng);
          c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              -c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        }
    const LieAlgebra l(std::move(c));
    CHECK(check_jacobi(l) == d_squares_to_zero(l));
    ++agreements;
  }
  CHECK(agreements == 60);
  CHECK_THROWS_AS(coalgebra_d(LieAlgebra(3, {{0, 1, {-1, 0, 0}}, {0, 2, {0, -1, 1}},
                                             {1, 2, {0, 0, -1}}}),
                              ConstForm::covector(3, 0)),
                  PreconditionError);
}

TEST_CASE("lie_iw refuses non-Jacobi constants", "[lie]") {
  LieAlgebra broken(3, {{0, 1, {-1, 0, 0}}, {0, 2, {0, -1, 1}}, {1, 2, {0, 0, -1}}});
  CHECK_THROWS_AS(lie_iw(broken), PreconditionError);
}

TEST_CASE("integrability variety of sl(2) is the conic 2xz - y^2", "[lie]") {
  const QuadricSystem q = lie_iw(sl2());
  REQUIRE(q.size() == 1);
  REQUIRE(q.dimension() == 3);
  QMatrix expected(3, 3);
  expected(0, 2) = 1;
  expected(2, 0) = 1;
  expected(1, 1) = -1;
  CHECK(q.entries()[0].matrix == expected);
  CHECK(q.entries()[0].label.monomial.empty());
}

TEST_CASE("integrability variety of the abelian algebra is everything", "[lie]") {
  CHECK(lie_iw(abelian(4)).size() == 0);
}

TEST_CASE("integrability variety of heisenberg is z^2", "[lie]") {
  const QuadricSystem q = lie_iw(heisenberg());
  REQUIRE(q.size() == 1);
  QMatrix expected(3, 3);
  expected(2, 2) = 1;
  CHECK(q.entries()[0].matrix == expected);
}

TEST_CASE("quadric evaluation matches the direct check", "[lie][property]") {
  for (const LieAlgebra& l : {sl2(), heisenberg()}) {
    const QuadricSystem q = lie_iw(l);
    ts::Rng rng(131);
    for (int it = 0; it < 200; ++it) {
      std::vector<Rational> lambda;
      for (int i = 0; i < l.dim(); ++i) lambda.push_back(ts::rand_rational(rng));
      bool zero = true;
      for (const auto& v : eval_quadrics(q, lambda)) zero = zero && v == 0;
      CHECK(zero == lie_integrable(l, lambda));
    }
  }
}

TEST_CASE("integrable classes have subalgebra kernels", "[lie]") {
  const LieAlgebra l = sl2();
  for (const auto& lambda : {std::vector<Rational>{1, 0, 0}, {0, 0, 1}, {1, 2, 2},
                             {4, 4, 2}, {9, 6, 2}}) {
    REQUIRE(lie_integrable(l, lambda));
    CHECK(kernel_is_subalgebra(l, lambda));
  }
  const LieAlgebra h = heisenberg();
  for (const auto& lambda : {std::vector<Rational>{1, 0, 0}, {0, 1, 0}, {3, -2, 0}}) {
    REQUIRE(lie_integrable(h, lambda));
    CHECK(kernel_is_subalgebra(h, lambda));
  }
}
