#include <random>

#include "doctest.h"
#include "fuzzyqrg/qrg.hpp"
#include "fuzzyqrg/verify.hpp"

using namespace fuzzyqrg;

namespace {

Rational q(long p, long r = 1) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

Mat3<Rational> sym(Rational a, Rational b, Rational c, Rational d, Rational e, Rational f) {
  return {{{a, d, e}, {d, b, f}, {e, f, c}}};
}

// Rational rotation from the (3,4,5) triple, about x3 then x1.
Mat3<Rational> rotation() {
  Mat3<Rational> r1 = {{{q(3, 5), q(-4, 5), q(0)}, {q(4, 5), q(3, 5), q(0)}, {q(0), q(0), q(1)}}};
  Mat3<Rational> r2 = {{{q(1), q(0), q(0)}, {q(0), q(5, 13), q(-12, 13)}, {q(0), q(12, 13), q(5, 13)}}};
  return matmul3(r2, r1);
}

}  // namespace

TEST_CASE("round metric: S = -3/4 and Ricci = -1/4 delta") {
  auto g = Metric3<Rational>::identity();
  auto cd = curvature(qlc(g), g);
  CHECK(cd.scalar == q(-3, 4));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cd.ricci[i][j] == (i == j ? q(-1, 4) : q(0)));
}

TEST_CASE("scalar curvature on hand-computed metrics") {
  // diag(1,1,2): Tr g^2 = 6, Tr g = 4, det = 2 -> (6 - 8)/4
  auto g1 = Metric3<Rational>::diagonal(1, 1, 2);
  CHECK(curvature(qlc(g1), g1).scalar == q(-1, 2));
  // diag 2 with g12 = 1: Tr g^2 = 14, Tr g = 6, det = 6 -> (14 - 18)/12
  Metric3<Rational> g2(sym(2, 2, 2, 1, 0, 0));
  CHECK(curvature(qlc(g2), g2).scalar == q(-1, 3));
  CHECK(scalar_from_eigenvalues(q(1), q(2), q(3)) == q(1 + 4 + 9 - 22, 24));
}

TEST_CASE("scalar curvature is rotation invariant") {
  const auto R = rotation();
  CHECK(matmul3(R, transpose3(R)) == identity3<Rational>());
  for (const auto& m : verify::random_rational_metrics(10, 5)) {
    Metric3<Rational> g(m), gr(matmul3(matmul3(R, m), transpose3(R)));
    CHECK(curvature(qlc(g), g).scalar == curvature(qlc(gr), gr).scalar);
  }
  // diagonalised form agrees with the eigenvalue formula
  Mat3<Rational> d = sym(q(1, 2), 3, q(5, 4), 0, 0, 0);
  Metric3<Rational> gd(matmul3(matmul3(R, d), transpose3(R)));
  CHECK(curvature(qlc(gd), gd).scalar == scalar_from_eigenvalues(q(1, 2), q(3), q(5, 4)));
}

TEST_CASE("QLC: torsion, cotorsion, compatibility and uniqueness") {
  for (const auto& m : verify::random_rational_metrics(20, 99)) {
    Metric3<Rational> g(m);
    auto c = qlc(g);
    CHECK(is_zero_arr(torsion(c, g)));
    CHECK(is_zero_arr(cotorsion(c, g)));
    CHECK(is_zero_arr(metric_compat_defect(c)));
    auto lin = solve_qlc_linear(g);
    CHECK(lin.kernel_trivial);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(lin.gamma[i][j] == Rational(2 * g(i, j) - (i == j ? g.trace() : Rational(0))));
    auto [full, rank] = solve_qlc_full(g);
    CHECK(rank == 27);
    CHECK(full.lowered == c.lowered);
  }
}

TEST_CASE("curvature 2-form matches the rho contraction") {
  for (const auto& m : verify::random_rational_metrics(3, 17)) {
    Metric3<Rational> g(m);
    auto c = qlc(g);
    auto cd = curvature(c, g);
    auto two = curvature_2form(c, g);
    auto viarho = curvature_from_rho(cd.rho);
    for (int i = 0; i < 3; ++i) CHECK(two[i] == viarho[i]);
  }
}

TEST_CASE("double and exact paths agree") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 20; ++t) {
    Mat3<double> m = identity3<double>();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = m[i][j] * 2 + 0.4 * u(rng);
    Metric3<double> g(m);
    CHECK(curvature(qlc(g), g).scalar == doctest::Approx(scalar_closed_form(m)).epsilon(1e-12));
  }
}

TEST_CASE("perturbation model is exact to second order") {
  Mat3<Rational> e = sym(q(1), q(-1, 2), q(1, 3), q(1, 4), q(-2, 3), q(1, 5));
  auto residual = [&](Rational t) {
    Mat3<Rational> g = identity3<Rational>(), te = e;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        te[i][j] *= t;
        g[i][j] += te[i][j];
      }
    Rational r = scalar_closed_form(g) - scalar_perturbation(te);
    return Rational(abs(r));
  };
  CHECK(residual(q(0)) == 0);
  Rational f = residual(q(1, 50)) / residual(q(1, 100));
  CHECK(f > 7);
  CHECK(f < 9);
}

TEST_CASE("invalid metrics") {
  Mat3<Rational> asym = identity3<Rational>();
  asym[0][1] = 1;
  CHECK_THROWS_WITH(Metric3<Rational>{asym}, "metric not symmetric");
  CHECK_THROWS_WITH(Metric3<Rational>(sym(1, 1, 0, 0, 0, 0)), "metric not invertible");
  Mat3<double> flat = {{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}};
  CHECK_THROWS_WITH(Metric3<double>{flat}, "metric not invertible");
}
