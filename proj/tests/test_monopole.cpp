// Exact monopole identities, plus a numeric check of the projector in the spin-j
// representation x_i = 2 lp J_i, lp = 1/(2j+1).

#include <complex>
#include <vector>

#include "doctest.h"
#include "fuzzyqrg/monopole.hpp"

using namespace fuzzyqrg;
using namespace fuzzyqrg::monopole;
using cplx = std::complex<double>;

namespace {

using CMat = std::vector<std::vector<cplx>>;

CMat zeros(int n) { return CMat(n, std::vector<cplx>(n)); }

CMat mul(const CMat& a, const CMat& b) {
  const int n = static_cast<int>(a.size());
  CMat c = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::array<CMat, 3> spin(int twice_j, double& lp) {
  const int n = twice_j + 1;
  const double j = twice_j / 2.0;
  lp = 1.0 / n;
  std::array<CMat, 3> x = {zeros(n), zeros(n), zeros(n)};
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    x[2][k][k] = 2 * lp * m;
    if (k > 0) {
      const double c = lp * std::sqrt(j * (j + 1) - m * (m + 1));
      x[0][k - 1][k] += c;
      x[0][k][k - 1] += c;
      x[1][k - 1][k] += cplx(0, -c);
      x[1][k][k - 1] += cplx(0, c);
    }
  }
  return x;
}

CMat eval(const AlgElem& e, const std::array<CMat, 3>& x, double lp) {
  const int n = static_cast<int>(x[0].size());
  CMat out = zeros(n);
  for (const auto& [m, coeff] : e.terms()) {
    CMat t = zeros(n);
    for (int i = 0; i < n; ++i) t[i][i] = 1;
    for (int k = 0; k < m.a; ++k) t = mul(t, x[0]);
    for (int k = 0; k < m.b; ++k) t = mul(t, x[1]);
    for (int k = 0; k < m.c; ++k) t = mul(t, x[2]);
    const cplx c = coeff.eval(lp);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i][j] += c * t[i][j];
  }
  return out;
}

// 2x2 block matrix of n x n blocks flattened to 2n x 2n.
CMat block(const AlgMatrix& P, const std::array<CMat, 3>& x, double lp) {
  const int n = static_cast<int>(x[0].size());
  CMat out = zeros(2 * n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CMat b = eval(P(r, c), x, lp);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[r * n + i][c * n + j] = b[i][j];
    }
  return out;
}

}  // namespace

TEST_CASE("projector is idempotent, exactly and in spin representations") {
  const AlgMatrix P = projector();
  CHECK(P * P == P);
  for (int tj : {1, 2, 5}) {
    double lp = 0;
    auto x = spin(tj, lp);
    CMat B = block(P, x, lp), B2 = mul(B, B);
    double err = 0, tr = 0;
    for (std::size_t i = 0; i < B.size(); ++i) {
      tr += B[i][i].real();
      for (std::size_t j = 0; j < B.size(); ++j) err = std::max(err, std::abs(B2[i][j] - B[i][j]));
    }
    CHECK(err < 1e-12);
    // rank is an integer: the image has dimension 2j+2
    CHECK(tr == doctest::Approx(tj + 2).epsilon(1e-12));
  }
}

TEST_CASE("coordinates x and z") {
  Coords c = coords();
  const ParamScalar lp = ParamScalar::lp();
  CHECK(commutator(c.x, c.z) == lp * c.z);
  CHECK(product(star(c.z), c.z) == product(c.x, AlgElem(1) - c.x));
  CHECK(commutator(c.z, star(c.z)) == lp * AlgElem::x(3));
  CHECK(basis_relation_check());
}

TEST_CASE("Grassmann connection closed form and curvature factorisation") {
  REQUIRE_NOTHROW(grassmann_connection());
  CHECK(grassmann_connection() == grassmann_closed_form());
  CHECK(dagger(d(projector()) * projector()) == projector() * d(projector()));
  REQUIRE_NOTHROW(monopole_curvature());
  const Curvature k = monopole_curvature();
  CHECK(k.f12 == expected_f12());
  CHECK(k.f31 == expected_f31());
  const AlgElem x1 = AlgElem::x(1), lp(ParamScalar::lp());
  CHECK(k.m23 == AlgMatrix(2, 2, {x1, lp, lp, x1}));
  // curvature maps into the image of P
  CHECK(k.f23 * projector() == k.f23);
}

TEST_CASE("canonical rendering") {
  std::string s = str(grassmann_closed_form());
  CHECK(s.find("(1,1): ") == 0);
  CHECK(str(identity2()) == "(1,1): (1)\n(1,2): 0\n(2,1): 0\n(2,2): (1)\n");
}
