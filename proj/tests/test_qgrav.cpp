#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "fuzzyqrg/qgrav.hpp"
#include "fuzzyqrg/qgrav_kernels.hpp"

using namespace fuzzyqrg;
using namespace fuzzyqrg::qgrav;

namespace {

struct ThreadCap {
  explicit ThreadCap(const char* v) { setenv("FUZZYQRG_THREADS", v, 1); }
  ~ThreadCap() { unsetenv("FUZZYQRG_THREADS"); }
};

// Plain composite Simpson over the cube, no eigenvalue ordering or change of variables.
std::vector<double> brute_moments(double eps, double L, double G, int n, const std::vector<MomentSpec>& specs) {
  const double h = (L - eps) / n;
  auto wt = [](int k, int n) { return (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0); };
  double z = 0;
  std::vector<double> num(specs.size(), 0.0);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c) {
        const double l[3] = {eps + a * h, eps + b * h, eps + c * h};
        const double w = wt(a, n) * wt(b, n) * wt(c, n) * eigen_weight(l[0], l[1], l[2], G);
        z += w;
        for (std::size_t k = 0; k < specs.size(); ++k) {
          double f = 1;
          for (int i : specs[k]) f *= l[i - 1];
          num[k] += w * f;
        }
      }
  for (auto& v : num) v /= z;
  return num;
}

}  // namespace

TEST_CASE("eigenvalue weight on hand-computed points") {
  // Vandermonde 2, product 6, Q = 14 - 22 = -8
  CHECK(eigen_weight(1, 2, 3, INFINITY) == doctest::Approx(1.0 / 18).epsilon(1e-15));
  CHECK(eigen_weight(1, 2, 3, 1.0) == doctest::Approx(std::exp(4.0) / 18).epsilon(1e-14));
  CHECK(eigen_weight(2, 2, 3, 1.0) == 0.0);
  CHECK(eigen_weight(3, 1, 2, 0.7) == doctest::Approx(eigen_weight(1, 2, 3, 0.7)).epsilon(1e-15));
}

TEST_CASE("uvw coordinates") {
  auto p = uvw_map(1.0, 2.0, 3.0);
  CHECK(p.u == 2.0);
  CHECK(p.v == 0.5);
  CHECK(p.w == 0.5);
  CHECK(uvw_quadratic_form(p) == eigen_quadratic_form(1.0, 2.0, 3.0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> k(-20, 20), den(1, 7);
  for (int t = 0; t < 50; ++t) {
    Rational l[3];
    for (auto& x : l) {
      x = Rational(k(rng), den(rng));
      x.canonicalize();
    }
    auto q = uvw_map(l[0], l[1], l[2]);
    auto back = uvw_inverse(q);
    CHECK(back[0] == l[0]);
    CHECK(back[1] == l[1]);
    CHECK(back[2] == l[2]);
    CHECK(uvw_quadratic_form(q) == eigen_quadratic_form(l[0], l[1], l[2]));
  }
}

TEST_CASE("matrix action equals the closed-form scalar curvature") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 20; ++t) {
    Mat3<double> g = identity3<double>();
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = 2 * g[i][j] + 0.5 * u(rng);
    CHECK(action_matrix(g) == doctest::Approx(scalar_closed_form(g)).epsilon(1e-12));
  }
}

TEST_CASE("fluctuation integrand is the eigenvalue weight in uvw coordinates") {
  const double G = 0.8;
  for (double u : {0.7, 1.3})
    for (double v : {-0.1, 0.05, 0.2})
      for (double w : {0.01, 0.3}) {
        auto l = uvw_inverse(Uvw<double>{u, v, w});
        const double expect = 2 * eigen_weight(l[0], l[1], l[2], G) * std::exp(-3 * u * u / (2 * G));
        CHECK(partial_integrand(u, v, w, G) == doctest::Approx(expect).epsilon(1e-12));
      }
}

TEST_CASE("quadrature rules integrate polynomials and graded singularities") {
  using namespace kernels;
  auto integrate = [](const GaussRule& r, auto f) {
    double s = 0;
    for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * f(r.x[k]);
    return s;
  };
  auto c = composite_rule(-1, 2, 3);
  CHECK(integrate(c, [](double x) { return std::pow(x, 9); }) == doctest::Approx((1024.0 - 1) / 10).epsilon(1e-13));
  auto g = graded_unit_rule(8);
  CHECK(integrate(g, [](double x) { return std::exp(x); }) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-13));
  // 1/(pole - x)^2 on [0, 1] with the pole at 1 + 1e-6
  auto lg = log_graded_rule(0, 1, 1 + 1e-6, 16);
  const double exact = 1 / 1e-6 - 1 / (1 + 1e-6);
  CHECK(integrate(lg, [](double x) { return 1 / ((1 + 1e-6 - x) * (1 + 1e-6 - x)); }) ==
        doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("moments agree with a brute-force cube integral") {
  QGConfig cfg;
  cfg.eps = 0.5;
  cfg.L = 2.0;
  cfg.G = 1.0;
  cfg.resolution = 32;
  std::vector<MomentSpec> specs = {{1}, {1, 2}, {1, 1}, {1, 2, 3}};
  auto est = moments(cfg, specs);
  auto ref = brute_moments(cfg.eps, cfg.L, cfg.G, 160, specs);
  for (std::size_t k = 0; k < specs.size(); ++k) CHECK(est[k].value == doctest::Approx(ref[k]).epsilon(2e-4));
}

TEST_CASE("moments are permutation symmetric") {
  QGConfig cfg;
  cfg.eps = 0.1;
  cfg.L = 3;
  cfg.resolution = 32;
  auto e = moments(cfg, {{1}, {2}, {3}, {1, 2}, {3, 1}, {2, 2}, {3, 3}});
  CHECK(e[1].value == doctest::Approx(e[0].value).epsilon(1e-14));
  CHECK(e[2].value == doctest::Approx(e[0].value).epsilon(1e-14));
  CHECK(e[4].value == doctest::Approx(e[3].value).epsilon(1e-14));
  CHECK(e[6].value == doctest::Approx(e[5].value).epsilon(1e-14));
}

TEST_CASE("scale invariance: (G, eps, L) -> (s^2 G, s eps, s L) scales moments by s^n") {
  QGConfig a;
  a.eps = 0.1;
  a.L = 3;
  a.G = 1;
  a.resolution = 32;
  QGConfig b = a;
  const double s = 2.5;
  b.eps *= s;
  b.L *= s;
  b.G *= s * s;
  auto ea = moments(a, {{1}, {1, 2}});
  auto eb = moments(b, {{1}, {1, 2}});
  CHECK(eb[0].value == doctest::Approx(s * ea[0].value).epsilon(1e-12));
  CHECK(eb[1].value == doctest::Approx(s * s * ea[1].value).epsilon(1e-12));
}

TEST_CASE("serial and parallel kernels agree bit for bit, for any thread count") {
  QGConfig cfg;
  cfg.eps = 0.1;
  cfg.L = 3;
  cfg.resolution = 32;
  cfg.mc_samples = 5 * kernels::kMcChunk + 123;
  std::vector<MomentSpec> specs = {{1}, {1, 2}};
  std::vector<MatrixObservable> obs = {MatrixObservable::trace(), MatrixObservable::det()};

  auto qs = kernels::eigen_quadrature_serial(cfg, specs, 32);
  auto ms = kernels::mc_serial(cfg, obs);
  const double zs = kernels::partial_Zu_serial(1.0, 1.0, 32, 1e-4);
  for (const char* threads : {"1", "3"}) {
    ThreadCap cap(threads);
    auto qp = kernels::eigen_quadrature_parallel(cfg, specs, 32);
    CHECK(qp.z == qs.z);
    CHECK(qp.numerators == qs.numerators);
    auto mp = kernels::mc_parallel(cfg, obs);
    CHECK(mp.accepted == ms.accepted);
    CHECK(mp.sum_w == ms.sum_w);
    CHECK(mp.sum_wf == ms.sum_wf);
    CHECK(kernels::partial_Zu_parallel(1.0, 1.0, 32, 1e-4) == zs);
  }
}

TEST_CASE("bad thread cap is rejected") {
  ThreadCap cap("zero");
  CHECK_THROWS(kernels::thread_cap_from_env());
}

TEST_CASE("Monte Carlo agrees with quadrature on a small case") {
  QGConfig cfg;
  cfg.eps = 0.1;
  cfg.L = 3;
  cfg.G = 1;
  cfg.resolution = 48;
  cfg.mc_samples = 1u << 20;
  auto mc = mc_matrix_oracle(cfg, {MatrixObservable::trace()});
  const double quad = 3 * moment(cfg, {1}).value;
  CHECK(std::abs(mc.estimates[0].value - quad) < 4 * mc.estimates[0].std_error);
  CHECK(mc.accepted > 0);
  CHECK(mc.accepted < mc.samples);
}

TEST_CASE("config validation") {
  QGConfig c;
  c.resolution = 40;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.resolution = 32;
  c.eps = 2;
  c.L = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.L = 5;
  c.G = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.G = INFINITY;
  CHECK_NOTHROW(c.validate());
  CHECK(parse_moment_spec("1,2") == MomentSpec{1, 2});
  CHECK_THROWS_AS(parse_moment_spec("1,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_spec(""), std::invalid_argument);
}

TEST_CASE("sweep output is deterministic and versioned") {
  QGConfig cfg;
  cfg.eps = 0.1;
  cfg.resolution = 16;
  auto r1 = sweep(cfg, 3, 6, 3, {{1}, {1, 2}});
  auto r2 = sweep(cfg, 3, 6, 3, {{1}, {1, 2}});
  CHECK(sweep_csv(r1) == sweep_csv(r2));
  CHECK(sweep_json(r1) == sweep_json(r2));
  CHECK(sweep_csv(r1).rfind("# schema_version=1\nL,G,eps,moment_spec,estimate,error,ratio_16over3,uncertainty\n", 0) == 0);
  CHECK(r1.rows.size() == 6);
  CHECK(r1.rows[2].L == doctest::Approx(3 * std::sqrt(2.0)));
  // n = 1 ratio is the estimate over 3L/16
  CHECK(r1.rows[0].ratio == doctest::Approx(r1.rows[0].estimate.value / (3 * 3.0 / 16)));
  CHECK_THROWS_AS(sweep(cfg, 0.05, 6, 3, {{1}}), std::invalid_argument);
}

TEST_CASE("partial theory: convergence, margin and monotonicity in 1/G") {
  auto z = partial_Zu(1.0, 1.0, 64, 1e-4);
  auto z2 = partial_Zu(1.0, 1.0, 128, 1e-4);
  CHECK(z.margin == 1e-4);
  CHECK(std::abs(z.value - z2.value) <= z.error);
  double prev = INFINITY;
  for (double inv_g : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v = partial_Zu(1.0, 1.0 / inv_g, 64).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(partial_Zu(-1.0, 1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(partial_Zu(1.0, 0.0, 64), std::invalid_argument);
}
