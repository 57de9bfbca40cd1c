#include "fuzzyqrg/qgrav_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace fuzzyqrg::qgrav::kernels {

namespace {

using Gauss8 = boost::math::quadrature::gauss<double, kPanelOrder>;

// Full symmetric node/weight list of the 8-point rule on [-1, 1].
const GaussRule& reference_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    const auto& a = Gauss8::abscissa();
    const auto& w = Gauss8::weights();
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] == 0.0) continue;
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

int panels_for(int resolution) { return std::max(1, resolution / kPanelOrder); }

// Softplus coordinate: lambda = a log(1 + e^s), roughly a e^s near zero and a s for large s.
struct SoftplusMap {
  double a;
  double s_min;
  double s_max;

  SoftplusMap(double eps, double L) : a(L / 16.0) {
    s_min = inverse(eps);
    s_max = inverse(L);
  }
  double inverse(double lambda) const { return std::log(std::expm1(lambda / a)); }
  double value(double s) const { return a * (s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s))); }
  double derivative(double s) const { return a / (1.0 + std::exp(-s)); }
};

struct EigenGrid {
  SoftplusMap map;
  GaussRule t;
  double shift_scale;  // 1/(2G)
  double shift;        // upper bound of -Q/(2G) on the cube

  EigenGrid(const QGConfig& cfg, int resolution)
      : map(cfg.eps, cfg.L), t(graded_unit_rule(panels_for(resolution))) {
    shift_scale = std::isinf(cfg.G) ? 0.0 : 0.5 / cfg.G;
    shift = 3.0 * cfg.L * cfg.L * shift_scale;
  }
};

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

// Adds node contributions for all six labelings of the sorted eigenvalues.
inline void accumulate(const double (&l)[3], double w, const std::vector<MomentSpec>& specs, double& z,
                       double* num) {
  z += 6.0 * w;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    double s = 0.0;
    for (const auto& p : kPerms) {
      double prod = 1.0;
      for (int label : specs[k]) prod *= l[p[label - 1]];
      s += prod;
    }
    num[k] += w * s;
  }
}

// Walks the inner two axes for outer node i3, adding into z and num.
void eigen_slab(const EigenGrid& g, std::size_t i3, const std::vector<MomentSpec>& specs, double& z, double* num) {
  const auto& t = g.t;
  const double R = g.map.s_max - g.map.s_min;
  const double s3 = g.map.s_min + R * t.x[i3];
  const double l3 = g.map.value(s3);
  const double j3 = R * t.w[i3] * g.map.derivative(s3);
  const double r3 = s3 - g.map.s_min;
  for (std::size_t i2 = 0; i2 < t.x.size(); ++i2) {
    const double s2 = g.map.s_min + r3 * t.x[i2];
    const double l2 = g.map.value(s2);
    const double j2 = j3 * r3 * t.w[i2] * g.map.derivative(s2);
    const double r2 = s2 - g.map.s_min;
    for (std::size_t i1 = 0; i1 < t.x.size(); ++i1) {
      const double s1 = g.map.s_min + r2 * t.x[i1];
      const double l1 = g.map.value(s1);
      const double jac = j2 * r2 * t.w[i1] * g.map.derivative(s1);
      const double vand = (l2 - l1) * (l3 - l1) * (l3 - l2);
      const double p = l1 * l2 * l3;
      const double q = eigen_quadratic_form(l1, l2, l3);
      const double w = jac * vand / (p * p) * std::exp(-q * g.shift_scale - g.shift);
      const double l[3] = {l1, l2, l3};
      accumulate(l, w, specs, z, num);
    }
  }
}

void check_finite(const QuadratureSums& s) {
  bool ok = std::isfinite(s.z) && s.z > 0;
  for (double v : s.numerators) ok = ok && std::isfinite(v);
  if (!ok) throw std::runtime_error("non-finite quadrature sum");
}

int effective_threads() {
  int cap = thread_cap_from_env();
  return cap > 0 ? cap : omp_get_max_threads();
}

// Integral over w in [0, w_max] at fixed v, split at the kink w = 3|v|.
double partial_inner(double u, double v, double G, int panels, double margin) {
  const double w_pole = u + v;
  const double w_max = w_pole * (1.0 - margin);
  const double kink = 3.0 * std::abs(v);
  double total = 0.0;
  auto piece = [&](double a, double b) {
    GaussRule r = log_graded_rule(a, b, w_pole, panels);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * partial_integrand(u, v, r.x[i], G);
    return s;
  };
  if (kink > 0.0 && kink < w_max) {
    total += piece(0.0, kink);
    total += piece(kink, w_max);
  } else {
    total += piece(0.0, w_max);
  }
  return total;
}

GaussRule partial_outer_rule(double u, int panels, double margin) {
  const double size = 1.5 * u;
  const double lo = -u + size * margin, hi = 0.5 * u - size * margin;
  // where the kink w = -3v meets the shrunk upper limit (u + v)(1 - margin); just above it
  // the inner integral has a log singularity at v = -u/4
  const double mid = -(1.0 - margin) * u / (4.0 - margin);
  GaussRule out;
  auto append = [&](const GaussRule& r) {
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
  };
  append(log_graded_rule(lo, mid, -u, panels));
  append(log_graded_rule(mid, 0.0, -0.25 * u, panels));
  append(log_graded_rule(0.0, hi, 0.5 * u, panels));
  return out;
}

void check_partial_args(double u, double G, int resolution, double margin) {
  if (!(u > 0) || !std::isfinite(u)) throw std::invalid_argument("u must be positive");
  if (!(G > 0)) throw std::invalid_argument("G must be positive");
  if (resolution < kPanelOrder) throw std::invalid_argument("resolution below one panel");
  if (!(margin > 0) || !(margin < 0.25)) throw std::invalid_argument("margin must lie in (0, 0.25)");
}

}  // namespace

GaussRule composite_rule(double lo, double hi, int panels) {
  const GaussRule& ref = reference_rule();
  GaussRule out;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
      out.x.push_back(c + 0.5 * h * ref.x[i]);
      out.w.push_back(0.5 * h * ref.w[i]);
    }
  }
  return out;
}

GaussRule graded_unit_rule(int panels) {
  const double h = 1.0 / panels;
  GaussRule out = composite_rule(0.0, 1.0 - h, panels - 1);
  // the last panel is split geometrically toward 1, where the all-equal corner sits
  double lo = 1.0 - h, width = h;
  for (int k = 0; k < panels / 2; ++k) {
    width *= 0.5;
    GaussRule r = composite_rule(lo, lo + width, 1);
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    lo += width;
  }
  GaussRule r = composite_rule(lo, 1.0, 1);
  out.x.insert(out.x.end(), r.x.begin(), r.x.end());
  out.w.insert(out.w.end(), r.w.begin(), r.w.end());
  return out;
}

GaussRule log_graded_rule(double a, double b, double pole, int panels) {
  if (!(b > a)) return {};
  const bool upper = pole >= b;
  const double da = std::abs(a - pole), db = std::abs(b - pole);
  if (!(da > 0) || !(db > 0)) throw std::invalid_argument("pole inside quadrature interval");
  GaussRule y = composite_rule(std::log(std::min(da, db)), std::log(std::max(da, db)), panels);
  for (std::size_t i = 0; i < y.x.size(); ++i) {
    const double e = std::exp(y.x[i]);
    y.x[i] = upper ? pole - e : pole + e;
    y.w[i] *= e;
  }
  return y;
}

QuadratureSums eigen_quadrature_serial(const QGConfig& cfg, const std::vector<MomentSpec>& specs, int resolution) {
  EigenGrid g(cfg, resolution);
  QuadratureSums out;
  out.numerators.assign(specs.size(), 0.0);
  std::vector<double> nums(specs.size());
  // slab sums first, then the running total, matching the parallel reduction order
  for (std::size_t i3 = 0; i3 < g.t.x.size(); ++i3) {
    double z = 0.0;
    std::fill(nums.begin(), nums.end(), 0.0);
    eigen_slab(g, i3, specs, z, nums.data());
    out.z += z;
    for (std::size_t k = 0; k < nums.size(); ++k) out.numerators[k] += nums[k];
  }
  check_finite(out);
  return out;
}

QuadratureSums eigen_quadrature_parallel(const QGConfig& cfg, const std::vector<MomentSpec>& specs, int resolution) {
  EigenGrid g(cfg, resolution);
  const std::size_t n = g.t.x.size(), m = specs.size();
  std::vector<double> zs(n, 0.0), nums(n * m, 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads())
  for (std::size_t i3 = 0; i3 < n; ++i3) eigen_slab(g, i3, specs, zs[i3], nums.data() + i3 * m);
  QuadratureSums out;
  out.numerators.assign(m, 0.0);
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    out.z += zs[i3];
    for (std::size_t k = 0; k < m; ++k) out.numerators[k] += nums[i3 * m + k];
  }
  check_finite(out);
  return out;
}

void McSums::merge(const McSums& o) {
  if (sum_wf.empty()) {
    sum_wf.assign(o.sum_wf.size(), 0.0);
    sum_wf2.assign(o.sum_wf.size(), 0.0);
    sum_w_wf.assign(o.sum_wf.size(), 0.0);
  }
  samples += o.samples;
  accepted += o.accepted;
  sum_w += o.sum_w;
  sum_w2 += o.sum_w2;
  for (std::size_t k = 0; k < o.sum_wf.size(); ++k) {
    sum_wf[k] += o.sum_wf[k];
    sum_wf2[k] += o.sum_wf2[k];
    sum_w_wf[k] += o.sum_w_wf[k];
  }
}

McSums mc_chunk(const QGConfig& cfg, const std::vector<MatrixObservable>& obs, std::uint64_t chunk,
                std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> diag(cfg.eps, cfg.L);
  const double half = 0.5 * (cfg.L - cfg.eps);
  std::uniform_real_distribution<double> off(-half, half);
  const double inv_G = std::isinf(cfg.G) ? 0.0 : 1.0 / cfg.G;
  // Tr g^2 - Tr(g)^2/2 >= -3L^2/2 on the accepted set
  const double shift = 1.5 * cfg.L * cfg.L * inv_G;

  McSums s;
  const std::size_t m = obs.size();
  s.sum_wf.assign(m, 0.0);
  s.sum_wf2.assign(m, 0.0);
  s.sum_w_wf.assign(m, 0.0);
  s.samples = count;
  auto posdef = [](double a11, double a22, double a33, double a12, double a13, double a23) {
    if (a11 <= 0) return false;
    if (a11 * a22 - a12 * a12 <= 0) return false;
    return a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13) > 0;
  };
  for (std::uint64_t n = 0; n < count; ++n) {
    const double g11 = diag(rng), g22 = diag(rng), g33 = diag(rng);
    const double g12 = off(rng), g13 = off(rng), g23 = off(rng);
    if (!posdef(g11 - cfg.eps, g22 - cfg.eps, g33 - cfg.eps, g12, g13, g23)) continue;
    if (!posdef(cfg.L - g11, cfg.L - g22, cfg.L - g33, -g12, -g13, -g23)) continue;
    const Mat3<double> g{{{g11, g12, g13}, {g12, g22, g23}, {g13, g23, g33}}};
    const double det = det3(g);
    const double tr = g11 + g22 + g33;
    const double tr2 = g11 * g11 + g22 * g22 + g33 * g33 + 2.0 * (g12 * g12 + g13 * g13 + g23 * g23);
    const double w = std::exp(-(tr2 - 0.5 * tr * tr) * inv_G - shift) / (det * det);
    ++s.accepted;
    s.sum_w += w;
    s.sum_w2 += w * w;
    for (std::size_t k = 0; k < m; ++k) {
      const double wf = w * obs[k].f(g);
      s.sum_wf[k] += wf;
      s.sum_wf2[k] += wf * wf;
      s.sum_w_wf[k] += w * wf;
    }
  }
  return s;
}

McSums mc_serial(const QGConfig& cfg, const std::vector<MatrixObservable>& obs) {
  McSums total;
  const std::uint64_t chunks = (cfg.mc_samples + kMcChunk - 1) / kMcChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    total.merge(mc_chunk(cfg, obs, c, std::min(kMcChunk, cfg.mc_samples - c * kMcChunk)));
  }
  return total;
}

McSums mc_parallel(const QGConfig& cfg, const std::vector<MatrixObservable>& obs) {
  const std::uint64_t chunks = (cfg.mc_samples + kMcChunk - 1) / kMcChunk;
  std::vector<McSums> parts(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads())
  for (std::uint64_t c = 0; c < chunks; ++c) {
    parts[c] = mc_chunk(cfg, obs, c, std::min(kMcChunk, cfg.mc_samples - c * kMcChunk));
  }
  McSums total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

double partial_Zu_serial(double u, double G, int resolution, double margin) {
  check_partial_args(u, G, resolution, margin);
  const int panels = panels_for(resolution);
  GaussRule v = partial_outer_rule(u, panels, margin);
  double total = 0.0;
  for (std::size_t i = 0; i < v.x.size(); ++i) total += v.w[i] * partial_inner(u, v.x[i], G, panels, margin);
  return total;
}

double partial_Zu_parallel(double u, double G, int resolution, double margin) {
  check_partial_args(u, G, resolution, margin);
  const int panels = panels_for(resolution);
  GaussRule v = partial_outer_rule(u, panels, margin);
  std::vector<double> parts(v.x.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::size_t i = 0; i < v.x.size(); ++i) parts[i] = v.w[i] * partial_inner(u, v.x[i], G, panels, margin);
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

int thread_cap_from_env() {
  const char* env = std::getenv("FUZZYQRG_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) throw std::invalid_argument("FUZZYQRG_THREADS must be a positive integer");
  return static_cast<int>(n);
}

}  // namespace fuzzyqrg::qgrav::kernels
