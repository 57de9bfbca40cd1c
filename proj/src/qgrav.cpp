#include "fuzzyqrg/qgrav.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

#include "fuzzyqrg/qgrav_kernels.hpp"

namespace fuzzyqrg::qgrav {

void QGConfig::validate() const {
  if (!(G > 0)) throw std::invalid_argument("G must be positive");
  if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  if (!(L > eps) || !std::isfinite(L)) throw std::invalid_argument("L must exceed eps");
  if (resolution < 16 || resolution % 16 != 0) throw std::invalid_argument("resolution must be a multiple of 16, at least 16");
  if (mc_samples == 0) throw std::invalid_argument("mc_samples must be positive");
}

MomentSpec parse_moment_spec(const std::string& text) {
  MomentSpec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "1" && item != "2" && item != "3") throw std::invalid_argument("moment labels must be 1, 2 or 3: " + text);
    out.push_back(item[0] - '0');
  }
  if (out.empty()) throw std::invalid_argument("empty moment spec");
  return out;
}

std::string moment_name(const MomentSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(spec[i]);
  }
  return out;
}

double action_matrix(const Mat3<double>& g) {
  const double det = det3(g);
  if (singular_det(det, g)) throw std::invalid_argument("metric not invertible");
  const double d1 = g[0][0], d2 = g[1][1], d3 = g[2][2];
  const double num = d1 * d1 + d2 * d2 + d3 * d3 - 2.0 * (d1 * d2 + d1 * d3 + d2 * d3) +
                     4.0 * (g[0][1] * g[0][1] + g[0][2] * g[0][2] + g[1][2] * g[1][2]);
  return num / (4.0 * det);
}

double eigen_weight(double l1, double l2, double l3, double G) {
  const double vand = std::abs((l1 - l2) * (l1 - l3) * (l2 - l3));
  const double p = l1 * l2 * l3;
  const double expo = std::isinf(G) ? 0.0 : -eigen_quadratic_form(l1, l2, l3) / (2.0 * G);
  return vand / (p * p) * std::exp(expo);
}

namespace {

void check_specs(const std::vector<MomentSpec>& specs) {
  for (const auto& s : specs) {
    if (s.empty()) throw std::invalid_argument("empty moment spec");
    for (int l : s)
      if (l < 1 || l > 3) throw std::invalid_argument("moment labels must be 1, 2 or 3");
  }
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<Estimate> moments(const QGConfig& cfg, const std::vector<MomentSpec>& specs) {
  cfg.validate();
  check_specs(specs);
  auto fine = kernels::eigen_quadrature_parallel(cfg, specs, cfg.resolution);
  auto coarse = kernels::eigen_quadrature_parallel(cfg, specs, cfg.resolution / 2);
  std::vector<Estimate> out;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const double v = fine.numerators[k] / fine.z;
    const double c = coarse.numerators[k] / coarse.z;
    out.push_back({v, std::max(std::abs(v - c), 1e-12 * std::abs(v))});
  }
  return out;
}

Estimate moment(const QGConfig& cfg, const MomentSpec& spec) { return moments(cfg, {spec})[0]; }

MatrixObservable MatrixObservable::one() {
  return {"1", [](const Mat3<double>&) { return 1.0; }};
}
MatrixObservable MatrixObservable::trace() {
  return {"Tr g", [](const Mat3<double>& g) { return trace3(g); }};
}
MatrixObservable MatrixObservable::det() {
  return {"det g", [](const Mat3<double>& g) { return det3(g); }};
}
MatrixObservable MatrixObservable::trace_sq() {
  return {"Tr g^2", [](const Mat3<double>& g) { return trace3(matmul3(g, g)); }};
}

McResult mc_matrix_oracle(const QGConfig& cfg, const std::vector<MatrixObservable>& observables) {
  cfg.validate();
  kernels::McSums s = kernels::mc_parallel(cfg, observables);
  if (s.accepted == 0 || !(s.sum_w > 0)) throw std::runtime_error("no accepted Monte Carlo samples");
  McResult out;
  out.accepted = s.accepted;
  out.samples = s.samples;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    const double r = s.sum_wf[k] / s.sum_w;
    // delta method for the ratio estimator
    const double resid = s.sum_wf2[k] - 2.0 * r * s.sum_w_wf[k] + r * r * s.sum_w2;
    out.estimates.push_back({r, std::sqrt(std::max(resid, 0.0)) / s.sum_w});
  }
  return out;
}

SweepResult sweep(const QGConfig& cfg, double L_min, double L_max, int steps, const std::vector<MomentSpec>& specs) {
  if (!(L_min > cfg.eps) || !(L_max >= L_min) || !std::isfinite(L_max)) throw std::invalid_argument("need eps < Lmin <= Lmax");
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  if (steps == 1 && L_max != L_min) throw std::invalid_argument("a single step needs Lmin = Lmax");
  check_specs(specs);

  // requested specs plus <l_i> and <l_i^2> for every leading label
  std::vector<MomentSpec> all = specs;
  std::map<int, std::pair<std::size_t, std::size_t>> aux;
  for (const auto& s : specs) {
    if (aux.count(s[0])) continue;
    all.push_back({s[0]});
    all.push_back({s[0], s[0]});
    aux[s[0]] = {all.size() - 2, all.size() - 1};
  }

  auto ratio_of = [](const MomentSpec& spec, const std::vector<Estimate>& est, std::size_t k, std::size_t i1, double L) {
    const Estimate& m1 = est[i1];
    if (spec.size() == 1) return est[k].value / (3.0 * L / 16.0);
    if (!(m1.value > 10.0 * m1.error)) return std::numeric_limits<double>::quiet_NaN();
    return est[k].value / std::pow(m1.value, static_cast<double>(spec.size()));
  };

  SweepResult out;
  out.config = cfg;
  out.L_min = L_min;
  out.L_max = L_max;
  out.steps = steps;
  for (int n = 0; n < steps; ++n) {
    QGConfig c = cfg;
    c.L = steps == 1 ? L_min : L_min * std::pow(L_max / L_min, static_cast<double>(n) / (steps - 1));
    if (n == steps - 1) c.L = L_max;
    std::vector<Estimate> est = moments(c, all);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      auto [i1, i2] = aux[specs[k][0]];
      SweepRow row;
      row.L = c.L;
      row.spec = specs[k];
      row.estimate = est[k];
      row.ratio = ratio_of(specs[k], est, k, i1, c.L);
      const double mean = est[i1].value;
      row.uncertainty = std::sqrt(std::max(est[i2].value - mean * mean, 0.0)) / mean;
      out.rows.push_back(row);
    }
  }

  QGConfig at = cfg, half = cfg;
  at.L = half.L = L_max;
  half.eps = 0.5 * cfg.eps;
  std::vector<Estimate> e1 = moments(at, all), e2 = moments(half, all);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const std::size_t i1 = aux[specs[k][0]].first;
    EpsStability s;
    s.spec = specs[k];
    s.ratio_at_eps = ratio_of(specs[k], e1, k, i1, L_max);
    s.ratio_at_half_eps = ratio_of(specs[k], e2, k, i1, L_max);
    s.relative_change = std::abs(s.ratio_at_half_eps - s.ratio_at_eps) / std::abs(s.ratio_at_eps);
    out.eps_stability.push_back(s);
  }
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "# schema_version=" + std::to_string(kSweepSchemaVersion) + "\n";
  out += "L,G,eps,moment_spec,estimate,error,ratio_16over3,uncertainty\n";
  for (const auto& row : r.rows) {
    out += fmt(row.L) + "," + fmt(r.config.G) + "," + fmt(r.config.eps) + ",\"" + moment_name(row.spec) + "\"," +
           fmt(row.estimate.value) + "," + fmt(row.estimate.error) + "," + fmt(row.ratio) + "," + fmt(row.uncertainty) +
           "\n";
  }
  out += "# eps_stability at L=" + fmt(r.L_max) + ": moment_spec,ratio_at_eps,ratio_at_half_eps,relative_change\n";
  for (const auto& s : r.eps_stability) {
    out += "# \"" + moment_name(s.spec) + "\"," + fmt(s.ratio_at_eps) + "," + fmt(s.ratio_at_half_eps) + "," +
           fmt(s.relative_change) + "\n";
  }
  return out;
}

std::string sweep_json(const SweepResult& r) {
  using nlohmann::json;
  auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
  json j;
  j["schema_version"] = kSweepSchemaVersion;
  j["config"] = {{"G", std::isinf(r.config.G) ? json("inf") : json(r.config.G)},
                 {"eps", r.config.eps},
                 {"Lmin", r.L_min},
                 {"Lmax", r.L_max},
                 {"steps", r.steps},
                 {"resolution", r.config.resolution},
                 {"seed", r.config.seed}};
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"L", row.L},
                         {"moment_spec", moment_name(row.spec)},
                         {"estimate", row.estimate.value},
                         {"error", row.estimate.error},
                         {"ratio_16over3", num(row.ratio)},
                         {"uncertainty", num(row.uncertainty)}});
  }
  j["eps_stability"] = json::array();
  for (const auto& s : r.eps_stability) {
    j["eps_stability"].push_back({{"moment_spec", moment_name(s.spec)},
                                  {"ratio_at_eps", num(s.ratio_at_eps)},
                                  {"ratio_at_half_eps", num(s.ratio_at_half_eps)},
                                  {"relative_change", num(s.relative_change)}});
  }
  return j.dump(2) + "\n";
}

double partial_integrand(double u, double v, double w, double G) {
  const double a = u - 2.0 * v;
  const double b = (u + v) * (u + v) - w * w;
  const double expo = std::isinf(G) ? 0.0 : -(2.0 / G) * (3.0 * v * v + w * w);
  return 4.0 * std::abs(9.0 * v * v - w * w) * w / (a * a * b * b) * std::exp(expo);
}

PartialZ partial_Zu(double u, double G, int resolution, double margin) {
  if (resolution < 16) throw std::invalid_argument("resolution must be at least 16");
  if (!(margin > 0)) throw std::invalid_argument("margin must be positive");
  PartialZ out;
  out.margin = margin;
  out.resolution = resolution;
  out.value = kernels::partial_Zu_parallel(u, G, resolution, margin);
  const double coarse = kernels::partial_Zu_parallel(u, G, resolution / 2, margin);
  out.error = std::max(std::abs(out.value - coarse), 1e-11 * std::abs(out.value));
  return out;
}

}  // namespace fuzzyqrg::qgrav
