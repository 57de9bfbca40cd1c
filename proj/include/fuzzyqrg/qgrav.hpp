#pragma once

// Euclidean quantum gravity on the fuzzy sphere: the metric action, moments of
// the metric eigenvalues under the cut-off partition function, a matrix-coordinate
// Monte Carlo cross-check, and the partial theory at fixed mean eigenvalue.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fuzzyqrg/qrg.hpp"

namespace fuzzyqrg::qgrav {

struct QGConfig {
  double G = 1.0;
  double eps = 0.01;
  double L = 10.0;
  /// Quadrature nodes per axis (multiple of 16, at least 16).
  int resolution = 64;
  std::uint64_t mc_samples = 1u << 22;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// 1-based eigenvalue labels, e.g. {1, 2} for <lambda_1 lambda_2>.
using MomentSpec = std::vector<int>;

MomentSpec parse_moment_spec(const std::string& text);
std::string moment_name(const MomentSpec& spec);

/// Scalar curvature written in matrix entries; equals the closed form for any symmetric g.
double action_matrix(const Mat3<double>& g);

/// Eigenvalue density |Vandermonde| / prod(l^2) * exp(-(1/2G) Q(l)).
double eigen_weight(double l1, double l2, double l3, double G);

/// Q(l) = l1^2 + l2^2 + l3^2 - 2 (l1 l2 + l1 l3 + l2 l3).
template <class T>
T eigen_quadratic_form(const T& l1, const T& l2, const T& l3) {
  return T(l1 * l1 + l2 * l2 + l3 * l3 - T(2) * (l1 * l2 + l1 * l3 + l2 * l3));
}

template <class T>
struct Uvw {
  T u, v, w;
};

template <class T>
Uvw<T> uvw_map(const T& l1, const T& l2, const T& l3) {
  return {T((l1 + l2 + l3) / T(3)), T((l2 + l3 - T(2) * l1) / T(6)), T((l3 - l2) / T(2))};
}

template <class T>
std::array<T, 3> uvw_inverse(const Uvw<T>& p) {
  return {T(p.u - T(2) * p.v), T(p.u + p.v - p.w), T(p.u + p.v + p.w)};
}

/// Diagonalised quadratic form -3u^2 + 12v^2 + 4w^2.
template <class T>
T uvw_quadratic_form(const Uvw<T>& p) {
  return T(T(-3) * p.u * p.u + T(12) * p.v * p.v + T(4) * p.w * p.w);
}

/// Moment ratios <prod lambda> / <1> by nested eigenvalue quadrature at cfg.resolution,
/// with the error taken as the change from half resolution.
std::vector<Estimate> moments(const QGConfig& cfg, const std::vector<MomentSpec>& specs);
Estimate moment(const QGConfig& cfg, const MomentSpec& spec);

struct MatrixObservable {
  std::string name;
  std::function<double(const Mat3<double>&)> f;

  static MatrixObservable one();
  static MatrixObservable trace();
  static MatrixObservable det();
  static MatrixObservable trace_sq();
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct McResult {
  std::vector<McEstimate> estimates;
  std::uint64_t accepted = 0;
  std::uint64_t samples = 0;
};

/// Rejection-sampled Monte Carlo over symmetric matrices with eigenvalues in [eps, L],
/// weighted by |det g|^-2 exp(-(1/G)(Tr g^2 - Tr(g)^2 / 2)). Deterministic for a fixed seed.
McResult mc_matrix_oracle(const QGConfig& cfg, const std::vector<MatrixObservable>& observables);

struct SweepRow {
  double L = 0.0;
  MomentSpec spec;
  Estimate estimate;
  /// estimate / <lambda_{i1}>^n for n >= 2 (tends to (16/3)^(n-1)), estimate / (3L/16) for n = 1;
  /// NaN when the denominator is below its error floor.
  double ratio = 0.0;
  /// sqrt(<lambda_i^2> - <lambda_i>^2) / <lambda_i> for i = spec[0].
  double uncertainty = 0.0;
};

struct EpsStability {
  MomentSpec spec;
  double ratio_at_eps = 0.0;
  double ratio_at_half_eps = 0.0;
  double relative_change = 0.0;
};

struct SweepResult {
  QGConfig config;
  double L_min = 0.0;
  double L_max = 0.0;
  int steps = 0;
  std::vector<SweepRow> rows;
  std::vector<EpsStability> eps_stability;
};

/// Geometric sweep of the cut-off L over [L_min, L_max] in `steps` points.
SweepResult sweep(const QGConfig& cfg, double L_min, double L_max, int steps, const std::vector<MomentSpec>& specs);

constexpr int kSweepSchemaVersion = 1;
std::string sweep_csv(const SweepResult& r);
std::string sweep_json(const SweepResult& r);

struct PartialZ {
  double value = 0.0;
  double error = 0.0;
  double margin = 0.0;
  int resolution = 0;
};

/// Integrand of the fluctuation theory at fixed u (with the overall factor 4).
double partial_integrand(double u, double v, double w, double G);

/// Z_u on the region shrunk by a relative `margin` away from the lambda_i = 0 boundaries.
PartialZ partial_Zu(double u, double G, int resolution, double margin = 1e-4);

}  // namespace fuzzyqrg::qgrav
