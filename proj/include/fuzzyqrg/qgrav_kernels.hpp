#pragma once

// Integration kernels behind qgrav. Each kernel has a plain serial reference and an
// OpenMP version; the OpenMP version reduces fixed blocks in a fixed order so its
// result does not depend on the thread count.

#include <array>
#include <cstdint>
#include <vector>

#include "fuzzyqrg/qgrav.hpp"

namespace fuzzyqrg::qgrav::kernels {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Nodes per Gauss-Legendre panel.
constexpr int kPanelOrder = 8;

/// Composite Gauss-Legendre rule on [lo, hi] with equal panels.
GaussRule composite_rule(double lo, double hi, int panels);

/// Rule on [0, 1] with `panels` equal panels, the last one refined geometrically toward 1.
GaussRule graded_unit_rule(int panels);

/// Rule on [a, b] for an integrand blowing up at `pole` just outside the interval,
/// built from equal panels in log(|x - pole|).
GaussRule log_graded_rule(double a, double b, double pole, int panels);

struct QuadratureSums {
  double z = 0.0;
  std::vector<double> numerators;
};

QuadratureSums eigen_quadrature_serial(const QGConfig& cfg, const std::vector<MomentSpec>& specs, int resolution);
QuadratureSums eigen_quadrature_parallel(const QGConfig& cfg, const std::vector<MomentSpec>& specs, int resolution);

struct McSums {
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  std::vector<double> sum_wf;
  std::vector<double> sum_wf2;
  std::vector<double> sum_w_wf;

  void merge(const McSums& o);
};

/// Samples per deterministic RNG chunk.
constexpr std::uint64_t kMcChunk = 1u << 15;

McSums mc_chunk(const QGConfig& cfg, const std::vector<MatrixObservable>& obs, std::uint64_t chunk,
                std::uint64_t count);
McSums mc_serial(const QGConfig& cfg, const std::vector<MatrixObservable>& obs);
McSums mc_parallel(const QGConfig& cfg, const std::vector<MatrixObservable>& obs);

double partial_Zu_serial(double u, double G, int resolution, double margin);
double partial_Zu_parallel(double u, double G, int resolution, double margin);

/// Thread cap from FUZZYQRG_THREADS (0 when unset).
int thread_cap_from_env();

}  // namespace fuzzyqrg::qgrav::kernels
