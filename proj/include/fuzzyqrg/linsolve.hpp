#pragma once

// Gauss-Jordan elimination over an exact field (Rational, ParamScalar) or doubles.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "fuzzyqrg/scalar.hpp"

namespace fuzzyqrg {

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(const ParamScalar& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return std::abs(x) < 1e-12; }

template <class F>
struct LinearSolve {
  std::vector<F> x;        // one particular solution, free variables set to zero
  std::size_t rank = 0;
  bool consistent = false;
  std::vector<std::size_t> free_columns;
};

/// Solves A x = b with A given row-major as rows x cols.
template <class F>
LinearSolve<F> solve_linear(std::vector<std::vector<F>> a, std::vector<F> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("right-hand side size mismatch");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  LinearSolve<F> out;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  std::size_t c = 0;
  for (; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    if constexpr (std::is_same_v<F, double>) {
      double mag = 0.0;
      for (std::size_t i = r; i < rows; ++i) {
        if (std::abs(a[i][c]) > mag) {
          mag = std::abs(a[i][c]);
          best = i;
        }
      }
      if (best != rows && scalar_is_zero(mag)) best = rows;
    } else {
      for (std::size_t i = r; i < rows; ++i) {
        if (!scalar_is_zero(a[i][c])) {
          best = i;
          break;
        }
      }
    }
    if (best == rows) {
      out.free_columns.push_back(c);
      continue;
    }
    std::swap(a[r], a[best]);
    std::swap(b[r], b[best]);
    F inv = F(1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || scalar_is_zero(a[i][c])) continue;
      F f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (; c < cols; ++c) out.free_columns.push_back(c);
  out.rank = r;
  out.consistent = true;
  for (std::size_t i = r; i < rows; ++i) {
    if (!scalar_is_zero(b[i])) out.consistent = false;
  }
  out.x.assign(cols, F(0));
  for (std::size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = b[i];
  return out;
}

}  // namespace fuzzyqrg
