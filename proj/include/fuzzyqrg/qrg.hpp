#pragma once

// Quantum Riemannian geometry of the fuzzy sphere for constant-coefficient
// metrics g = g_ij s^i (x) s^j and connections nabla s^i = -1/2 Gamma^i_jk s^j (x) s^k.
//
// Geometry routines are generic over the scalar: Rational for exact work,
// double for numerics. All indices below are 0-based.

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzzyqrg/calculus.hpp"
#include "fuzzyqrg/linsolve.hpp"

namespace fuzzyqrg {

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

/// Rank-3 array indexed [i][j][k].
template <class T>
using Arr3 = std::array<Mat3<T>, 3>;

constexpr int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

template <class T>
Mat3<T> identity3() {
  Mat3<T> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = T(i == j ? 1 : 0);
  return m;
}

template <class T>
Mat3<T> zero3() {
  Mat3<T> m{};
  for (auto& row : m) row.fill(T(0));
  return m;
}

template <class T>
Arr3<T> zero_arr3() {
  Arr3<T> a{};
  for (auto& m : a) m = zero3<T>();
  return a;
}

template <class T>
T trace3(const Mat3<T>& m) {
  return T(m[0][0] + m[1][1] + m[2][2]);
}

template <class T>
T det3(const Mat3<T>& m) {
  return T(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
}

template <class T>
Mat3<T> matmul3(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r = zero3<T>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

template <class T>
Mat3<T> transpose3(const Mat3<T>& a) {
  Mat3<T> r = a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

template <class T>
bool singular_det(const T& det, const Mat3<T>& m) {
  if constexpr (std::is_same_v<T, double>) {
    double scale = 0.0;
    for (const auto& row : m)
      for (double v : row) scale = std::max(scale, std::abs(v));
    return !(std::abs(det) > 1e-14 * scale * scale * scale);
  } else {
    return scalar_is_zero(det);
  }
}

/// Inverse by adjugate; throws std::invalid_argument if singular.
template <class T>
Mat3<T> inverse3(const Mat3<T>& m) {
  T det = det3(m);
  if (singular_det(det, m)) throw std::invalid_argument("metric not invertible");
  Mat3<T> r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // cofactor of (j, i)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = T((m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det);
    }
  }
  return r;
}

/// Symmetric invertible real 3x3 metric with cached inverse.
template <class T>
class Metric3 {
 public:
  explicit Metric3(const Mat3<T>& g) : g_(g) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!(g_[i][j] == g_[j][i])) throw std::invalid_argument("metric not symmetric");
    det_ = det3(g_);
    inv_ = inverse3(g_);
  }

  static Metric3 identity() { return Metric3(identity3<T>()); }
  static Metric3 diagonal(T a, T b, T c) {
    Mat3<T> g = zero3<T>();
    g[0][0] = a;
    g[1][1] = b;
    g[2][2] = c;
    return Metric3(g);
  }

  const Mat3<T>& g() const { return g_; }
  const Mat3<T>& inv() const { return inv_; }
  T det() const { return det_; }
  T trace() const { return trace3(g_); }
  const T& operator()(int i, int j) const { return g_[i][j]; }

 private:
  Mat3<T> g_;
  Mat3<T> inv_;
  T det_;
};

/// Constant coefficients with the first index lowered: Gamma_ijk = g_im Gamma^m_jk.
template <class T>
struct Connection3 {
  Arr3<T> lowered = zero_arr3<T>();

  T& operator()(int i, int j, int k) { return lowered[i][j][k]; }
  const T& operator()(int i, int j, int k) const { return lowered[i][j][k]; }
};

template <class T>
struct CurvatureData {
  Arr3<T> rho;  // rho^i_jk
  Mat3<T> ricci;
  T scalar;
};

template <class T>
bool is_zero_arr(const Arr3<T>& a) {
  for (const auto& m : a)
    for (const auto& row : m)
      for (const auto& v : row)
        if (!scalar_is_zero(v)) return false;
  return true;
}

/// The unique constant-coefficient QLC: Gamma_ijk = 2 eps_ikm g_mj + Tr(g) eps_ijk.
template <class T>
Connection3<T> qlc(const Metric3<T>& g) {
  Connection3<T> c;
  T tr = g.trace();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        T v = tr * T(eps3(i, j, k));
        for (int m = 0; m < 3; ++m) v += T(2 * eps3(i, k, m)) * g(m, j);
        c(i, j, k) = v;
      }
  return c;
}

template <class T>
struct QlcLinearSolution {
  Mat3<T> gamma;
  std::size_t rank = 0;
  bool kernel_trivial = false;
};

/// Solves the torsion-free condition under the ansatz Gamma_ijk = eps_ikm gamma_mj
/// (which makes the connection metric compatible) as an explicit linear system for gamma.
template <class T>
QlcLinearSolution<T> solve_qlc_linear(const Metric3<T>& g) {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  // (i,k,l): Gamma_ikl - Gamma_ilk = 2 g_im eps_mkl
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        std::vector<T> row(9, T(0));
        for (int m = 0; m < 3; ++m) {
          row[3 * m + k] += T(eps3(i, l, m));
          row[3 * m + l] -= T(eps3(i, k, m));
        }
        T rhs(0);
        for (int m = 0; m < 3; ++m) rhs += T(2 * eps3(m, k, l)) * g(i, m);
        a.push_back(std::move(row));
        b.push_back(rhs);
      }
  LinearSolve<T> sol = solve_linear(std::move(a), std::move(b));
  if (!sol.consistent) throw std::logic_error("QLC linear system inconsistent");
  QlcLinearSolution<T> out;
  out.rank = sol.rank;
  out.kernel_trivial = sol.rank == 9;
  if (!out.kernel_trivial) throw std::logic_error("QLC linear system has a nontrivial kernel");
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) out.gamma[m][n] = sol.x[3 * m + n];
  return out;
}

/// Solves torsion freeness plus metric compatibility for all 27 lowered coefficients
/// without any ansatz; returns the connection and the rank of the system.
template <class T>
std::pair<Connection3<T>, std::size_t> solve_qlc_full(const Metric3<T>& g) {
  auto idx = [](int i, int j, int k) { return 9 * i + 3 * j + k; };
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        std::vector<T> row(27, T(0));
        row[idx(i, j, k)] += T(1);
        row[idx(i, k, j)] -= T(1);
        T rhs(0);
        for (int m = 0; m < 3; ++m) rhs += T(2 * eps3(m, j, k)) * g(i, m);
        a.push_back(std::move(row));
        b.push_back(rhs);
        std::vector<T> compat(27, T(0));
        compat[idx(i, j, k)] += T(1);
        compat[idx(k, j, i)] += T(1);
        a.push_back(std::move(compat));
        b.push_back(T(0));
      }
  LinearSolve<T> sol = solve_linear(std::move(a), std::move(b));
  if (!sol.consistent) throw std::logic_error("QLC system inconsistent");
  Connection3<T> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c(i, j, k) = sol.x[idx(i, j, k)];
  return {c, sol.rank};
}

/// Gamma_ijk = eps_ikm gamma_mj.
template <class T>
Connection3<T> connection_from_gamma(const Mat3<T>& gamma) {
  Connection3<T> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        T v(0);
        for (int m = 0; m < 3; ++m) v += T(eps3(i, k, m)) * gamma[m][j];
        c(i, j, k) = v;
      }
  return c;
}

/// Gamma_ijk - Gamma_ikj - 2 g_im eps_mjk; zero iff torsion free.
template <class T>
Arr3<T> torsion(const Connection3<T>& c, const Metric3<T>& g) {
  Arr3<T> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        T v = c(i, j, k) - c(i, k, j);
        for (int m = 0; m < 3; ++m) v -= T(2 * eps3(m, j, k)) * g(i, m);
        t[i][j][k] = v;
      }
  return t;
}

/// Gamma_ijk - Gamma_jik - 2 g_km eps_mij; zero iff cotorsion free.
template <class T>
Arr3<T> cotorsion(const Connection3<T>& c, const Metric3<T>& g) {
  Arr3<T> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        T v = c(i, j, k) - c(j, i, k);
        for (int m = 0; m < 3; ++m) v -= T(2 * eps3(m, i, j)) * g(k, m);
        t[i][j][k] = v;
      }
  return t;
}

/// Gamma_lik + Gamma_kil, indexed [l][i][k]; zero iff nabla g = 0 for constant coefficients.
template <class T>
Arr3<T> metric_compat_defect(const Connection3<T>& c) {
  Arr3<T> t;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) t[l][i][k] = c(l, i, k) + c(k, i, l);
  return t;
}

/// Full nabla g = N[m][i][n] s^m (x) s^i (x) s^n with N = -1/2 (Gamma_nmi + Gamma_imn).
template <class T>
Arr3<T> nabla_metric(const Connection3<T>& c) {
  Arr3<T> t;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int n = 0; n < 3; ++n) t[m][i][n] = T(-(c(n, m, i) + c(i, m, n)) / T(2));
  return t;
}

/// Gamma^i_jk = g^im Gamma_mjk.
template <class T>
Arr3<T> raise_first(const Connection3<T>& c, const Metric3<T>& g) {
  Arr3<T> up = zero_arr3<T>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) up[i][j][k] += g.inv()[i][m] * c(m, j, k);
  return up;
}

/// rho^i_jk = 1/4 Gamma^i_jk - 1/8 eps_jmn Gamma^i_ml Gamma^l_nk,
/// R_mn = rho^i_jn eps_jim, S = R_mn g^mn.
template <class T>
CurvatureData<T> curvature(const Connection3<T>& c, const Metric3<T>& g) {
  Arr3<T> up = raise_first(c, g);
  CurvatureData<T> out{zero_arr3<T>(), zero3<T>(), T(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        T quad(0);
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) {
            int e = eps3(j, m, n);
            if (e == 0) continue;
            for (int l = 0; l < 3; ++l) quad += T(e) * up[i][m][l] * up[l][n][k];
          }
        out.rho[i][j][k] = T(up[i][j][k] / T(4) - quad / T(8));
      }
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      T v(0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          int e = eps3(j, i, m);
          if (e != 0) v += T(e) * out.rho[i][j][n];
        }
      out.ricci[m][n] = v;
    }
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) out.scalar += out.ricci[m][n] * g.inv()[m][n];
  return out;
}

/// S = 1/2 (Tr(g^2) - 1/2 Tr(g)^2) / det(g).
template <class T>
T scalar_closed_form(const Mat3<T>& g) {
  T det = det3(g);
  if (singular_det(det, g)) throw std::invalid_argument("metric not invertible");
  T tr = trace3(g);
  T tr2 = trace3(matmul3(g, g));
  return T((tr2 - tr * tr / T(2)) / (T(2) * det));
}

/// Eigenvalue form (l1^2 + l2^2 + l3^2 - 2(l1 l2 + l1 l3 + l2 l3)) / (4 l1 l2 l3).
template <class T>
T scalar_from_eigenvalues(const T& l1, const T& l2, const T& l3) {
  T prod = l1 * l2 * l3;
  if (scalar_is_zero(prod)) throw std::invalid_argument("metric not invertible");
  return T((l1 * l1 + l2 * l2 + l3 * l3 - T(2) * (l1 * l2 + l1 * l3 + l2 * l3)) / (T(4) * prod));
}

/// Quadratic model of S(id + E) around the round metric.
template <class T>
T scalar_perturbation(const Mat3<T>& e) {
  T tr = trace3(e);
  T off = e[0][1] * e[0][1] + e[0][2] * e[0][2] + e[1][2] * e[1][2];
  T d01 = e[0][0] - e[1][1], d02 = e[0][0] - e[2][2], d12 = e[1][1] - e[2][2];
  return T(T(-3) / T(4) + tr / T(4) - tr * tr / T(12) + off / T(4) + (d01 * d01 + d02 * d02 + d12 * d12) / T(24));
}

// ---------------------------------------------------------------- exact calculus pathways

/// Algebra-valued connection coefficients Gamma^i_lk, indexed [i][l][k].
using AlgConnection = std::array<std::array<std::array<AlgElem, 3>, 3>, 3>;

/// Generalised braiding sigma(s^i (x) s^j) for nabla s^i = -1/2 Gamma^i_lk s^l (x) s^k with
/// algebra-valued Gamma (1-based i, j).
TensorForm sigma(const AlgConnection& gamma_up, int i, int j);

/// nabla s^i = -1/2 Gamma^i_jk s^j (x) s^k as tensor forms (entry i-1 for s^i).
std::array<TensorForm, 3> connection_tensors(const Arr3<Rational>& gamma_up);

/// R(s^i) = rho^i_jk eps_jmn s^m ^ s^n (x) s^k built from curvature coefficients.
std::array<TensorForm, 3> curvature_from_rho(const Arr3<Rational>& rho);

/// R = (d (x) id - id ^ nabla) nabla computed in the exterior algebra, checked
/// against the rho contraction; throws std::logic_error on disagreement.
std::array<TensorForm, 3> curvature_2form(const Connection3<Rational>& c, const Metric3<Rational>& g);

}  // namespace fuzzyqrg
