#pragma once

// Charge-1 monopole on the fuzzy sphere: projector, projective basis, Grassmann
// connection and its curvature, all over symbolic lp.

#include <string>
#include <vector>

#include "fuzzyqrg/calculus.hpp"

namespace fuzzyqrg::monopole {

template <class E>
class Matrix {
 public:
  Matrix(int rows, int cols, const E& fill = E()) : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
  Matrix(int rows, int cols, std::vector<E> entries) : rows_(rows), cols_(cols), e_(std::move(entries)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// 0-based entry access.
  E& operator()(int r, int c) { return e_[r * cols_ + c]; }
  const E& operator()(int r, int c) const { return e_[r * cols_ + c]; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  int rows_, cols_;
  std::vector<E> e_;
};

using AlgMatrix = Matrix<AlgElem>;
using FormMatrix = Matrix<DiffForm>;

struct Coords {
  AlgElem x;
  AlgElem z;
};

/// x = (x3 + 1 + lp)/2, z = (x1 + i x2)/2.
Coords coords();

AlgMatrix identity2();
AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b);
AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b);
AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b);
AlgMatrix operator*(const ParamScalar& s, const AlgMatrix& a);
FormMatrix operator*(const FormMatrix& a, const AlgMatrix& b);
FormMatrix operator*(const AlgMatrix& a, const FormMatrix& b);
FormMatrix operator+(const FormMatrix& a, const FormMatrix& b);
FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);
FormMatrix operator*(const ParamScalar& s, const FormMatrix& a);
/// Matrix product with entries multiplied by the wedge product.
FormMatrix wedge(const FormMatrix& a, const FormMatrix& b);
FormMatrix d(const AlgMatrix& a);
/// Entrywise form star followed by transposition.
FormMatrix dagger(const FormMatrix& a);
/// A function matrix times a single form.
FormMatrix times_form(const AlgMatrix& a, const DiffForm& w);
AlgMatrix component(const FormMatrix& a, FormBasis b);

/// P = 1/2 [[1 + lp - x3, x1 + i x2], [x1 - i x2, 1 + lp + x3]].
AlgMatrix projector();

/// Rows e^1 = (1 + lp - x, z) and e^2 = (z*, x) of the projective basis.
std::vector<AlgMatrix> projective_basis();

/// (x - lp) e^1 = z e^2 componentwise.
bool basis_relation_check();

/// Q = [[-s3, s1 + i s2], [s1 - i s2, s3]].
FormMatrix q_matrix();

/// ((1+lp)/2) dP + lp P theta + i((1 - lp^2)/4) Q - (lp(1 - lp)/2) theta Id.
FormMatrix grassmann_closed_form();

/// (dP)P from the calculus; throws std::logic_error unless it equals grassmann_closed_form().
FormMatrix grassmann_connection();

struct Curvature {
  AlgMatrix f12, f31, f23;
  /// f23 = 2 m23 P with m23 entries in span{1, x1, x2, x3}.
  AlgMatrix m23;
};

/// 2 diag(x3 - lp, x3 + lp) P.
AlgMatrix expected_f12();
/// 2 [[x2, i lp], [-i lp, x2]] P.
AlgMatrix expected_f31();

/// Coefficients of dP ^ (dP)P = (i(1 - lp)/4)(f12 s1^s2 + f31 s3^s1 + f23 s2^s3).
/// Throws std::logic_error if f12 or f31 differ from the factorised forms or f23 does not factor.
Curvature monopole_curvature();

std::string str(const AlgMatrix& m);
std::string str(const FormMatrix& m);

}  // namespace fuzzyqrg::monopole
