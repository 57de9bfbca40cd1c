#include "fuzzyqrg/monopole.hpp"

#include <map>
#include <stdexcept>

#include "fuzzyqrg/linsolve.hpp"

namespace fuzzyqrg::monopole {

namespace {

const ParamScalar kHalf = ParamScalar(Rational(1, 2));

int common_degree(const FormMatrix& m) {
  int deg = -1;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) deg = std::max(deg, m(r, c).degree());
  return deg;
}

void check_product_shape(int lc, int rr) {
  if (lc != rr) throw std::invalid_argument("matrix shapes do not match");
}

}  // namespace

Coords coords() {
  const ParamScalar lp = ParamScalar::lp();
  return {kHalf * (AlgElem::x(3) + AlgElem(ParamScalar(1) + lp)), kHalf * (AlgElem::x(1) + ParamScalar::i() * AlgElem::x(2))};
}

AlgMatrix identity2() { return AlgMatrix(2, 2, {AlgElem(1), AlgElem(), AlgElem(), AlgElem(1)}); }

AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b) {
  check_product_shape(a.cols(), b.rows());
  AlgMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      for (int k = 0; k < a.cols(); ++k) out(r, c) += product(a(r, k), b(k, c));
  return out;
}

AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b) {
  AlgMatrix out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b) { return a + ParamScalar(-1) * b; }

AlgMatrix operator*(const ParamScalar& s, const AlgMatrix& a) {
  AlgMatrix out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

FormMatrix operator*(const FormMatrix& a, const AlgMatrix& b) {
  check_product_shape(a.cols(), b.rows());
  FormMatrix out(a.rows(), b.cols(), DiffForm(common_degree(a)));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      for (int k = 0; k < a.cols(); ++k) out(r, c) += a(r, k) * b(k, c);
  return out;
}

FormMatrix operator*(const AlgMatrix& a, const FormMatrix& b) {
  check_product_shape(a.cols(), b.rows());
  FormMatrix out(a.rows(), b.cols(), DiffForm(common_degree(b)));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      for (int k = 0; k < a.cols(); ++k) out(r, c) += a(r, k) * b(k, c);
  return out;
}

FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) { return a + ParamScalar(-1) * b; }

FormMatrix operator*(const ParamScalar& s, const FormMatrix& a) {
  FormMatrix out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

FormMatrix wedge(const FormMatrix& a, const FormMatrix& b) {
  check_product_shape(a.cols(), b.rows());
  FormMatrix out(a.rows(), b.cols(), DiffForm(common_degree(a) + common_degree(b)));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      for (int k = 0; k < a.cols(); ++k) out(r, c) += wedge(a(r, k), b(k, c));
  return out;
}

FormMatrix d(const AlgMatrix& a) {
  FormMatrix out(a.rows(), a.cols(), DiffForm(1));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = d(a(r, c));
  return out;
}

FormMatrix dagger(const FormMatrix& a) {
  FormMatrix out(a.cols(), a.rows(), DiffForm(common_degree(a)));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(c, r) = star(a(r, c));
  return out;
}

FormMatrix times_form(const AlgMatrix& a, const DiffForm& w) {
  FormMatrix out(a.rows(), a.cols(), DiffForm(w.degree()));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * w;
  return out;
}

AlgMatrix component(const FormMatrix& a, FormBasis b) {
  AlgMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c).component(b);
  return out;
}

AlgMatrix projector() {
  const AlgElem one_lp(ParamScalar(1) + ParamScalar::lp());
  const AlgElem x1 = AlgElem::x(1), x2 = AlgElem::x(2), x3 = AlgElem::x(3);
  const ParamScalar i = ParamScalar::i();
  return kHalf * AlgMatrix(2, 2, {one_lp - x3, x1 + i * x2, x1 - i * x2, one_lp + x3});
}

std::vector<AlgMatrix> projective_basis() {
  Coords c = coords();
  const AlgElem one_lp(ParamScalar(1) + ParamScalar::lp());
  return {AlgMatrix(1, 2, {one_lp - c.x, c.z}), AlgMatrix(1, 2, {star(c.z), c.x})};
}

bool basis_relation_check() {
  Coords c = coords();
  auto e = projective_basis();
  const AlgElem lhs_factor = c.x - AlgElem(ParamScalar::lp());
  for (int k = 0; k < 2; ++k) {
    if (!(product(lhs_factor, e[0](0, k)) == product(c.z, e[1](0, k)))) return false;
  }
  return true;
}

FormMatrix q_matrix() {
  const ParamScalar i = ParamScalar::i();
  const DiffForm s1 = DiffForm::s(1), s2 = DiffForm::s(2), s3 = DiffForm::s(3);
  return FormMatrix(2, 2, {-s3, s1 + i * s2, s1 - ParamScalar(i) * s2, s3});
}

FormMatrix grassmann_closed_form() {
  const ParamScalar lp = ParamScalar::lp(), one(1), i = ParamScalar::i();
  const AlgMatrix P = projector();
  const DiffForm th = theta();
  FormMatrix out = (kHalf * (one + lp)) * d(P);
  out = out + lp * times_form(P, th);
  out = out + (i * (one - lp * lp) * ParamScalar(Rational(1, 4))) * q_matrix();
  out = out - (kHalf * lp * (one - lp)) * times_form(identity2(), th);
  return out;
}

FormMatrix grassmann_connection() {
  const AlgMatrix P = projector();
  FormMatrix computed = d(P) * P;
  FormMatrix expected = grassmann_closed_form();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      if (!(computed(r, c) == expected(r, c))) {
        throw std::logic_error("(dP)P disagrees with the closed form at entry (" + std::to_string(r + 1) + "," +
                               std::to_string(c + 1) + ")");
      }
    }
  return computed;
}

AlgMatrix expected_f12() {
  const AlgElem x3 = AlgElem::x(3), lp(ParamScalar::lp());
  return ParamScalar(2) * (AlgMatrix(2, 2, {x3 - lp, AlgElem(), AlgElem(), x3 + lp}) * projector());
}

AlgMatrix expected_f31() {
  const AlgElem x2 = AlgElem::x(2);
  const AlgElem ilp(ParamScalar::i() * ParamScalar::lp());
  return ParamScalar(2) * (AlgMatrix(2, 2, {x2, ilp, -ilp, x2}) * projector());
}

namespace {

// Solves f = 2 M P for M with entries in span{1, x1, x2, x3}; throws if no such M exists.
AlgMatrix factor_through_projector(const AlgMatrix& f, const AlgMatrix& P) {
  std::vector<AlgElem> gens = {AlgElem(1), AlgElem::x(1), AlgElem::x(2), AlgElem::x(3)};
  AlgMatrix M(2, 2);
  for (int a = 0; a < 2; ++a) {
    // unknown (c, k): coefficient of gens[k] in M(a, c)
    std::map<std::pair<int, Monomial>, std::vector<ParamScalar>> rows;
    std::map<std::pair<int, Monomial>, ParamScalar> rhs;
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 4; ++k) {
        const int col = c * 4 + k;
        for (int b = 0; b < 2; ++b) {
          AlgElem term = ParamScalar(2) * product(gens[k], P(c, b));
          for (const auto& [m, coeff] : term.terms()) {
            auto& row = rows[{b, m}];
            row.resize(8);
            row[col] += coeff;
          }
        }
      }
    for (int b = 0; b < 2; ++b)
      for (const auto& [m, coeff] : f(a, b).terms()) {
        rows[{b, m}].resize(8);
        rhs[{b, m}] = coeff;
      }
    std::vector<std::vector<ParamScalar>> A;
    std::vector<ParamScalar> y;
    for (auto& [key, row] : rows) {
      A.push_back(row);
      auto it = rhs.find(key);
      y.push_back(it == rhs.end() ? ParamScalar(0) : it->second);
    }
    LinearSolve<ParamScalar> sol = solve_linear(A, y);
    if (!sol.consistent) throw std::logic_error("f23 does not factor as 2 M P with linear M");
    for (int c = 0; c < 2; ++c) {
      AlgElem entry;
      for (int k = 0; k < 4; ++k) entry += sol.x[c * 4 + k] * gens[k];
      M(a, c) = entry;
    }
  }
  if (!(ParamScalar(2) * (M * P) == f)) throw std::logic_error("f23 factorisation check failed");
  return M;
}

}  // namespace

Curvature monopole_curvature() {
  const AlgMatrix P = projector();
  const FormMatrix dP = d(P);
  FormMatrix two = wedge(dP, dP * P);
  const ParamScalar scale =
      (ParamScalar::i() * (ParamScalar(1) - ParamScalar::lp()) * ParamScalar(Rational(1, 4))).inv();
  Curvature out{scale * component(two, basis_of(1) | basis_of(2)),
                // s3^s1 = -s1^s3
                ParamScalar(-1) * (scale * component(two, basis_of(1) | basis_of(3))),
                scale * component(two, basis_of(2) | basis_of(3)), AlgMatrix(2, 2)};
  if (!(out.f12 == expected_f12())) throw std::logic_error("f12 differs from 2 diag(x3 - lp, x3 + lp) P");
  if (!(out.f31 == expected_f31())) throw std::logic_error("f31 differs from 2 [[x2, i lp], [-i lp, x2]] P");
  out.m23 = factor_through_projector(out.f23, P);
  return out;
}

std::string str(const AlgMatrix& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out += "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "): " +
             (m(r, c).is_zero() ? std::string("0") : m(r, c).str()) + "\n";
  return out;
}

std::string str(const FormMatrix& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out += "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "): " + m(r, c).str() + "\n";
  return out;
}

}  // namespace fuzzyqrg::monopole
