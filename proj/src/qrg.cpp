#include "fuzzyqrg/qrg.hpp"

namespace fuzzyqrg {

TensorForm sigma(const AlgConnection& gamma_up, int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3) throw std::invalid_argument("basis index must be 1, 2 or 3");
  const ParamScalar lp = ParamScalar::lp();
  const ParamScalar inv_2ilp = (ParamScalar(GaussRational(Rational(0), Rational(2))) * lp).inv();
  const ParamScalar prefactor = (ParamScalar(2) * (ParamScalar(1) - lp * lp)).inv();

  TensorForm out = TensorForm::basis(basis_of(j), i);
  for (int l = 1; l <= 3; ++l) {
    for (int k = 1; k <= 3; ++k) {
      const AlgElem& g = gamma_up[i - 1][l - 1][k - 1];
      if (g.is_zero()) continue;
      AlgElem acc;
      for (int n = 1; n <= 3; ++n) {
        AlgElem c = commutator(g, AlgElem::x(n));
        if (c.is_zero()) continue;
        acc += product(product(AlgElem::x(j), AlgElem::x(n)), c) * inv_2ilp;
      }
      for (int m = 1; m <= 3; ++m) {
        AlgElem c = commutator(g, AlgElem::x(m));
        if (c.is_zero()) continue;
        for (int n = 1; n <= 3; ++n) {
          int e = levi_civita(j, m, n);
          if (e != 0) acc += product(c, AlgElem::x(n)) * ParamScalar(e);
        }
      }
      out += TensorForm::basis(basis_of(l), k, acc * prefactor);
    }
  }
  return out;
}

std::array<TensorForm, 3> connection_tensors(const Arr3<Rational>& gamma_up) {
  std::array<TensorForm, 3> out{TensorForm(1), TensorForm(1), TensorForm(1)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Rational v = -gamma_up[i][j][k] / 2;
        if (sgn(v) == 0) continue;
        out[i] += TensorForm::basis(basis_of(j + 1), k + 1, AlgElem(ParamScalar(v)));
      }
  return out;
}

std::array<TensorForm, 3> curvature_from_rho(const Arr3<Rational>& rho) {
  std::array<TensorForm, 3> out{TensorForm(2), TensorForm(2), TensorForm(2)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (sgn(rho[i][j][k]) == 0) continue;
        // eps_jmn s^m ^ s^n = 2 s^m ^ s^n for the cyclic pair (m, n) following j
        int m = (j + 1) % 3, n = (j + 2) % 3;
        FormBasis b = static_cast<FormBasis>(basis_of(m + 1) | basis_of(n + 1));
        int sign = m < n ? 1 : -1;
        Rational v = rho[i][j][k] * 2 * sign;
        out[i] += TensorForm::basis(b, k + 1, AlgElem(ParamScalar(v)));
      }
  return out;
}

std::array<TensorForm, 3> curvature_2form(const Connection3<Rational>& c, const Metric3<Rational>& g) {
  Arr3<Rational> up = raise_first(c, g);
  std::array<TensorForm, 3> nabla = connection_tensors(up);
  std::array<TensorForm, 3> out{TensorForm(2), TensorForm(2), TensorForm(2)};
  for (int i = 0; i < 3; ++i) {
    TensorForm r = d_left(nabla[i]);
    for (const auto& [key, coeff] : nabla[i].components()) {
      r -= wedge_left(DiffForm::basis(key.first, coeff), nabla[key.second - 1]);
    }
    out[i] = r;
  }
  CurvatureData<Rational> data = curvature(c, g);
  std::array<TensorForm, 3> expected = curvature_from_rho(data.rho);
  for (int i = 0; i < 3; ++i) {
    if (!(out[i] == expected[i])) {
      throw std::logic_error("curvature 2-form disagrees with rho contraction for s^" + std::to_string(i + 1));
    }
  }
  return out;
}

}  // namespace fuzzyqrg
