#include <complex>

#include "doctest.h"
#include "fuzzyqrg/calculus.hpp"
#include "fuzzyqrg/verify.hpp"

using namespace fuzzyqrg;

TEST_CASE("d x_i = eps_jik x_k s^j") {
  for (int i = 1; i <= 3; ++i) {
    DiffForm expect(1);
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (levi_civita(j, i, k) != 0)
          expect += DiffForm::basis(basis_of(j), ParamScalar(levi_civita(j, i, k)) * AlgElem::x(k));
    CHECK(d(AlgElem::x(i)) == expect);
  }
}

TEST_CASE("partials are inner derivations 1/(2 i lp) [x_i, f]") {
  const ParamScalar inv = (ParamScalar(2) * ParamScalar::i() * ParamScalar::lp()).inv();
  for (const auto& f : verify::basis_monomials(3)) {
    auto p = partials(f);
    for (int i = 1; i <= 3; ++i) CHECK(p[i - 1] == inv * commutator(AlgElem::x(i), f));
  }
}

TEST_CASE("d kills constants and d^2 = 0") {
  CHECK(d(AlgElem(ParamScalar::lp())).is_zero());
  for (const auto& f : verify::basis_monomials(3)) CHECK(d(d(f)).is_zero());
  for (int i = 1; i <= 3; ++i) CHECK(d(d(DiffForm::s(i))).is_zero());
}

TEST_CASE("wedge is graded antisymmetric on the central basis") {
  for (int i = 1; i <= 3; ++i) {
    CHECK(wedge(DiffForm::s(i), DiffForm::s(i)).is_zero());
    for (int j = 1; j <= 3; ++j) CHECK(wedge(DiffForm::s(i), DiffForm::s(j)) == -wedge(DiffForm::s(j), DiffForm::s(i)));
  }
  DiffForm top = wedge(wedge(DiffForm::s(1), DiffForm::s(2)), DiffForm::s(3));
  CHECK(top.degree() == 3);
  CHECK(top == wedge(DiffForm::s(2), wedge(DiffForm::s(3), DiffForm::s(1))));
}

TEST_CASE("graded Leibniz rule for 1-forms") {
  auto fs = verify::basis_monomials(1);
  for (const auto& a : fs)
    for (const auto& b : fs) {
      DiffForm w = a * DiffForm::s(1) + b * DiffForm::s(3);
      DiffForm e = b * DiffForm::s(2);
      CHECK(d(wedge(w, e)) == wedge(d(w), e) - wedge(w, d(e)));
    }
}

TEST_CASE("theta generates d on functions and s^l is recovered") {
  const DiffForm th = theta();
  for (const auto& f : verify::basis_monomials(2)) CHECK(d(f) == th * f - f * th);
  for (int l = 1; l <= 3; ++l) CHECK(s_from_dx(l) == DiffForm::s(l));
}

TEST_CASE("tensor product is balanced over the algebra") {
  const AlgElem x = AlgElem::x(2);
  CHECK(tensor(DiffForm::s(1) * x, DiffForm::s(3)) == tensor(DiffForm::s(1), x * DiffForm::s(3)));
  CHECK(d_left(tensor(DiffForm::s(1), DiffForm::s(2))).left_degree() == 2);
}
