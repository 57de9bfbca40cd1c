#pragma once

// The unit fuzzy sphere: generators x1, x2, x3 with [x_i, x_j] = 2 i lp eps_ijk x_k
// and x1^2 + x2^2 + x3^2 = 1 - lp^2. Elements are stored in the normal-ordered
// basis x1^a x2^b x3^c with c in {0, 1}.

#include <array>
#include <compare>
#include <map>
#include <string>

#include "fuzzyqrg/scalar.hpp"

namespace fuzzyqrg {

struct Monomial {
  int a = 0;
  int b = 0;
  int c = 0;

  int degree() const { return a + b + c; }
  auto operator<=>(const Monomial&) const = default;
};

/// Upper bound on the total degree of any intermediate monomial.
int max_algebra_degree();
void set_max_algebra_degree(int degree);

class AlgElem {
 public:
  using Terms = std::map<Monomial, ParamScalar>;

  AlgElem() = default;
  AlgElem(ParamScalar c);  // NOLINT(google-explicit-constructor)
  AlgElem(long c) : AlgElem(ParamScalar(c)) {}  // NOLINT(google-explicit-constructor)

  /// Generator x_i, i in {1, 2, 3}.
  static AlgElem x(int i);
  /// Normal-ordered basis monomial; requires c <= 1.
  static AlgElem monomial(Monomial m, ParamScalar coeff = ParamScalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// Coefficient of a basis monomial (zero if absent).
  ParamScalar coeff(const Monomial& m) const;

  AlgElem operator-() const;
  AlgElem& operator+=(const AlgElem& o);
  AlgElem& operator-=(const AlgElem& o);
  AlgElem& operator*=(const AlgElem& o);
  AlgElem& operator*=(const ParamScalar& s);
  friend AlgElem operator+(AlgElem u, const AlgElem& v) { return u += v; }
  friend AlgElem operator-(AlgElem u, const AlgElem& v) { return u -= v; }
  friend AlgElem operator*(const AlgElem& u, const AlgElem& v);
  friend AlgElem operator*(AlgElem u, const ParamScalar& s) { return u *= s; }
  friend AlgElem operator*(const ParamScalar& s, AlgElem u) { return u *= s; }
  friend bool operator==(const AlgElem& u, const AlgElem& v) { return u.terms_ == v.terms_; }

  /// Right multiplication by the generator x_g.
  AlgElem times_generator(int g) const;
  /// Canonical rendering "(c) * x1^a x2^b x3^c + ..." sorted by multidegree.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const ParamScalar& c);
  Terms terms_;
};

AlgElem product(const AlgElem& u, const AlgElem& v);
AlgElem commutator(const AlgElem& u, const AlgElem& v);
/// Antilinear anti-homomorphism fixing each x_i.
AlgElem star(const AlgElem& u);
AlgElem power(const AlgElem& u, int n);

/// Levi-Civita symbol on 1-based indices.
int levi_civita(int i, int j, int k);

}  // namespace fuzzyqrg
