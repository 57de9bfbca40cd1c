#pragma once

// Free 3D exterior algebra over the fuzzy sphere on the central Grassmann basis
// s^1, s^2, s^3, with d x_i = eps_ijk x_j s^k and d s^i = -1/2 eps_ijk s^j ^ s^k.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "fuzzyqrg/algebra.hpp"

namespace fuzzyqrg {

/// Subset of {1,2,3} as a bitmask (bit i-1 set for s^i); always stored in increasing order.
using FormBasis = std::uint8_t;

constexpr FormBasis basis_of(int i) { return static_cast<FormBasis>(1u << (i - 1)); }
int basis_degree(FormBasis b);
std::string basis_name(FormBasis b);

class DiffForm {
 public:
  using Components = std::map<FormBasis, AlgElem>;

  explicit DiffForm(int degree = 0);
  /// Degree-0 form from an algebra element.
  static DiffForm function(const AlgElem& a);
  /// Basis 1-form s^i.
  static DiffForm s(int i);
  /// coeff * s^{i1} ^ ... for a single basis element.
  static DiffForm basis(FormBasis b, const AlgElem& coeff = AlgElem(1));

  int degree() const { return degree_; }
  const Components& components() const { return comps_; }
  AlgElem component(FormBasis b) const;
  bool is_zero() const { return comps_.empty(); }
  /// The algebra element of a degree-0 form.
  AlgElem as_function() const;

  DiffForm operator-() const;
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  /// a * omega and omega * a; the basis is central so only coefficients move.
  friend DiffForm operator*(const AlgElem& a, const DiffForm& w);
  friend DiffForm operator*(const DiffForm& w, const AlgElem& a);
  friend DiffForm operator*(const ParamScalar& s, const DiffForm& w);

  std::string str() const;

 private:
  void add(FormBasis b, const AlgElem& c);
  int degree_;
  Components comps_;
};

DiffForm wedge(const DiffForm& w, const DiffForm& e);
DiffForm d(const DiffForm& w);
DiffForm d(const AlgElem& a);
/// Coefficient functions of d f on the basis s^i: d f = (partial_i f) s^i.
std::array<AlgElem, 3> partials(const AlgElem& f);
/// Conjugates coefficients; the basis forms are fixed.
DiffForm star(const DiffForm& w);
/// theta = (1/(2 i lp)) x_i s^i.
DiffForm theta();
/// Reconstructs s^l from the d x_i via the sphere relation.
DiffForm s_from_dx(int l);

/// Element of Omega^k (x)_A Omega^1, k in {1, 2}, on the free basis s^I (x) s^j.
class TensorForm {
 public:
  using Key = std::pair<FormBasis, int>;
  using Components = std::map<Key, AlgElem>;

  explicit TensorForm(int left_degree = 1);

  static TensorForm basis(FormBasis left, int right, const AlgElem& coeff = AlgElem(1));

  int left_degree() const { return left_degree_; }
  const Components& components() const { return comps_; }
  AlgElem component(FormBasis left, int right) const;
  bool is_zero() const { return comps_.empty(); }

  TensorForm operator-() const;
  TensorForm& operator+=(const TensorForm& o);
  TensorForm& operator-=(const TensorForm& o);
  friend TensorForm operator+(TensorForm a, const TensorForm& b) { return a += b; }
  friend TensorForm operator-(TensorForm a, const TensorForm& b) { return a -= b; }
  friend TensorForm operator*(const AlgElem& a, const TensorForm& t);
  friend TensorForm operator*(const ParamScalar& s, const TensorForm& t);
  friend bool operator==(const TensorForm& a, const TensorForm& b) {
    return a.left_degree_ == b.left_degree_ && a.comps_ == b.comps_;
  }

  std::string str() const;

 private:
  friend TensorForm tensor(const DiffForm& w, const DiffForm& e);
  void add(const Key& k, const AlgElem& c);
  int left_degree_;
  Components comps_;
};

/// w (x) e for w of degree 1 or 2 and e of degree 1.
TensorForm tensor(const DiffForm& w, const DiffForm& e);
/// (d (x) id) applied to a tensor with a degree-1 left factor.
TensorForm d_left(const TensorForm& t);
/// w ^ t: wedges a 1-form into the left factor of a degree-1 tensor.
TensorForm wedge_left(const DiffForm& w, const TensorForm& t);

}  // namespace fuzzyqrg
