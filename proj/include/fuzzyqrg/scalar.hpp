#pragma once

// Exact coefficient field: Gaussian rationals Q(i) and rational functions
// of the deformation parameter lp over Q(i).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fuzzyqrg {

using Rational = mpq_class;

/// Parse "p", "p/q" or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical text of a rational, e.g. "-3/4".
std::string to_string(const Rational& q);

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Dense univariate polynomial in lp with Gaussian-rational coefficients,
/// lowest degree first, no trailing zeros.
class LpPoly {
 public:
  LpPoly() = default;
  LpPoly(GaussRational c);  // NOLINT(google-explicit-constructor)
  explicit LpPoly(std::vector<GaussRational> coeffs);

  static LpPoly lp() { return LpPoly({GaussRational(0), GaussRational(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == GaussRational(1); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const GaussRational& lead() const { return c_.back(); }
  const std::vector<GaussRational>& coeffs() const { return c_; }
  GaussRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRational(0); }

  LpPoly operator-() const;
  LpPoly& operator+=(const LpPoly& o);
  LpPoly& operator-=(const LpPoly& o);
  friend LpPoly operator+(LpPoly a, const LpPoly& b) { return a += b; }
  friend LpPoly operator-(LpPoly a, const LpPoly& b) { return a -= b; }
  friend LpPoly operator*(const LpPoly& a, const LpPoly& b);
  LpPoly scaled(const GaussRational& s) const;
  friend bool operator==(const LpPoly& a, const LpPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; `b` must be nonzero.
  static void divmod(const LpPoly& a, const LpPoly& b, LpPoly& q, LpPoly& r);
  /// Monic greatest common divisor (zero iff both inputs are zero).
  static LpPoly gcd(LpPoly a, LpPoly b);
  /// Exact quotient a/b; throws if b does not divide a.
  static LpPoly exact_div(const LpPoly& a, const LpPoly& b);

  LpPoly monic() const;
  LpPoly conj() const;
  std::complex<double> eval(std::complex<double> v) const;
  std::string str() const;

 private:
  void trim();
  std::vector<GaussRational> c_;
};

/// Element of Q(i)(lp), kept as num/den with gcd(num, den) = 1 and den monic.
class ParamScalar {
 public:
  ParamScalar() : num_(), den_(GaussRational(1)) {}
  ParamScalar(long v) : ParamScalar(GaussRational(v)) {}  // NOLINT(google-explicit-constructor)
  ParamScalar(Rational v) : ParamScalar(GaussRational(std::move(v))) {}  // NOLINT
  ParamScalar(GaussRational v) : num_(std::move(v)), den_(GaussRational(1)) {}  // NOLINT
  ParamScalar(LpPoly num, LpPoly den);

  static ParamScalar lp() { return ParamScalar(LpPoly::lp(), LpPoly(GaussRational(1))); }
  static ParamScalar i() { return ParamScalar(GaussRational::i()); }

  const LpPoly& num() const { return num_; }
  const LpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  ParamScalar operator-() const;
  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  ParamScalar& operator*=(const ParamScalar& o);
  ParamScalar& operator/=(const ParamScalar& o);
  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
  friend ParamScalar operator/(ParamScalar a, const ParamScalar& b) { return a /= b; }
  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Multiplicative inverse; throws std::domain_error for zero.
  ParamScalar inv() const;
  /// Conjugates every coefficient; lp is real and stays fixed.
  ParamScalar star() const;
  /// Value at lp = v; throws std::domain_error at a pole.
  std::complex<double> eval(double v) const;
  /// "(num)/(den)" with lp spelled "lp"; just "num" when den = 1.
  std::string str() const;

 private:
  void canonicalize();
  LpPoly num_;
  LpPoly den_;
};

}  // namespace fuzzyqrg
