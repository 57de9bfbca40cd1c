#include "fuzzyqrg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fuzzyqrg {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q;
    try {
      q = Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad rational literal '" + text + "'");
    }
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent.
  std::string mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    try {
      exp10 = std::stol(s.substr(epos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + text + "'");
    }
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+") {
    throw std::invalid_argument("bad rational literal '" + text + "'");
  }
  if (mant[0] == '+') mant.erase(0, 1);
  mpz_class n;
  if (n.set_str(mant, 10) != 0) throw std::invalid_argument("bad rational literal '" + text + "'");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 < 0 ? Rational(n, p) : Rational(n * p);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- GaussRational

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm2();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussRational::str() const {
  if (is_zero()) return "0";
  if (is_real()) return re_.get_str();
  auto imag = [](const Rational& r) {
    std::string s;
    Rational a = abs(r);
    if (sgn(r) < 0) s += "-";
    if (a.get_num() != 1) s += a.get_num().get_str();
    s += "i";
    if (a.get_den() != 1) s += "/" + a.get_den().get_str();
    return s;
  };
  if (sgn(re_) == 0) return imag(im_);
  std::string im = imag(im_);
  if (im[0] != '-') im = "+" + im;
  return "(" + re_.get_str() + im + ")";
}

// ---------------------------------------------------------------- LpPoly

LpPoly::LpPoly(GaussRational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

LpPoly::LpPoly(std::vector<GaussRational> coeffs) : c_(std::move(coeffs)) { trim(); }

void LpPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LpPoly LpPoly::operator-() const {
  LpPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LpPoly& LpPoly::operator+=(const LpPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

LpPoly& LpPoly::operator-=(const LpPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

LpPoly operator*(const LpPoly& a, const LpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return LpPoly(std::move(out));
}

LpPoly LpPoly::scaled(const GaussRational& s) const {
  if (s.is_zero()) return {};
  LpPoly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

void LpPoly::divmod(const LpPoly& a, const LpPoly& b, LpPoly& q, LpPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  r = a;
  q = LpPoly();
  if (a.degree() < b.degree()) return;
  std::vector<GaussRational> qc(a.c_.size() - b.c_.size() + 1);
  GaussRational inv_lead = GaussRational(1) / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
    GaussRational f = r.lead() * inv_lead;
    qc[shift] = f;
    for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[k + shift] -= f * b.c_[k];
    r.trim();
  }
  q = LpPoly(std::move(qc));
}

LpPoly LpPoly::gcd(LpPoly a, LpPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return LpPoly(GaussRational(1));
    LpPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.is_zero() ? LpPoly() : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

LpPoly LpPoly::exact_div(const LpPoly& a, const LpPoly& b) {
  LpPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

LpPoly LpPoly::monic() const {
  if (is_zero() || lead() == GaussRational(1)) return *this;
  return scaled(GaussRational(1) / lead());
}

LpPoly LpPoly::conj() const {
  LpPoly r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

std::complex<double> LpPoly::eval(std::complex<double> v) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + it->to_complex();
  return acc;
}

std::string LpPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const GaussRational& c = c_[k];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "lp" : "lp^" + std::to_string(k));
    std::string cs = c.str();
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (!mono.empty()) {
      if (cs == "1") cs = mono;
      else cs += "*" + mono;
    }
    if (out.empty()) out = neg ? "-" + cs : cs;
    else out += (neg ? " - " : " + ") + cs;
  }
  return out;
}

// ---------------------------------------------------------------- ParamScalar

ParamScalar::ParamScalar(LpPoly num, LpPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  canonicalize();
}

void ParamScalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = LpPoly(GaussRational(1));
    return;
  }
  if (den_.degree() > 0 && num_.degree() > 0) {
    LpPoly g = LpPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = LpPoly::exact_div(num_, g);
      den_ = LpPoly::exact_div(den_, g);
    }
  }
  if (!(den_.lead() == GaussRational(1))) {
    GaussRational s = GaussRational(1) / den_.lead();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() > 0) canonicalize();
    else if (num_.is_zero()) den_ = LpPoly(GaussRational(1));
    return *this;
  }
  LpPoly g = LpPoly::gcd(den_, o.den_);
  LpPoly d_other = LpPoly::exact_div(o.den_, g);
  LpPoly d_this = LpPoly::exact_div(den_, g);
  num_ = num_ * d_other + o.num_ * d_this;
  den_ = den_ * d_other;
  canonicalize();
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) { return *this += -o; }

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = ParamScalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  LpPoly g1 = LpPoly::gcd(num_, o.den_);
  LpPoly g2 = LpPoly::gcd(o.num_, den_);
  LpPoly a = g1.degree() > 0 ? LpPoly::exact_div(num_, g1) : num_;
  LpPoly d = g1.degree() > 0 ? LpPoly::exact_div(o.den_, g1) : o.den_;
  LpPoly c = g2.degree() > 0 ? LpPoly::exact_div(o.num_, g2) : o.num_;
  LpPoly b = g2.degree() > 0 ? LpPoly::exact_div(den_, g2) : den_;
  num_ = a * c;
  den_ = b * d;
  if (!(den_.lead() == GaussRational(1))) {
    GaussRational s = GaussRational(1) / den_.lead();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }
  return *this;
}

ParamScalar& ParamScalar::operator/=(const ParamScalar& o) { return *this *= o.inv(); }

ParamScalar ParamScalar::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero ParamScalar");
  return ParamScalar(den_, num_);
}

ParamScalar ParamScalar::star() const { return ParamScalar(num_.conj(), den_.conj()); }

std::complex<double> ParamScalar::eval(double v) const {
  std::complex<double> d = den_.eval(v);
  if (d == 0.0) throw std::domain_error("ParamScalar evaluated at a pole lp=" + std::to_string(v));
  return num_.eval(v) / d;
}

std::string ParamScalar::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace fuzzyqrg
