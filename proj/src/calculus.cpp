#include "fuzzyqrg/calculus.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace fuzzyqrg {

namespace {

// Sign of s^A ^ s^B relative to the sorted basis element, 0 if they overlap.
int wedge_sign(FormBasis a, FormBasis b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 1; i <= 3; ++i) {
    if (!(b & basis_of(i))) continue;
    for (int j = i + 1; j <= 3; ++j) {
      if (a & basis_of(j)) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// d x_g = sum_{j,k} eps_gjk x_j s^k
const std::array<DiffForm, 3>& d_generators() {
  static const std::array<DiffForm, 3> table = [] {
    std::array<DiffForm, 3> t{DiffForm(1), DiffForm(1), DiffForm(1)};
    for (int g = 1; g <= 3; ++g) {
      for (int j = 1; j <= 3; ++j) {
        for (int k = 1; k <= 3; ++k) {
          int e = levi_civita(g, j, k);
          if (e != 0) t[g - 1] += DiffForm::basis(basis_of(k), AlgElem::x(j) * ParamScalar(e));
        }
      }
    }
    return t;
  }();
  return table;
}

// Leibniz expansion over the word x1^a x2^b x3^c.
DiffForm d_monomial(const Monomial& m) {
  thread_local std::map<Monomial, DiffForm> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  std::vector<int> word;
  for (int k = 0; k < m.a; ++k) word.push_back(1);
  for (int k = 0; k < m.b; ++k) word.push_back(2);
  for (int k = 0; k < m.c; ++k) word.push_back(3);
  DiffForm out(1);
  AlgElem prefix(1);
  for (std::size_t p = 0; p < word.size(); ++p) {
    for (const auto& [basis, coeff] : d_generators()[word[p] - 1].components()) {
      AlgElem t = product(prefix, coeff);
      for (std::size_t q = p + 1; q < word.size(); ++q) t = t.times_generator(word[q]);
      out += DiffForm::basis(basis, t);
    }
    prefix = prefix.times_generator(word[p]);
  }
  cache.emplace(m, out);
  return out;
}

// d of a basis element s^I (no coefficient).
DiffForm d_basis(FormBasis b) {
  int deg = basis_degree(b);
  if (deg == 0) return DiffForm(1);
  if (deg == 1) {
    int i = std::countr_zero(static_cast<unsigned>(b)) + 1;
    DiffForm out(2);
    for (int j = 1; j <= 3; ++j) {
      for (int k = j + 1; k <= 3; ++k) {
        // -1/2 eps_ijk s^j^s^k summed over both orders = -eps_ijk s^j^s^k for j<k
        int e = levi_civita(i, j, k);
        if (e != 0) out += DiffForm::basis(basis_of(j) | basis_of(k), AlgElem(-e));
      }
    }
    return out;
  }
  if (deg == 2) {
    int i = std::countr_zero(static_cast<unsigned>(b)) + 1;
    FormBasis rest = static_cast<FormBasis>(b & ~basis_of(i));
    return wedge(d_basis(basis_of(i)), DiffForm::s(std::countr_zero(static_cast<unsigned>(rest)) + 1)) -
           wedge(DiffForm::s(i), d_basis(rest));
  }
  return DiffForm(4);
}

}  // namespace

int basis_degree(FormBasis b) { return std::popcount(static_cast<unsigned>(b)); }

std::string basis_name(FormBasis b) {
  std::string out;
  for (int i = 1; i <= 3; ++i) {
    if (!(b & basis_of(i))) continue;
    if (!out.empty()) out += "^";
    out += "s" + std::to_string(i);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- DiffForm

DiffForm::DiffForm(int degree) : degree_(degree) {
  if (degree < 0 || degree > 4) throw std::invalid_argument("form degree out of range");
}

DiffForm DiffForm::function(const AlgElem& a) { return basis(0, a); }

DiffForm DiffForm::s(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("basis index must be 1, 2 or 3");
  return basis(basis_of(i));
}

DiffForm DiffForm::basis(FormBasis b, const AlgElem& coeff) {
  DiffForm w(basis_degree(b));
  w.add(b, coeff);
  return w;
}

AlgElem DiffForm::component(FormBasis b) const {
  auto it = comps_.find(b);
  return it == comps_.end() ? AlgElem() : it->second;
}

AlgElem DiffForm::as_function() const {
  if (degree_ != 0) throw std::logic_error("not a degree-0 form");
  return component(0);
}

void DiffForm::add(FormBasis b, const AlgElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

DiffForm DiffForm::operator-() const {
  DiffForm r = *this;
  for (auto& [b, c] : r.comps_) c = -c;
  return r;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  for (const auto& [b, c] : o.comps_) add(b, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) { return *this += -o; }

DiffForm operator*(const AlgElem& a, const DiffForm& w) {
  DiffForm r(w.degree_);
  for (const auto& [b, c] : w.comps_) r.add(b, product(a, c));
  return r;
}

DiffForm operator*(const DiffForm& w, const AlgElem& a) {
  DiffForm r(w.degree_);
  for (const auto& [b, c] : w.comps_) r.add(b, product(c, a));
  return r;
}

DiffForm operator*(const ParamScalar& s, const DiffForm& w) {
  DiffForm r(w.degree_);
  for (const auto& [b, c] : w.comps_) r.add(b, c * s);
  return r;
}

std::string DiffForm::str() const {
  if (comps_.empty()) return "0";
  std::string out;
  for (const auto& [b, c] : comps_) {
    if (!out.empty()) out += " + ";
    out += "[" + c.str() + "]";
    if (b != 0) out += " " + basis_name(b);
  }
  return out;
}

DiffForm wedge(const DiffForm& w, const DiffForm& e) {
  int deg = w.degree() + e.degree();
  if (deg > 3) throw std::invalid_argument("wedge degree exceeds 3");
  DiffForm out(deg);
  for (const auto& [bw, cw] : w.components()) {
    for (const auto& [be, ce] : e.components()) {
      int sign = wedge_sign(bw, be);
      if (sign == 0) continue;
      out += DiffForm::basis(static_cast<FormBasis>(bw | be), product(cw, ce) * ParamScalar(sign));
    }
  }
  return out;
}

DiffForm d(const AlgElem& a) {
  DiffForm out(1);
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() == 0) continue;
    out += c * d_monomial(m);
  }
  return out;
}

DiffForm d(const DiffForm& w) {
  if (w.degree() > 2) throw std::invalid_argument("d is only defined up to degree 2");
  if (w.degree() == 0) return d(w.as_function());
  DiffForm out(w.degree() + 1);
  for (const auto& [b, c] : w.components()) {
    // d(c s^I) = dc ^ s^I + c d(s^I)
    out += wedge(d(c), DiffForm::basis(b));
    out += c * d_basis(b);
  }
  return out;
}

std::array<AlgElem, 3> partials(const AlgElem& f) {
  DiffForm df = d(f);
  return {df.component(basis_of(1)), df.component(basis_of(2)), df.component(basis_of(3))};
}

DiffForm star(const DiffForm& w) {
  DiffForm out(w.degree());
  for (const auto& [b, c] : w.components()) out += DiffForm::basis(b, star(c));
  return out;
}

DiffForm theta() {
  ParamScalar k = (ParamScalar(GaussRational(Rational(0), Rational(2))) * ParamScalar::lp()).inv();
  DiffForm out(1);
  for (int i = 1; i <= 3; ++i) out += DiffForm::basis(basis_of(i), AlgElem::x(i) * k);
  return out;
}

DiffForm s_from_dx(int l) {
  if (l < 1 || l > 3) throw std::invalid_argument("basis index must be 1, 2 or 3");
  ParamScalar inv_2ilp = (ParamScalar(GaussRational(Rational(0), Rational(2))) * ParamScalar::lp()).inv();
  ParamScalar inv_casimir = (ParamScalar(1) - ParamScalar::lp() * ParamScalar::lp()).inv();
  DiffForm acc(1);
  for (int i = 1; i <= 3; ++i) {
    DiffForm dxi = d(AlgElem::x(i));
    acc += inv_2ilp * (product(AlgElem::x(l), AlgElem::x(i)) * dxi);
    for (int m = 1; m <= 3; ++m) {
      int e = levi_civita(l, i, m);
      if (e != 0) acc += ParamScalar(e) * (dxi * AlgElem::x(m));
    }
  }
  return inv_casimir * acc;
}

// ---------------------------------------------------------------- TensorForm

TensorForm::TensorForm(int left_degree) : left_degree_(left_degree) {
  if (left_degree < 1 || left_degree > 2) throw std::invalid_argument("tensor left degree must be 1 or 2");
}

TensorForm TensorForm::basis(FormBasis left, int right, const AlgElem& coeff) {
  TensorForm t(basis_degree(left));
  t.add({left, right}, coeff);
  return t;
}

AlgElem TensorForm::component(FormBasis left, int right) const {
  auto it = comps_.find({left, right});
  return it == comps_.end() ? AlgElem() : it->second;
}

void TensorForm::add(const Key& k, const AlgElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

TensorForm TensorForm::operator-() const {
  TensorForm r = *this;
  for (auto& [k, c] : r.comps_) c = -c;
  return r;
}

TensorForm& TensorForm::operator+=(const TensorForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) left_degree_ = o.left_degree_;
  if (o.left_degree_ != left_degree_) throw std::invalid_argument("adding tensors of different degree");
  for (const auto& [k, c] : o.comps_) add(k, c);
  return *this;
}

TensorForm& TensorForm::operator-=(const TensorForm& o) { return *this += -o; }

TensorForm operator*(const AlgElem& a, const TensorForm& t) {
  TensorForm r(t.left_degree_);
  for (const auto& [k, c] : t.comps_) r.add(k, product(a, c));
  return r;
}

TensorForm operator*(const ParamScalar& s, const TensorForm& t) {
  TensorForm r(t.left_degree_);
  for (const auto& [k, c] : t.comps_) r.add(k, c * s);
  return r;
}

std::string TensorForm::str() const {
  if (comps_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : comps_) {
    if (!out.empty()) out += " + ";
    out += "[" + c.str() + "] " + basis_name(k.first) + " (x) s" + std::to_string(k.second);
  }
  return out;
}

TensorForm tensor(const DiffForm& w, const DiffForm& e) {
  if (w.degree() < 1 || w.degree() > 2) throw std::invalid_argument("left factor must have degree 1 or 2");
  if (e.degree() != 1) throw std::invalid_argument("right factor must be a 1-form");
  TensorForm out(w.degree());
  for (const auto& [bw, cw] : w.components()) {
    for (const auto& [be, ce] : e.components()) {
      int j = std::countr_zero(static_cast<unsigned>(be)) + 1;
      out.add({bw, j}, product(cw, ce));
    }
  }
  return out;
}

TensorForm d_left(const TensorForm& t) {
  if (t.left_degree() != 1) throw std::invalid_argument("d_left needs a degree-1 left factor");
  TensorForm out(2);
  for (const auto& [k, c] : t.components()) {
    out += tensor(d(DiffForm::basis(k.first, c)), DiffForm::s(k.second));
  }
  return out;
}

TensorForm wedge_left(const DiffForm& w, const TensorForm& t) {
  if (w.degree() != 1 || t.left_degree() != 1) throw std::invalid_argument("wedge_left needs degree-1 factors");
  TensorForm out(2);
  for (const auto& [k, c] : t.components()) {
    out += tensor(wedge(w, DiffForm::basis(k.first, c)), DiffForm::s(k.second));
  }
  return out;
}

}  // namespace fuzzyqrg
