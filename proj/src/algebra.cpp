#include "fuzzyqrg/algebra.hpp"

#include <atomic>
#include <stdexcept>
#include <unordered_map>

namespace fuzzyqrg {

namespace {

std::atomic<int> g_max_degree{24};

const ParamScalar& two_i_lp() {
  static const ParamScalar v = ParamScalar(GaussRational(Rational(0), Rational(2))) * ParamScalar::lp();
  return v;
}

const ParamScalar& casimir() {
  static const ParamScalar v = ParamScalar(1) - ParamScalar::lp() * ParamScalar::lp();
  return v;
}

void check_degree(int degree) {
  if (degree > g_max_degree.load(std::memory_order_relaxed)) {
    throw std::domain_error("fuzzy algebra degree guard exceeded (degree " + std::to_string(degree) +
                            " > " + std::to_string(g_max_degree.load()) + ")");
  }
}

struct MonomialGenHash {
  std::size_t operator()(const std::pair<Monomial, int>& k) const {
    const auto& m = k.first;
    return (static_cast<std::size_t>(m.a) * 1000003u) ^ (static_cast<std::size_t>(m.b) * 10007u) ^
           (static_cast<std::size_t>(m.c) * 101u) ^ static_cast<std::size_t>(k.second);
  }
};

struct MonomialGenEq {
  bool operator()(const std::pair<Monomial, int>& l, const std::pair<Monomial, int>& r) const {
    return l.first == r.first && l.second == r.second;
  }
};

AlgElem monomial_times_generator(const Monomial& m, int g);

// Rewriting rules, right-multiplying a normal-ordered monomial by one generator:
//   x3 x3 -> (1 - lp^2) - x1^2 - x2^2
//   x3 x2 -> x2 x3 - 2 i lp x1
//   x3 x1 -> x1 x3 + 2 i lp x2
//   x2 x1 -> x1 x2 - 2 i lp x3
// Every correction term has strictly lower degree or fewer inversions.
AlgElem compute_monomial_times_generator(const Monomial& m, int g) {
  check_degree(m.degree() + 1);
  switch (g) {
    case 3: {
      if (m.c == 0) return AlgElem::monomial({m.a, m.b, 1});
      Monomial base{m.a, m.b, 0};
      AlgElem out = AlgElem::monomial(base, casimir());
      out -= monomial_times_generator(base, 1).times_generator(1);
      out -= AlgElem::monomial({m.a, m.b + 2, 0});
      return out;
    }
    case 2: {
      if (m.c == 0) return AlgElem::monomial({m.a, m.b + 1, 0});
      AlgElem out = AlgElem::monomial({m.a, m.b + 1, 1});
      out -= monomial_times_generator({m.a, m.b, 0}, 1) * two_i_lp();
      return out;
    }
    case 1: {
      if (m.c == 1) {
        AlgElem out = monomial_times_generator({m.a, m.b, 0}, 1).times_generator(3);
        out += AlgElem::monomial({m.a, m.b + 1, 0}, two_i_lp());
        return out;
      }
      if (m.b == 0) return AlgElem::monomial({m.a + 1, 0, 0});
      AlgElem out = monomial_times_generator({m.a, m.b - 1, 0}, 1).times_generator(2);
      out -= AlgElem::monomial({m.a, m.b - 1, 1}, two_i_lp());
      return out;
    }
    default:
      throw std::invalid_argument("generator index must be 1, 2 or 3");
  }
}

AlgElem monomial_times_generator(const Monomial& m, int g) {
  thread_local std::unordered_map<std::pair<Monomial, int>, AlgElem, MonomialGenHash, MonomialGenEq> cache;
  auto key = std::make_pair(m, g);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  AlgElem r = compute_monomial_times_generator(m, g);
  cache.emplace(key, r);
  return r;
}

}  // namespace

int max_algebra_degree() { return g_max_degree.load(); }

void set_max_algebra_degree(int degree) {
  if (degree < 2) throw std::invalid_argument("degree guard must be at least 2");
  g_max_degree.store(degree);
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}

AlgElem::AlgElem(ParamScalar c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

AlgElem AlgElem::x(int i) {
  switch (i) {
    case 1: return monomial({1, 0, 0});
    case 2: return monomial({0, 1, 0});
    case 3: return monomial({0, 0, 1});
    default: throw std::invalid_argument("generator index must be 1, 2 or 3");
  }
}

AlgElem AlgElem::monomial(Monomial m, ParamScalar coeff) {
  if (m.a < 0 || m.b < 0 || m.c < 0 || m.c > 1) throw std::invalid_argument("monomial not in normal form");
  AlgElem r;
  if (!coeff.is_zero()) r.terms_.emplace(m, std::move(coeff));
  return r;
}

int AlgElem::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

ParamScalar AlgElem::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ParamScalar() : it->second;
}

void AlgElem::add_term(const Monomial& m, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgElem AlgElem::operator-() const {
  AlgElem r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AlgElem& AlgElem::operator*=(const ParamScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (s.is_one()) return *this;
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

AlgElem& AlgElem::operator*=(const AlgElem& o) { return *this = product(*this, o); }

AlgElem operator*(const AlgElem& u, const AlgElem& v) { return product(u, v); }

AlgElem AlgElem::times_generator(int g) const {
  AlgElem out;
  for (const auto& [m, c] : terms_) {
    AlgElem t = monomial_times_generator(m, g);
    for (const auto& [m2, c2] : t.terms_) out.add_term(m2, c2 * c);
  }
  return out;
}

AlgElem product(const AlgElem& u, const AlgElem& v) {
  if (u.is_zero() || v.is_zero()) return {};
  check_degree(u.degree() + v.degree());
  AlgElem out;
  for (const auto& [m, c] : v.terms()) {
    AlgElem t = u;
    for (int k = 0; k < m.a; ++k) t = t.times_generator(1);
    for (int k = 0; k < m.b; ++k) t = t.times_generator(2);
    for (int k = 0; k < m.c; ++k) t = t.times_generator(3);
    out += t * c;
  }
  return out;
}

AlgElem commutator(const AlgElem& u, const AlgElem& v) { return product(u, v) - product(v, u); }

AlgElem star(const AlgElem& u) {
  AlgElem out;
  for (const auto& [m, c] : u.terms()) {
    AlgElem t(c.star());
    for (int k = 0; k < m.c; ++k) t = t.times_generator(3);
    for (int k = 0; k < m.b; ++k) t = t.times_generator(2);
    for (int k = 0; k < m.a; ++k) t = t.times_generator(1);
    out += t;
  }
  return out;
}

AlgElem power(const AlgElem& u, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  AlgElem r(1);
  for (int k = 0; k < n; ++k) r = product(r, u);
  return r;
}

std::string AlgElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    auto append = [&mono](const char* name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += " ";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    append("x1", m.a);
    append("x2", m.b);
    append("x3", m.c);
    std::string term = "(" + c.str() + ")";
    if (!mono.empty()) term += " * " + mono;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace fuzzyqrg
