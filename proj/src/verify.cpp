#include "fuzzyqrg/verify.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "fuzzyqrg/monopole.hpp"

namespace fuzzyqrg::verify {

namespace {

using Suite = std::function<void(std::vector<Check>&)>;

void add(std::vector<Check>& out, std::string name, std::string anchor, bool pass, std::string detail = "") {
  out.push_back({std::move(name), std::move(anchor), pass, std::move(detail)});
}

// Runs fn, turning any exception into a failed check.
void guarded(std::vector<Check>& out, const std::string& name, const std::string& anchor,
             const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  add(out, name, anchor, ok, detail);
}

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

ParamScalar two_i_lp() { return ParamScalar(GaussRational(Rational(0), Rational(2))) * ParamScalar::lp(); }

void algebra_suite(std::vector<Check>& out) {
  const std::string rel = "sphere relations";
  guarded(out, "[x_i,x_j]=2i lp eps_ijk x_k", rel, [](std::string&) {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        AlgElem rhs;
        for (int k = 1; k <= 3; ++k)
          if (levi_civita(i, j, k)) rhs += two_i_lp() * ParamScalar(levi_civita(i, j, k)) * AlgElem::x(k);
        if (!(commutator(AlgElem::x(i), AlgElem::x(j)) == rhs)) return false;
      }
    return true;
  });
  guarded(out, "x1^2+x2^2+x3^2=1-lp^2", rel, [](std::string&) {
    AlgElem sum;
    for (int i = 1; i <= 3; ++i) sum += product(AlgElem::x(i), AlgElem::x(i));
    const ParamScalar lp = ParamScalar::lp();
    return sum == AlgElem(ParamScalar(1) - lp * lp);
  });
  auto mons = basis_monomials(2);
  guarded(out, "associativity on degree<=2 monomials", "normal ordering", [&](std::string&) {
    for (const auto& a : mons)
      for (const auto& b : mons)
        for (const auto& c : mons)
          if (!(product(product(a, b), c) == product(a, product(b, c)))) return false;
    return true;
  });
  guarded(out, "star(ab)=star(b)star(a), star(star(a))=a", "*-algebra", [&](std::string&) {
    for (const auto& a : mons) {
      if (!(star(star(a)) == a)) return false;
      for (const auto& b : mons)
        if (!(star(product(a, b)) == product(star(b), star(a)))) return false;
    }
    for (int i = 1; i <= 3; ++i)
      if (!(star(AlgElem::x(i)) == AlgElem::x(i))) return false;
    return true;
  });
}

void calculus_suite(std::vector<Check>& out) {
  auto mons = basis_monomials(3);
  guarded(out, "d^2=0 on degree<=3 monomials and s^i", "exterior algebra", [&](std::string& why) {
    for (const auto& a : mons)
      if (!d(d(a)).is_zero()) {
        why = "fails on " + a.str();
        return false;
      }
    for (int i = 1; i <= 3; ++i)
      if (!d(d(DiffForm::s(i))).is_zero()) return false;
    return true;
  });
  guarded(out, "da=theta a-a theta", "inner calculus", [&](std::string& why) {
    const DiffForm th = theta();
    for (const auto& a : mons)
      if (!(d(a) == th * a - a * th)) {
        why = "fails on " + a.str();
        return false;
      }
    return true;
  });
  auto low = basis_monomials(2);
  guarded(out, "d(ab)=(da)b+a(db)", "Leibniz rule", [&](std::string&) {
    for (const auto& a : low)
      for (const auto& b : low)
        if (!(d(product(a, b)) == d(a) * b + a * d(b))) return false;
    return true;
  });
  guarded(out, "d(x1^2+x2^2+x3^2)=0", "sphere relations", [](std::string&) {
    AlgElem sum;
    for (int i = 1; i <= 3; ++i) sum += product(AlgElem::x(i), AlgElem::x(i));
    return d(sum).is_zero();
  });
  guarded(out, "s_from_dx(l)=s^l", "s^l from dx_i", [](std::string&) {
    for (int l = 1; l <= 3; ++l)
      if (!(s_from_dx(l) == DiffForm::s(l))) return false;
    return true;
  });
  guarded(out, "star(da)=d(star a)", "reality of d", [&](std::string&) {
    for (const auto& a : mons)
      if (!(star(d(a)) == d(star(a)))) return false;
    return true;
  });
}

Metric3<Rational> metric_of(const Mat3<Rational>& m) { return Metric3<Rational>(m); }

void qlc_suite(std::vector<Check>& out) {
  std::vector<Mat3<Rational>> metrics = random_rational_metrics(20, 2024);
  metrics.insert(metrics.begin(), identity3<Rational>());
  const std::string qlc_anchor = "torsion/cotorsion criteria";
  auto all = [&](const std::function<bool(const Metric3<Rational>&)>& pred) {
    return [&metrics, pred](std::string& why) {
      for (std::size_t n = 0; n < metrics.size(); ++n)
        if (!pred(metric_of(metrics[n]))) {
          why = "metric #" + std::to_string(n);
          return false;
        }
      return true;
    };
  };
  guarded(out, "torsion(qlc(g))=0", qlc_anchor, all([](const auto& g) { return is_zero_arr(torsion(qlc(g), g)); }));
  guarded(out, "cotorsion(qlc(g))=0", qlc_anchor, all([](const auto& g) { return is_zero_arr(cotorsion(qlc(g), g)); }));
  guarded(out, "nabla g=0 for qlc(g)", "metric compatibility",
          all([](const auto& g) { return is_zero_arr(metric_compat_defect(qlc(g))) && is_zero_arr(nabla_metric(qlc(g))); }));
  guarded(out, "linear solve gives gamma=2g-Tr(g) id, trivial kernel", "unique QLC", all([](const auto& g) {
            auto sol = solve_qlc_linear(g);
            Mat3<Rational> expect = g.g();
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) expect[i][j] = 2 * expect[i][j] - (i == j ? g.trace() : Rational(0));
            return sol.kernel_trivial && sol.gamma == expect;
          }));
  guarded(out, "ansatz-free 27x27 system has rank 27 and solution qlc(g)", "unique QLC", all([](const auto& g) {
            auto [c, rank] = solve_qlc_full(g);
            return rank == 27 && c.lowered == qlc(g).lowered;
          }));
  guarded(out, "round metric: S=-3/4, Ricci=-1/4 delta", "round metric", [](std::string&) {
    auto g = Metric3<Rational>::identity();
    auto cd = curvature(qlc(g), g);
    Mat3<Rational> r = zero3<Rational>();
    for (int i = 0; i < 3; ++i) r[i][i] = Rational(-1, 4);
    return cd.scalar == Rational(-3, 4) && cd.ricci == r && scalar_closed_form(g.g()) == Rational(-3, 4);
  });
  guarded(out, "S(curvature)=(Tr g^2-Tr(g)^2/2)/(2 det g)", "scalar curvature", all([](const auto& g) {
            return curvature(qlc(g), g).scalar == scalar_closed_form(g.g());
          }));
  guarded(out, "diagonal S=(sum l^2-2 sum l l)/(4 prod l)", "scalar curvature", [](std::string&) {
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) {
        auto g = Metric3<Rational>::diagonal(Rational(a), Rational(b), frac(a + b, 3));
        if (!(curvature(qlc(g), g).scalar == scalar_from_eigenvalues(Rational(a), Rational(b), frac(a + b, 3))))
          return false;
      }
    return true;
  });
  guarded(out, "curvature 2-form = rho contraction", "curvature", [&](std::string&) {
    for (std::size_t n = 0; n < 4; ++n) {
      auto g = metric_of(metrics[n]);
      curvature_2form(qlc(g), g);
    }
    return true;
  });
  guarded(out, "sigma satisfies the right Leibniz rule", "bimodule connection", [](std::string&) {
    AlgConnection G;
    G[0][1][2] = AlgElem::x(1) + AlgElem(2);
    G[1][0][0] = ParamScalar::lp() * AlgElem::x(3);
    G[2][2][1] = product(AlgElem::x(2), AlgElem::x(1));
    G[0][0][0] = AlgElem::x(2);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        TensorForm lhs(1);
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b)
            if (levi_civita(j, a, b)) lhs += AlgElem::x(a) * ParamScalar(levi_civita(j, a, b)) * sigma(G, i, b);
        TensorForm rhs = tensor(d(AlgElem::x(j)), DiffForm::s(i));
        for (int l = 1; l <= 3; ++l)
          for (int k = 1; k <= 3; ++k) {
            const AlgElem& g = G[i - 1][l - 1][k - 1];
            if (!g.is_zero())
              rhs += TensorForm::basis(basis_of(l), k, commutator(g, AlgElem::x(j)) * ParamScalar(Rational(1, 2)));
          }
        if (!(lhs == rhs)) return false;
      }
    return true;
  });
  guarded(out, "sigma is the flip for constant coefficients", "bimodule connection", [](std::string&) {
    AlgConnection G;
    G[0][1][2] = AlgElem(3);
    G[2][0][1] = AlgElem(ParamScalar::lp());
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (!(sigma(G, i, j) == TensorForm::basis(basis_of(j), i))) return false;
    return true;
  });
}

void monopole_suite(std::vector<Check>& out) {
  using namespace monopole;
  const std::string proj = "monopole projector";
  guarded(out, "P²=P", proj, [](std::string&) {
    AlgMatrix P = projector();
    return P * P == P;
  });
  guarded(out, "Tr P=1+lp", proj, [](std::string&) {
    AlgMatrix P = projector();
    return P(0, 0) + P(1, 1) == AlgElem(ParamScalar(1) + ParamScalar::lp());
  });
  const std::string coord = "monopole coordinates";
  guarded(out, "[x,z]=lp z", coord, [](std::string&) {
    Coords c = coords();
    return commutator(c.x, c.z) == ParamScalar::lp() * c.z;
  });
  guarded(out, "z*z=x(1-x)", coord, [](std::string&) {
    Coords c = coords();
    return product(star(c.z), c.z) == product(c.x, AlgElem(1) - c.x);
  });
  guarded(out, "[z,z*]=lp x3", coord, [](std::string&) {
    Coords c = coords();
    return commutator(c.z, star(c.z)) == ParamScalar::lp() * AlgElem::x(3);
  });
  guarded(out, "(x-lp)e1=z e2", "projective basis", [](std::string&) { return basis_relation_check(); });
  guarded(out, "(dP)P=closed form", "Grassmann connection", [](std::string&) {
    grassmann_connection();
    return true;
  });
  guarded(out, "((dP)P)^dagger=P dP", "Grassmann connection", [](std::string&) {
    AlgMatrix P = projector();
    return dagger(d(P) * P) == P * d(P);
  });
  guarded(out, "f12=2 diag(x3-lp,x3+lp) P, f31=2[[x2,i lp],[-i lp,x2]] P", "monopole curvature", [](std::string&) {
    monopole_curvature();
    return true;
  });
  guarded(out, "f23=2 M P and f23 P=f23", "monopole curvature", [](std::string&) {
    Curvature k = monopole_curvature();
    AlgMatrix P = projector();
    return ParamScalar(2) * (k.m23 * P) == k.f23 && k.f23 * P == k.f23;
  });
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s = {
      {"algebra", algebra_suite}, {"calculus", calculus_suite}, {"qlc", qlc_suite}, {"monopole", monopole_suite}};
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "calculus", "qlc", "monopole", "all"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite) {
  std::vector<Check> out;
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      fn(out);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown suite: " + suite);
  return out;
}

std::string format(const Check& c) {
  std::string s = c.name + ": " + (c.pass ? "PASS" : "FAIL") + " [" + c.anchor + "]";
  if (!c.pass && !c.detail.empty()) s += " (" + c.detail + ")";
  return s;
}

std::vector<AlgElem> basis_monomials(int max_degree) {
  std::vector<AlgElem> out;
  for (int deg = 0; deg <= max_degree; ++deg)
    for (int c = 0; c <= std::min(1, deg); ++c)
      for (int b = 0; b <= deg - c; ++b) out.push_back(AlgElem::monomial({deg - b - c, b, c}));
  return out;
}

std::vector<Mat3<Rational>> random_rational_metrics(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto entry = [&] {
    long p = static_cast<long>(rng() % 13) - 6;
    long q = static_cast<long>(rng() % 4) + 1;
    return frac(p, q);
  };
  std::vector<Mat3<Rational>> out;
  while (out.size() < count) {
    Mat3<Rational> g;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        g[i][j] = entry();
        g[j][i] = g[i][j];
      }
    if (sgn(det3(g)) != 0) out.push_back(g);
  }
  return out;
}

}  // namespace fuzzyqrg::verify
