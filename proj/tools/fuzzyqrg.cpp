// Command-line front end: identity suites, curvature queries, quantum-gravity sweeps,
// the partial theory, and monopole reports.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzyqrg/monopole.hpp"
#include "fuzzyqrg/qgrav.hpp"
#include "fuzzyqrg/qgrav_kernels.hpp"
#include "fuzzyqrg/qrg.hpp"
#include "fuzzyqrg/verify.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace fuzzyqrg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentity = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad value for " + what + ": " + s);
  }
}

// ------------------------------------------------------------------ format flags

struct FormatFlags {
  std::string format;
  bool json = false, csv = false, text = false;

  void attach(CLI::App* app, const std::string& def, const std::vector<std::string>& allowed) {
    format = def;
    auto* f = app->add_option("--format", format, "Output format")->check(CLI::IsMember(allowed));
    for (const auto& name : allowed) {
      bool* flag = name == "json" ? &json : name == "csv" ? &csv : &text;
      app->add_flag("--" + name, *flag, "Shorthand for --format " + name)->excludes(f);
    }
    auto* j = app->get_option_no_throw("--json");
    auto* c = app->get_option_no_throw("--csv");
    auto* t = app->get_option_no_throw("--text");
    for (auto* a : {j, c, t})
      for (auto* b : {j, c, t})
        if (a && b && a != b) a->excludes(b);
  }
  std::string resolve() const {
    if (json) return "json";
    if (csv) return "csv";
    if (text) return "text";
    return format;
  }
};

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& suite, const std::string& format, const std::string& out) {
  std::vector<verify::Check> checks = verify::run_suite(suite);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;
  if (format == "json") {
    json j = json::array();
    for (const auto& c : checks) j.push_back({{"identity", c.name}, {"anchor", c.anchor}, {"pass", c.pass}, {"detail", c.detail}});
    emit(json({{"suite", suite}, {"pass", ok}, {"checks", j}}).dump(2) + "\n", out);
  } else {
    std::string text;
    for (const auto& c : checks) text += verify::format(c) + "\n";
    text += std::string(ok ? "ALL PASS" : "FAILURES PRESENT") + " (" + std::to_string(checks.size()) + " identities)\n";
    emit(text, out);
  }
  return ok ? kExitOk : kExitIdentity;
}

// ------------------------------------------------------------------ curvature

json load_metric_json(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw UsageError("empty --metric");
  if (arg[first] != '[' && arg[first] != '{') text = read_file(arg);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("metric is not valid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("metric")) throw UsageError("metric object needs a \"metric\" field");
    j = j["metric"];
  }
  if (!j.is_array() || j.size() != 3) throw UsageError("metric must be a 3x3 array");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != 3) throw UsageError("metric must be a 3x3 array");
  return j;
}

std::string entry_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw UsageError("metric entries must be numbers or rational strings");
}

template <class T>
json tensor_json(const Arr3<T>& a, const std::function<json(const T&)>& conv) {
  json out = json::array();
  for (const auto& m : a) {
    json mj = json::array();
    for (const auto& row : m) {
      json rj = json::array();
      for (const auto& v : row) rj.push_back(conv(v));
      mj.push_back(rj);
    }
    out.push_back(mj);
  }
  return out;
}

template <class T>
json matrix_json(const Mat3<T>& m, const std::function<json(const T&)>& conv) {
  json out = json::array();
  for (const auto& row : m) {
    json rj = json::array();
    for (const auto& v : row) rj.push_back(conv(v));
    out.push_back(rj);
  }
  return out;
}

template <class T>
json curvature_report(const Mat3<T>& raw, const std::function<json(const T&)>& conv) {
  Metric3<T> g(raw);
  Connection3<T> c = qlc(g);
  CurvatureData<T> cd = curvature(c, g);
  return {{"metric", matrix_json(g.g(), conv)},
          {"christoffel_lowered", tensor_json(c.lowered, conv)},
          {"christoffel", tensor_json(raise_first(c, g), conv)},
          {"ricci", matrix_json(cd.ricci, conv)},
          {"scalar", conv(cd.scalar)}};
}

int cmd_curvature(const std::string& metric_arg, bool exact, const std::string& out) {
  json j = load_metric_json(metric_arg);
  json report;
  try {
    if (exact) {
      Mat3<Rational> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          try {
            m[r][c] = parse_rational(entry_text(j[r][c]));
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        }
      report = curvature_report<Rational>(m, [](const Rational& q) { return json(to_string(q)); });
      report["exact"] = true;
    } else {
      Mat3<double> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = parse_double(entry_text(j[r][c]), "metric entry");
      report = curvature_report<double>(m, [](const double& x) { return json(x); });
      report["exact"] = false;
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(report.dump(2) + "\n", out);
  return kExitOk;
}

// ------------------------------------------------------------------ qg-sweep

struct SweepArgs {
  std::string G = "1", config_path, out;
  double eps = 0.01, Lmin = 5, Lmax = 100;
  int steps = 8, resolution = 64;
  std::uint64_t seed = 1;
  std::vector<std::string> moments;
};

void apply_config(SweepArgs& a, CLI::App* app) {
  if (a.config_path.empty()) return;
  json j;
  try {
    j = json::parse(read_file(a.config_path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  auto unset = [&](const char* flag) { return app->count(flag) == 0; };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "G") {
        if (unset("--G")) a.G = value.is_string() ? value.get<std::string>() : value.dump();
      } else if (key == "eps") {
        if (unset("--eps")) a.eps = value.get<double>();
      } else if (key == "Lmin") {
        if (unset("--Lmin")) a.Lmin = value.get<double>();
      } else if (key == "Lmax") {
        if (unset("--Lmax")) a.Lmax = value.get<double>();
      } else if (key == "steps") {
        if (unset("--steps")) a.steps = value.get<int>();
      } else if (key == "resolution") {
        if (unset("--resolution")) a.resolution = value.get<int>();
      } else if (key == "seed") {
        if (unset("--seed")) a.seed = value.get<std::uint64_t>();
      } else if (key == "moments") {
        if (unset("--moments")) a.moments = value.get<std::vector<std::string>>();
      } else {
        throw UsageError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

int cmd_qg_sweep(SweepArgs a, const std::string& format, CLI::App* app) {
  apply_config(a, app);
  if (a.moments.empty()) a.moments = {"1"};
  qgrav::QGConfig cfg;
  cfg.G = parse_double(a.G, "--G");
  cfg.eps = a.eps;
  cfg.L = a.Lmax;
  cfg.resolution = a.resolution;
  cfg.seed = a.seed;
  std::vector<qgrav::MomentSpec> specs;
  try {
    cfg.validate();
    for (const auto& m : a.moments) specs.push_back(qgrav::parse_moment_spec(m));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  qgrav::SweepResult r;
  try {
    r = qgrav::sweep(cfg, a.Lmin, a.Lmax, a.steps, specs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(format == "json" ? qgrav::sweep_json(r) : qgrav::sweep_csv(r), a.out);
  return kExitOk;
}

// ------------------------------------------------------------------ qg-partial

int cmd_qg_partial(double u, const std::string& G_text, int resolution, double margin, const std::string& format,
                   const std::string& out) {
  const double G = parse_double(G_text, "--G");
  if (!(u > 0)) throw UsageError("u must be positive");
  if (!(G > 0)) throw UsageError("G must be positive");
  qgrav::PartialZ z;
  try {
    z = qgrav::partial_Zu(u, G, resolution, margin);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (format == "json") {
    emit(json({{"u", u}, {"G", G}, {"Z_u", z.value}, {"error", z.error}, {"margin", z.margin}, {"resolution", z.resolution}})
                 .dump(2) +
             "\n",
         out);
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "u=%.17g G=%.17g\nZ_u=%.17g\nerror=%.3g\nmargin=%.17g\nresolution=%d\n", u, G, z.value,
                  z.error, z.margin, z.resolution);
    emit(buf, out);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ monopole

int cmd_monopole(const std::string& show, const std::string& out) {
  using namespace monopole;
  std::string text;
  if (show == "connection") {
    FormMatrix a = grassmann_connection();
    text += "(dP)P, normal ordered:\n" + str(a);
    // the closed-form pieces, kept separate so each coefficient is visible
    const ParamScalar lp = ParamScalar::lp(), one(1), i = ParamScalar::i();
    const ParamScalar q_coeff = i * (one - lp * lp) * ParamScalar(Rational(1, 4));
    const char* q_forms[2][2] = {{"-s3", "s1 + i s2"}, {"s1 - i s2", "s3"}};
    text += "closed form:\n";
    AlgMatrix P = projector();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        text += "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "): [" +
                (ParamScalar(Rational(1, 2)) * (one + lp)).str() + "] dP" + std::to_string(r + 1) + std::to_string(c + 1) +
                " + [lp] P" + std::to_string(r + 1) + std::to_string(c + 1) + " theta";
        if (r == c) text += " + [" + (-(ParamScalar(Rational(1, 2)) * lp * (one - lp))).str() + "] theta";
        std::string qf = q_forms[r][c];
        if (qf == "-s3") {
          text += " + [" + (-q_coeff).str() + "] s3";
        } else {
          text += " + [" + q_coeff.str() + "] (" + qf + ")";
        }
        text += "\n";
      }
    text += "  with P11 = " + P(0, 0).str() + ", P22 = " + P(1, 1).str() + "\n";
  } else if (show == "curvature") {
    Curvature k = monopole_curvature();
    text += "dP ^ (dP)P = (i(1 - lp)/4) (f12 s1^s2 + f31 s3^s1 + f23 s2^s3)\n";
    text += "f12 = 2 diag(x3 - lp, x3 + lp) P:\n" + str(k.f12);
    text += "f31 = 2 [[x2, i lp], [-i lp, x2]] P:\n" + str(k.f31);
    text += "f23:\n" + str(k.f23);
    text += "f23 = 2 M P with M:\n" + str(k.m23);
  } else {
    throw UsageError("--show must be connection or curvature");
  }
  emit(text, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Riemannian geometry of the fuzzy sphere"};
  app.require_subcommand(0, 1);

  std::string out;
  std::string suite = "all";
  FormatFlags verify_fmt, sweep_fmt, partial_fmt;

  auto* verify_cmd = app.add_subcommand("verify", "Run exact identity suites");
  verify_cmd->add_option("--suite", suite, "algebra, calculus, qlc, monopole or all")
      ->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--out", out, "Output path (default stdout)");
  verify_fmt.attach(verify_cmd, "text", {"text", "json"});

  std::string metric;
  bool exact = false;
  auto* curv_cmd = app.add_subcommand("curvature", "QLC, Ricci and scalar curvature of a constant metric");
  curv_cmd->add_option("--metric", metric, "3x3 JSON array, inline or a file path")->required();
  curv_cmd->add_flag("--exact", exact, "Exact rational arithmetic");
  curv_cmd->add_option("--out", out, "Output path (default stdout)");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("qg-sweep", "Eigenvalue moments over a sweep of the cutoff L");
  sweep_cmd->add_option("--G", sw.G, "Coupling (inf allowed)");
  sweep_cmd->add_option("--eps", sw.eps, "Lower eigenvalue cutoff");
  sweep_cmd->add_option("--Lmin", sw.Lmin, "Smallest L");
  sweep_cmd->add_option("--Lmax", sw.Lmax, "Largest L");
  sweep_cmd->add_option("--steps", sw.steps, "Geometric L steps");
  sweep_cmd->add_option("--moments", sw.moments, "Moment label list such as 1 or 1,2 (repeatable)");
  sweep_cmd->add_option("--seed", sw.seed, "RNG seed, recorded in the output");
  sweep_cmd->add_option("--resolution", sw.resolution, "Quadrature nodes per axis");
  sweep_cmd->add_option("--config", sw.config_path, "JSON config file; flags take precedence");
  sweep_cmd->add_option("--out", sw.out, "Output path (default stdout)");
  sweep_fmt.attach(sweep_cmd, "csv", {"csv", "json"});

  double u = 1.0, margin = 1e-4;
  std::string partial_G = "1";
  int partial_res = 128;
  auto* partial_cmd = app.add_subcommand("qg-partial", "Fluctuation integral Z_u at fixed mean eigenvalue");
  partial_cmd->add_option("--u", u, "Mean eigenvalue u > 0");
  partial_cmd->add_option("--G", partial_G, "Coupling");
  partial_cmd->add_option("--resolution", partial_res, "Quadrature nodes per panel group");
  partial_cmd->add_option("--margin", margin, "Relative boundary margin");
  partial_cmd->add_option("--out", out, "Output path (default stdout)");
  partial_fmt.attach(partial_cmd, "text", {"text", "json"});

  std::string show;
  auto* mono_cmd = app.add_subcommand("monopole", "Monopole connection and curvature");
  mono_cmd->add_option("--show", show, "connection or curvature")->check(CLI::IsMember({"connection", "curvature"}));
  mono_cmd->add_option("--out", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    qgrav::kernels::thread_cap_from_env();
    if (verify_cmd->parsed()) return cmd_verify(suite, verify_fmt.resolve(), out);
    if (curv_cmd->parsed()) return cmd_curvature(metric, exact, out);
    if (sweep_cmd->parsed()) return cmd_qg_sweep(sw, sweep_fmt.resolve(), sweep_cmd);
    if (partial_cmd->parsed()) return cmd_qg_partial(u, partial_G, partial_res, margin, partial_fmt.resolve(), out);
    if (mono_cmd->parsed()) {
      if (show.empty()) {
        std::cerr << mono_cmd->help();
        return kExitUsage;
      }
      return cmd_monopole(show, out);
    }
    std::cerr << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIdentity;
  }
}
