// gmc: batch driver for the moment, expansion, Mellin and simulation code.

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmc/error.hpp"
#include "gmc/expansion.hpp"
#include "gmc/gmcsim.hpp"
#include "gmc/mellin.hpp"
#include "gmc/moments.hpp"
#include "gmc/symbolic.hpp"
#include "gmc/table.hpp"
#include "json.hpp"

namespace {

using namespace gmc;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

struct Common {
  std::string kernel = "interval";
  double gff_q = 0.5;
  std::string phi = "constant";
  double lambda = 0.0;
  std::optional<double> lambda1, lambda2;
  std::optional<double> mu, tau;
  long long budget = 40'000'000;
  long long samples = 2'000'000;
  std::uint64_t seed = 20240601;
  std::string format = "csv";
  std::string output = "-";
  int threads = 0;
  std::string method = "quadrature";
};

KernelSpec make_kernel(const Common& c) {
  if (c.kernel == "interval") return KernelSpec::interval();
  if (c.kernel == "circle") return KernelSpec::circle();
  if (c.kernel == "gff") return KernelSpec::gff_circle(c.gff_q);
  throw Error(ErrorKind::input, "kernel: expected interval, circle or gff, got '" + c.kernel + "'");
}

double lam1(const Common& c) { return c.lambda1.value_or(c.lambda); }
double lam2(const Common& c) { return c.lambda2.value_or(c.lambda); }

TestFunctionSpec make_phi(const Common& c) {
  if (c.phi == "constant") return TestFunctionSpec::constant();
  if (c.phi == "circular") return TestFunctionSpec::circular(c.lambda);
  if (c.phi == "beta") return TestFunctionSpec::beta(lam1(c), lam2(c));
  throw Error(ErrorKind::input, "phi: expected constant, circular or beta, got '" + c.phi + "'");
}

// exactly one of mu / tau; returns mu
double resolve_mu(const Common& c, bool required = true) {
  if (c.mu && c.tau) throw Error(ErrorKind::input, "mu/tau: give exactly one of --mu and --tau");
  if (c.mu) return *c.mu;
  if (c.tau) {
    if (!(*c.tau > 0.0)) throw Error(ErrorKind::input, "tau: must be positive");
    return 2.0 / *c.tau;
  }
  if (required) throw Error(ErrorKind::input, "mu/tau: one of --mu or --tau is required");
  return 0.0;
}

double tau_of(double mu) { return mu > 0.0 ? 2.0 / mu : INFINITY; }

OracleOptions oracle(const Common& c) {
  OracleOptions o;
  if (c.method == "montecarlo")
    o.method = OracleMethod::montecarlo;
  else if (c.method != "quadrature" && c.method != "closed")
    throw Error(ErrorKind::input, "method: expected quadrature, montecarlo or closed");
  o.budget = c.budget;
  o.mc_samples = c.samples;
  o.seed = c.seed;
  return o;
}

void add_common(CLI::App* app, Common& c, bool field = true) {
  if (field) {
    app->add_option("--kernel", c.kernel, "interval | circle | gff");
    app->add_option("--gff-q", c.gff_q, "q parameter of the GFF-on-circle kernel");
    app->add_option("--phi", c.phi, "constant | circular | beta");
  }
  app->add_option("--lambda", c.lambda, "lambda (circular phi, Morris)");
  app->add_option("--lambda1", c.lambda1, "lambda1 (beta phi, Selberg, Morris)");
  app->add_option("--lambda2", c.lambda2, "lambda2");
  app->add_option("--mu", c.mu, "intermittency mu");
  app->add_option("--tau", c.tau, "tau = 2/mu");
  app->add_option("--budget", c.budget, "quadrature budget (integrand evaluations)");
  app->add_option("--samples", c.samples, "Monte Carlo samples");
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--method", c.method, "quadrature | montecarlo | closed");
  app->add_option("--format", c.format, "csv | json");
  app->add_option("-o,--output", c.output, "output path, - for stdout");
  app->add_option("--threads", c.threads, "worker threads (default: GMC_THREADS or all)");
}

Cell num(double v) { return Cell{v}; }
Cell integer(long long v) { return Cell{v}; }
Cell text(std::string s) { return Cell{std::move(s)}; }

// ---------------------------------------------------------------- commands

struct MomentsArgs {
  std::vector<int> n{2};
};

Table run_moments(const Common& c, const MomentsArgs& a) {
  const double mu = resolve_mu(c);
  const KernelSpec k = make_kernel(c);
  const TestFunctionSpec phi = make_phi(c);
  Table t;
  t.columns = {"n", "mu", "tau", "kernel", "phi", "method", "value", "error", "closed_form"};
  for (int n : a.n) {
    std::optional<double> closed;
    if (k.kind == KernelKind::circle && (phi.kind == PhiKind::circular || phi.is_constant())) {
      try {
        closed = mu == 0.0 ? std::pow(phi.mean(), n) : morris_moment(n, tau_of(mu), phi.lambda1);
      } catch (const Error&) {
      }
    }
    if (c.method == "closed") {
      if (!closed) throw Error(ErrorKind::input, "method closed: only the circle has a closed form");
      t.add_row({integer(n), num(mu), num(tau_of(mu)), text(k.name()), text(phi.name()),
                 text("closed"), num(*closed), num(0.0), num(*closed)});
      continue;
    }
    try {
      const Estimate e = numeric_moment_oracle({n, mu, k, phi}, oracle(c));
      t.add_row({integer(n), num(mu), num(tau_of(mu)), text(k.name()), text(phi.name()),
                 text(c.method), num(e.value), num(e.error), closed ? num(*closed) : Cell{}},
                e.warning.empty() ? "ok" : e.warning);
    } catch (const Error& err) {
      t.add_row({integer(n), num(mu), num(tau_of(mu)), text(k.name()), text(phi.name()),
                 text(c.method), Cell{}, Cell{}, closed ? num(*closed) : Cell{}},
                std::string("error:") + to_string(err.kind()));
    }
  }
  return t;
}

struct ExpansionArgs {
  std::string what = "c";
  std::vector<int> p{1, 2};
  std::vector<int> l{2, 3};
  std::vector<int> n{1};
  int kmax = 0;
  bool with_f = false;
  std::vector<double> q{2.0};
  int order = 4;
  std::string provider = "numeric";
};

Table run_expansion(const Common& c, const ExpansionArgs& a) {
  const KernelSpec k = make_kernel(c);
  const TestFunctionSpec phi = make_phi(c);
  const bool closed_ok = k.kind == KernelKind::circle &&
                         (phi.is_constant() || phi.kind == PhiKind::circular);
  Table t;
  if (a.what == "c") {
    t.columns = {"p", "l", "kernel", "phi", "numeric", "error", "closed_form"};
    for (int l : a.l) {
      const int pmax = *std::max_element(a.p.begin(), a.p.end());
      const auto est = c_numeric_all(pmax, l, k, phi, oracle(c));
      for (int p : a.p) {
        const Estimate& e = est[p - 1];
        t.add_row({integer(p), integer(l), text(k.name()), text(phi.name()), num(e.value),
                   num(e.error), closed_ok ? num(c_closed_circle(p, l, phi.lambda1)) : Cell{}},
                  e.warning.empty() ? "ok" : e.warning);
      }
    }
  } else if (a.what == "H") {
    t.columns = {"n", "k", "kernel", "phi", "provider", "H", "error", "beyond_2n"};
    DerivativeProvider prov;
    if (a.provider == "bell") {
      if (!closed_ok) throw Error(ErrorKind::input, "provider bell: needs the circle closed form");
      int nmax = *std::max_element(a.n.begin(), a.n.end());
      prov = bell_provider(circle_log_moment_series(phi.lambda1, nmax));
    } else if (a.provider == "numeric") {
      prov = numeric_provider(k, phi, oracle(c));
    } else {
      throw Error(ErrorKind::input, "provider: expected numeric or bell");
    }
    for (int n : a.n) {
      const int kmax = a.kmax > 0 ? a.kmax : 2 * n + 2;
      for (int kk = 2; kk <= kmax; ++kk) {
        const Estimate e = H_coefficient(n, kk, prov, phi.mean());
        t.add_row({integer(n), integer(kk), text(k.name()), text(phi.name()), text(a.provider),
                   num(e.value), num(e.error), text(kk > 2 * n ? "yes" : "no")});
      }
    }
  } else if (a.what == "h") {
    t.columns = {"n", "k", "terms", "h"};
    for (int n : a.n)
      for (const auto& [kk, h] : h_symbolic(n, a.with_f))
        t.add_row({integer(n), integer(kk), integer(static_cast<long long>(h.terms.size())),
                   text(h.to_text())});
  } else if (a.what == "f") {
    if (!closed_ok) throw Error(ErrorKind::input, "what f: uses the circle closed-form series");
    const LogMomentSeries s = circle_log_moment_series(phi.lambda1, a.order);
    t.columns = {"q", "n", "f_n"};
    for (double q : a.q) {
      const auto f = f_coefficients(a.order, q, s);
      for (int n = 0; n <= a.order; ++n) t.add_row({num(q), integer(n), num(f[n])});
    }
  } else {
    throw Error(ErrorKind::input, "what: expected c, H, h or f");
  }
  return t;
}

struct MellinArgs {
  std::vector<double> q{1.0, 2.0};
  std::string transform = "morris";
  int asymptotic = -1;
};

Table run_mellin(const Common& c, const MellinArgs& a) {
  const double mu = resolve_mu(c);
  const double tau = tau_of(mu);
  const double l1 = lam1(c), l2 = lam2(c);
  Table t;
  t.columns = {"q", "tau", "mu", "lambda1", "lambda2", "transform", "value", "log_value",
               "integer_moment", "asymptotic_log"};
  for (double q : a.q) {
    MellinParams p{tau, l1, l2, q};
    Cell value, logv, integer_moment, asym;
    std::string status = "ok";
    try {
      const cplx lv = a.transform == "morris"    ? morris_log_mellin(p)
                      : a.transform == "selberg" ? selberg_log_mellin(p)
                                                 : throw Error(ErrorKind::input,
                                                               "transform: expected morris or selberg");
      logv = num(lv.real());
      value = num(std::exp(lv).real());
      if (a.transform == "morris" && q == std::floor(q) && q >= 1 && q < tau && l1 == l2)
        integer_moment = num(morris_moment(static_cast<int>(q), tau, l1));
      if (a.asymptotic >= 0) asym = num(asymptotic_logM(q, tau, l1, l2, a.asymptotic));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::input) throw;
      status = std::string("error:") + to_string(e.kind());
    }
    t.add_row({num(q), num(tau), num(mu), num(l1), num(l2), text(a.transform), value, logv,
               integer_moment, asym},
              status);
  }
  return t;
}

struct SimulateArgs {
  int N = 2048;
  std::optional<double> eps;
  std::string samples_out;
};

Table run_simulate(const Common& c, const SimulateArgs& a) {
  const double mu = resolve_mu(c);
  const KernelSpec k = make_kernel(c);
  const TestFunctionSpec phi = make_phi(c);
  const double eps = a.eps.value_or(4.0 / a.N);
  const CovarianceGrid cg = build_covariance(k, mu, eps, a.N);
  const MassSampleSet s = sample_total_mass(cg, phi, c.samples, c.seed);
  if (!a.samples_out.empty()) {
    if (a.samples_out.size() > 4 && a.samples_out.substr(a.samples_out.size() - 4) == ".bin")
      write_samples_binary(a.samples_out, s);
    else
      write_samples_csv(a.samples_out, s);
  }
  const SampleStats st = sample_stats(s.samples);
  std::optional<double> closed;
  if (k.kind == KernelKind::circle && (phi.is_constant() || phi.kind == PhiKind::circular)) {
    try {
      closed = morris_moment(2, tau_of(mu), phi.lambda1);
    } catch (const Error&) {
    }
  }
  Table t;
  t.columns = {"kernel", "phi", "mu", "tau", "N", "eps", "samples", "seed", "jitter",
               "mean", "mean_se", "m2", "m2_se", "m2_discrete", "m2_closed_form"};
  t.add_row({text(k.name()), text(phi.name()), num(mu), num(tau_of(mu)), integer(a.N), num(eps),
             integer(c.samples), integer(static_cast<long long>(c.seed)), num(cg.jitter),
             num(st.mean), num(st.mean_se), num(st.m2), num(st.m2_se),
             num(discrete_moment(cg, phi, 2)), closed ? num(*closed) : Cell{}});
  return t;
}

struct VerifyArgs {
  std::string suite = "renormalizability";
  std::vector<int> n{1, 2};
};

Table run_verify(const Common& c, const VerifyArgs& a, bool& failed) {
  Table t;
  t.columns = {"suite", "case", "value", "bound", "pass"};
  auto row = [&](const std::string& suite, const std::string& name, double v, double bound,
                 bool pass) {
    t.add_row({text(suite), text(name), num(v), num(bound), text(pass ? "PASS" : "FAIL")});
    if (!pass) failed = true;
  };
  const bool all = a.suite == "all";
  bool known = all;
  if (all || a.suite == "renormalizability") {
    known = true;
    const KernelSpec k = make_kernel(c);
    const TestFunctionSpec phi = make_phi(c);
    const DerivativeProvider prov = numeric_provider(k, phi, oracle(c));
    for (int n : a.n)
      for (int kk = 2; kk <= 2 * n + 2; ++kk) {
        const Estimate e = H_coefficient(n, kk, prov, phi.mean());
        const std::string name = k.name() + " H(" + std::to_string(n) + "," + std::to_string(kk) + ")";
        if (kk > 2 * n)
          row("renormalizability", name, e.value, e.error, std::abs(e.value) < e.error);
        else
          t.add_row({text("renormalizability"), text(name), num(e.value), num(e.error), text("info")});
      }
    for (int n : a.n)
      for (const auto& [kk, h] : h_symbolic(n, true))
        if (kk > 2 * n) row("renormalizability", "symbolic k>2n", kk, 2 * n, false);
  }
  if (all || a.suite == "mellin") {
    known = true;
    for (double tau : {6.0, 8.0})
      for (double l : {0.0, 0.25})
        for (int n = 1; n <= 3; ++n) {
          const double m = morris_mellin({tau, l, l, double(n)}).real();
          const double ref = morris_moment(n, tau, l);
          row("mellin", "tau=" + format_double(tau) + " lambda=" + format_double(l) + " n=" +
                            std::to_string(n),
              std::abs(m - ref) / ref, 1e-8, std::abs(m - ref) / ref < 1e-8);
        }
  }
  if (all || a.suite == "duality") {
    known = true;
    for (double tau : {1.8, 2.5, 4.0})
      for (double q : {0.3, 0.7, 1.2}) {
        const double r = self_duality_residual(q, tau);
        row("duality", "q=" + format_double(q) + " tau=" + format_double(tau), r, 1e-8, r < 1e-8);
      }
  }
  if (all || a.suite == "appendix") {
    known = true;
    const double eps = 1e-3;
    for (const KernelSpec& k : {KernelSpec::interval(), KernelSpec::circle()}) {
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double z = eps + (1.0 - eps) * i / 100.0;
        worst = std::max(worst, std::abs(rho_intersection(k, eps, z).value + k.log_r(z)));
      }
      row("appendix", k.name() + " rho", worst, 1e-6, worst < 1e-6);
    }
  }
  if (!known) throw Error(ErrorKind::input, "suite: expected renormalizability, mellin, duality, appendix or all");
  return t;
}

// ------------------------------------------------------------ config / meta

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw Error(ErrorKind::input, "config: line " + std::to_string(lineno) + " is not key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// argv with --config expanded. Command-line flags win over config entries.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::optional<std::string> cfg;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      cfg = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (!cfg) return out;
  auto kv = read_config(*cfg);
  std::set<std::string> given;
  for (const auto& a : out)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  const bool has_command = out.size() > 1 && out[1].rfind("-", 0) != 0;
  if (!has_command) {
    auto it = kv.find("command");
    if (it == kv.end()) throw Error(ErrorKind::input, "config: no subcommand given and no 'command' key");
    out.insert(out.begin() + 1, it->second);
  }
  kv.erase("command");
  for (const auto& [key, value] : kv) {
    if (given.count(key)) continue;
    std::istringstream vs(value);
    std::string tok;
    std::vector<std::string> toks;
    while (vs >> tok) toks.push_back(tok);
    if (toks.empty() || value == "true") {
      out.push_back("--" + key);
    } else {
      out.push_back("--" + key);
      for (auto& t : toks) out.push_back(t);
    }
  }
  return out;
}

void write_sidecar(const Common& c, const std::vector<std::string>& argv,
                   const std::string& command, const Table& t, int threads) {
  const std::string& output = c.output;
  if (output == "-" || output.empty()) return;
  nlohmann::ordered_json j;
  j["tool"] = "gmc";
  j["version"] = kVersion;
  j["command"] = command;
  // argv[0] dropped; the rest replays the run
  j["argv"] = std::vector<std::string>(argv.begin() + 1, argv.end());
  j["threads"] = threads;
  nlohmann::ordered_json in;
  in["kernel"] = c.kernel;
  in["phi"] = c.phi;
  in["lambda1"] = lam1(c);
  in["lambda2"] = lam2(c);
  if (c.mu || c.tau) {
    const double mu = resolve_mu(c);
    in["mu"] = mu;
    in["tau"] = mu > 0.0 ? nlohmann::ordered_json(2.0 / mu) : nlohmann::ordered_json(nullptr);
  }
  in["method"] = c.method;
  in["budget"] = c.budget;
  in["samples"] = c.samples;
  in["seed"] = c.seed;
  in["format"] = c.format;
  j["inputs"] = in;
  if (const char* env = std::getenv("GMC_THREADS")) j["GMC_THREADS"] = env;
  double max_error = 0.0;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] != "error") continue;
    for (const auto& r : t.rows)
      if (auto* d = std::get_if<double>(&r[c])) max_error = std::max(max_error, *d);
  }
  j["max_reported_error"] = max_error;
  j["rows"] = t.rows.size();
  std::ofstream out(output + ".meta.json");
  if (!out) throw Error(ErrorKind::io, "cannot write sidecar for " + output);
  out << j.dump(2) << "\n";
}

int run(std::vector<std::string> args);

int replay(const std::string& sidecar, const std::optional<std::string>& output) {
  std::ifstream in(sidecar);
  if (!in) throw Error(ErrorKind::input, "replay: cannot open " + sidecar);
  const auto j = nlohmann::json::parse(in);
  std::vector<std::string> args{"gmc"};
  for (const auto& a : j.at("argv")) args.push_back(a.get<std::string>());
  if (output) {
    args.push_back("--output");
    args.push_back(*output);
  }
  return run(args);
}

int run(std::vector<std::string> args) {
  args = expand_config(args);
  CLI::App app{"Gaussian multiplicative chaos: moments, intermittency expansion, Mellin transforms, simulation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  // later occurrences win (config entries come after command-line ones only when absent)
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common c;
  MomentsArgs ma;
  ExpansionArgs ea;
  MellinArgs mel;
  SimulateArgs sa;
  VerifyArgs va;
  std::string replay_path;
  std::optional<std::string> replay_out;

  auto* moments = app.add_subcommand("moments", "integer moments S_n");
  add_common(moments, c);
  moments->add_option("--n", ma.n, "moment orders")->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* expansion = app.add_subcommand("expansion", "c_p(l), H(n,k), symbolic h_{n,k}, f_n(q)");
  add_common(expansion, c);
  expansion->add_option("--what", ea.what, "c | H | h | f");
  expansion->add_option("--p", ea.p)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  expansion->add_option("--l", ea.l)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  expansion->add_option("--n", ea.n)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  expansion->add_option("--kmax", ea.kmax, "largest k for H (default 2n+2)");
  expansion->add_flag("--with-f", ea.with_f, "keep the f symbols in h_{n,k}");
  expansion->add_option("--q", ea.q)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  expansion->add_option("--order", ea.order, "series order for f_n");
  expansion->add_option("--provider", ea.provider, "numeric | bell");

  auto* mellin = app.add_subcommand("mellin", "Morris / Selberg Mellin transforms");
  add_common(mellin, c, false);
  mellin->add_option("--q", mel.q)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  mellin->add_option("--transform", mel.transform, "morris | selberg");
  mellin->add_option("--asymptotic", mel.asymptotic, "also print the asymptotic series to this order");

  auto* simulate = app.add_subcommand("simulate", "sample the total mass of the regularized field");
  add_common(simulate, c);
  simulate->add_option("--N", sa.N, "grid size");
  simulate->add_option("--eps", sa.eps, "regularization scale (default 4/N)");
  simulate->add_option("--samples-out", sa.samples_out, "write samples (.bin binary, else CSV)");

  auto* verify = app.add_subcommand("verify", "checks with PASS/FAIL rows; exit 2 on failure");
  add_common(verify, c);
  verify->add_option("--suite", va.suite, "renormalizability | mellin | duality | appendix | all");
  verify->add_option("--n", va.n)->expected(1, -1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* rep = app.add_subcommand("replay", "re-run from a .meta.json sidecar");
  rep->add_option("sidecar", replay_path)->required();
  rep->add_option("-o,--output", replay_out, "override the output path");

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (rep->parsed()) return replay(replay_path, replay_out);

  int threads = c.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("GMC_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (...) {
        throw Error(ErrorKind::input, "GMC_THREADS: not an integer");
      }
    }
  }
  if (threads > 0) omp_set_num_threads(threads);

  const TableFormat fmt = parse_format(c.format);
  Table t;
  std::string command;
  bool failed = false;
  if (moments->parsed()) {
    command = "moments";
    t = run_moments(c, ma);
  } else if (expansion->parsed()) {
    command = "expansion";
    t = run_expansion(c, ea);
  } else if (mellin->parsed()) {
    command = "mellin";
    t = run_mellin(c, mel);
  } else if (simulate->parsed()) {
    command = "simulate";
    t = run_simulate(c, sa);
  } else {
    command = "verify";
    t = run_verify(c, va, failed);
  }
  emit_table(t, fmt, c.output);
  write_sidecar(c, args, command, t, threads > 0 ? threads : omp_get_max_threads());
  return failed ? kExitVerify : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    return run(args);
  } catch (const gmc::Error& e) {
    std::cerr << "error[" << gmc::to_string(e.kind()) << "]: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return kExitInput;
  }
}
