// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "gmc/error.hpp"
#include "gmc/expansion.hpp"
#include "gmc/gmcsim.hpp"
#include "gmc/mellin.hpp"
#include "gmc/moments.hpp"
#include "gmc/symbolic.hpp"

using namespace gmc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// runs a criterion body; an exception counts as failure
void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(id, ok, detail);
  } catch (const Error& e) {
    report(id, false, std::string("error[") + to_string(e.kind()) + "]: " + e.what());
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

MultiPoly to_multi(const PolynomialQ& p, unsigned var) {
  MultiPoly out, pw = 1;
  for (int k = 0; k <= p.degree(); ++k) {
    out += pw * MultiPoly(p.coeff(k));
    pw *= MultiPoly::variable(var);
  }
  return out;
}

const char* kH34[] = {
    "3 * g[1,2] g[3,4]^2", "3 * g[3,4] g[1,2]^2", "3 * g[1,3] g[2,4]^2", "3 * g[2,4] g[1,3]^2",
    "3 * g[1,4] g[2,3]^2", "3 * g[2,3] g[1,4]^2", "6 * g[1,2] g[2,3] g[3,4]",
    "6 * g[1,2] g[1,3] g[1,4]", "6 * g[1,2] g[2,3] g[2,4]", "6 * g[1,3] g[2,3] g[3,4]",
    "6 * g[1,4] g[2,4] g[3,4]", "6 * g[1,2] g[1,3] g[3,4]", "6 * g[1,2] g[1,4] g[2,3]",
    "6 * g[1,3] g[1,4] g[2,4]", "6 * g[1,2] g[1,4] g[3,4]", "6 * g[1,3] g[1,4] g[2,3]",
    "6 * g[1,2] g[2,4] g[3,4]", "6 * g[1,4] g[2,3] g[3,4]", "6 * g[1,4] g[2,3] g[2,4]",
    "6 * g[1,3] g[2,4] g[3,4]", "6 * g[1,3] g[2,3] g[2,4]", "6 * g[1,2] g[1,3] g[2,4]",
};

}  // namespace

int main() {
  const OracleOptions opt;  // default budget and seed

  criterion(1, [&] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int n : {2, 3})
      for (double tau : {6.0, 8.0})
        for (double lam : {0.0, 0.25}) {
          const Estimate e = numeric_moment_oracle(
              {n, 2.0 / tau, KernelSpec::circle(), TestFunctionSpec::circular(lam)}, opt);
          const double exact = morris_moment(n, tau, lam);
          worst = std::max(worst, std::abs(e.value - exact) / exact);
        }
    const double secs = seconds_since(t0);
    return std::pair{worst < 1e-4 && secs < 60.0,
                     fmt("max rel err %.3g (< 1e-4), %.1f s (< 60 s)", worst, secs)};
  });

  criterion(2, [&] {
    double worst = 0.0, worst_bar = 0.0;
    for (int l : {2, 3})
      for (double lam : {0.0, 0.25}) {
        const auto est = c_numeric_all(4, l, KernelSpec::circle(), TestFunctionSpec::circular(lam), opt);
        for (int p = 1; p <= 4; ++p) {
          worst = std::max(worst, std::abs(est[p - 1].value - c_closed_circle(p, l, lam)));
          worst_bar = std::max(worst_bar, est[p - 1].error);
        }
      }
    const auto iv = c_numeric_all(4, 2, KernelSpec::interval(), TestFunctionSpec::constant(), opt);
    double worst_iv = 0.0;
    for (int p = 1; p <= 4; ++p)
      worst_iv = std::max(worst_iv, std::abs(iv[p - 1].value - (1 + std::pow(2.0, -p)) / p));
    return std::pair{worst < 1e-3 && worst_iv < 1e-6,
                     fmt("circle max |err| %.3g (< 1e-3), ", worst) +
                         fmt("interval c_p(2) max |err| %.3g (< 1e-6), ", worst_iv) +
                         fmt("largest reported bar %.3g", worst_bar)};
  });

  criterion(3, [&] {
    bool ok = true;
    std::string detail;
    for (const KernelSpec& k : {KernelSpec::interval(), KernelSpec::circle()}) {
      const DerivativeProvider prov = numeric_provider(k, TestFunctionSpec::constant(), opt);
      for (auto [n, kk] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{2, 5}, std::pair{2, 6}}) {
        const Estimate e = H_coefficient(n, kk, prov, 1.0);
        const bool in = std::abs(e.value) < e.error;
        ok = ok && in;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s H(%d,%d)=%.2e bar %.2e%s; ", k.name().c_str(), n, kk,
                      e.value, e.error, in ? "" : " OUT");
        detail += buf;
      }
    }
    for (int n = 1; n <= 4; ++n)
      for (bool with_f : {false, true})
        for (const auto& [kk, h] : h_symbolic(n, with_f))
          if (kk > 2 * n && !h.terms.empty()) {
            ok = false;
            detail += "symbolic entry beyond 2n at n=" + std::to_string(n) + "; ";
          }
    detail += "h_symbolic(n<=4): no k > 2n";
    return std::pair{ok, detail};
  });

  criterion(4, [&] {
    const auto t0 = Clock::now();
    SymbolicCoefficient ref;
    ref.arity = 4;
    for (const char* s : kH34)
      for (const auto& [m, c] : SymbolicCoefficient::parse(s, 4).terms) ref.add(m, c);
    const SymbolicCoefficient got = h_symbolic(3, false).at(4).scaled(24);
    const double secs = seconds_since(t0);
    return std::pair{got == ref && ref.terms.size() == 22 && secs < 1.0,
                     std::to_string(got.terms.size()) + " terms, exact match " +
                         (got == ref ? "yes" : "no") + fmt(", %.3f s (< 1 s)", secs)};
  });

  criterion(5, [&] {
    double worst = 0.0;
    for (double tau : {6.0, 8.0})
      for (double lam : {0.0, 0.25})
        for (int n = 1; n <= 3; ++n) {
          const double m = morris_mellin({tau, lam, lam, double(n)}).real();
          const double ref = morris_moment(n, tau, lam);
          worst = std::max(worst, std::abs(m - ref) / ref);
        }
    return std::pair{worst < 1e-8, fmt("max rel err %.3g (< 1e-8)", worst)};
  });

  criterion(6, [&] {
    double worst = 0.0;
    for (double q : {0.3, 0.7, 1.2})
      for (double tau : {1.8, 2.5, 4.0}) worst = std::max(worst, self_duality_residual(q, tau));
    return std::pair{worst < 1e-8, fmt("max residual %.3g (< 1e-8)", worst)};
  });

  criterion(7, [&] {
    const double q = 1.7;
    auto rem = [&](double tau) {
      return std::abs(morris_log_mellin({tau, 0.0, 0.0, q}).real() - asymptotic_logM(q, tau, 0.0, 0.0, 3));
    };
    const double r20 = rem(20.0), r40 = rem(40.0);
    return std::pair{r20 / r40 > 10.0,
                     fmt("remainder %.3g at tau=20, ", r20) + fmt("%.3g at tau=40, ", r40) +
                         fmt("ratio %.2f (> 10)", r20 / r40)};
  });

  criterion(8, [&] {
    // c_r(q) = a_r P_r(q) + z_r Q_r(q) with a_r, z_r kept as symbols.
    // variables: 0 = mu, 1 = q, 2r = a_r, 2r+1 = z_r
    const int N = 8;
    std::vector<MultiPoly> cq(N + 1);
    MultiPoly S;
    MultiPoly mup = 1;
    for (int r = 1; r <= N; ++r) {
      const CircleCParts parts = c_circle_parts(r, 0.0);
      cq[r] = MultiPoly::variable(2 * r) * to_multi(parts.P, 1) +
              MultiPoly::variable(2 * r + 1) * to_multi(parts.Q, 1);
      mup *= MultiPoly::variable(0);
      S += cq[r] * mup;
    }
    const std::vector<MultiPoly> f = f_coefficients<MultiPoly>(N, MultiPoly(1), cq);
    MultiPoly E = 1, P = 1;
    Rational mf = 1;
    for (int m = 1; m <= N; ++m) {
      P = (P * S).truncated(0, N);
      mf *= m;
      E += P * MultiPoly(Rational(1) / mf);
    }
    bool series_ok = true;
    Rational nf = 1;
    for (int n = 0; n <= N; ++n) {
      if (n) nf *= n;
      series_ok = series_ok && (E.coefficient(0, n) * MultiPoly(nf) == f[n]);
    }
    // Bell recurrence against exp(sum x_r t^r / r!)
    MultiPoly G;
    Rational rf = 1;
    MultiPoly tp = 1;
    for (int r = 1; r <= N; ++r) {
      rf *= r;
      tp *= MultiPoly::variable(0);
      G += MultiPoly::variable(r) * tp * MultiPoly(Rational(1) / rf);
    }
    MultiPoly EG = 1;
    P = 1;
    mf = 1;
    for (int m = 1; m <= N; ++m) {
      P = (P * G).truncated(0, N);
      mf *= m;
      EG += P * MultiPoly(Rational(1) / mf);
    }
    std::vector<MultiPoly> x;
    for (int r = 1; r <= N; ++r) x.push_back(MultiPoly::variable(r));
    const auto Y = bell_sequence(N, x);
    bool bell_ok = true;
    nf = 1;
    for (int n = 0; n <= N; ++n) {
      if (n) nf *= n;
      bell_ok = bell_ok && (Y[n] == EG.coefficient(0, n) * MultiPoly(nf));
    }
    return std::pair{series_ok && bell_ok,
                     std::string("f_n(q)/n! vs exp-series coefficients, n<=8, exact: ") +
                         (series_ok ? "equal" : "DIFFER") + "; Bell recurrence vs generating function: " +
                         (bell_ok ? "equal" : "DIFFER")};
  });

  criterion(9, [&] {
    const auto t0 = Clock::now();
    const int N = 2048;
    const std::uint64_t seed = 20240601;
    const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / N, N);
    const TestFunctionSpec phi = TestFunctionSpec::constant();
    const MassSampleSet s = sample_total_mass(cg, phi, 100000, seed);
    const SampleStats st = sample_stats(s.samples);
    const double target = 1.180341;
    const double tol2 = std::max(3 * st.m2_se, 0.02 * target);
    const bool mean_ok = std::abs(st.mean - 1.0) < 3 * st.mean_se;
    const bool m2_ok = std::abs(st.m2 - target) < tol2;
    const double secs = seconds_since(t0);
    const double exact_discrete = discrete_moment(cg, phi, 2);
    char buf[400];
    std::snprintf(buf, sizeof buf,
                  "seed %llu: mean %.5f (se %.5f, %s); m2 %.5f (se %.5f, |dev| %.5f vs tol %.5f, %s); "
                  "exact m2 of the discretized field %.5f; %.1f s",
                  static_cast<unsigned long long>(seed), st.mean, st.mean_se, mean_ok ? "ok" : "out",
                  st.m2, st.m2_se, std::abs(st.m2 - target), tol2, m2_ok ? "ok" : "out", exact_discrete,
                  secs);
    return std::pair{mean_ok && m2_ok && secs < 300.0, std::string(buf)};
  });

  criterion(10, [&] {
    const double eps = 1e-3;
    double worst = 0.0;
    for (const KernelSpec& k : {KernelSpec::interval(), KernelSpec::circle()})
      for (int i = 0; i < 100; ++i) {
        const double z = eps + (1.0 - eps) * i / 100.0;
        worst = std::max(worst, std::abs(rho_intersection(k, eps, z).value + k.log_r(z)));
      }
    const int pts = 10000;
    const ConicalIntensity ci = conical_intensity(KernelSpec::interval(), pts);
    bool ones = ci.f(1.0) == 1.0;
    for (int i = 0; i < pts; ++i) {
      const double l = 1e-6 * std::pow(1.0 / 1e-6, double(i) / pts);
      ones = ones && ci.f(l) == 1.0;
    }
    ones = ones && ci.worst_value == 1.0;
    return std::pair{worst < 1e-6 && ones, fmt("max |rho + log r| %.3g (< 1e-6); ", worst) +
                                               "interval intensity identically 1: " + (ones ? "yes" : "no")};
  });

  criterion(11, [&] {
    const CovarianceGrid cg = build_covariance(KernelSpec::interval(), 1.0, 1.0 / 32, 32, false);
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> nd(0.0, 0.2);
    std::uniform_int_distribution<int> yi(0, 31);
    double gworst = 0.0;
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd beta(32);
      for (int i = 0; i < 32; ++i) beta[i] = nd(rng);
      gworst = std::max(gworst, girsanov_check(cg.cov, 0.5, yi(rng), beta));
    }
    double iworst = 0.0;
    for (auto [mu, delta, L] : {std::tuple{1.0, 0.3, 1.0}, std::tuple{0.8, 0.5, 2.0}}) {
      const auto r = intermittency_invariance_check(mu, delta, L, KernelSpec::interval(), 1.0 / 64, 64);
      iworst = std::max({iworst, r.mean, r.cov});
    }
    return std::pair{gworst < 1e-12 && iworst < 1e-12,
                     fmt("girsanov max residual %.3g, ", gworst) + fmt("invariance max residual %.3g (< 1e-12)", iworst)};
  });

  criterion(12, [&] {
    const auto prov = joint_numeric_provider({{0.0, 0.5}, {0.5, 1.0}}, KernelSpec::interval(), opt);
    const Estimate a = multi_subset_H(1, {1, 1}, prov, {0.5, 0.5});
    const double exact = 0.375 - std::log(2.0) / 4;
    const Estimate b = multi_subset_H(1, {2, 1}, prov, {0.5, 0.5});
    const bool ok = std::abs(a.value - exact) < 1e-4 && std::abs(b.value) <= b.error;
    char buf[200];
    std::snprintf(buf, sizeof buf, "H(1;1,1)=%.8f vs %.8f (|err| %.2e < 1e-4); H(1;2,1)=%.2e bar %.2e",
                  a.value, exact, std::abs(a.value - exact), b.value, b.error);
    return std::pair{ok, std::string(buf)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
