#include "gmc/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gmc/error.hpp"
#include "gmc/quadrature.hpp"

namespace gmc {

namespace {

constexpr int kTaylorTerms = 40;
constexpr double kTaylorCut = 0.5;

// bracket(x) = sum_{k>=2} b_k x^k,  b_k = sum_{m+j=k} q^{m+1}/(m+1)! B_j/j!
std::vector<cplx> bracket_taylor(cplx q) {
  std::vector<double> bj(kTaylorTerms + 1);
  for (int j = 0; j <= kTaylorTerms; ++j) bj[j] = to_double(bernoulli_number(j)) / factorial(j);
  std::vector<cplx> qm(kTaylorTerms + 1);  // q^{m+1}/(m+1)!
  cplx pw = q;
  for (int m = 0; m <= kTaylorTerms; ++m) {
    qm[m] = pw;
    pw *= q / double(m + 2);
  }
  std::vector<cplx> b(kTaylorTerms + 1, 0.0);
  for (int k = 2; k <= kTaylorTerms; ++k)
    for (int j = 0; j <= k; ++j) b[k] += qm[k - j] * bj[j];
  return b;
}

struct IIntegrand {
  cplx q;
  double a, tau;
  std::vector<cplx> b;

  cplx operator()(double x) const {
    if (x < kTaylorCut) {
      cplx br = 0.0;
      for (int k = kTaylorTerms; k >= 2; --k) br = br * x + b[k];
      br *= x * x;
      return br * std::exp(-a * x) / (x * std::expm1(tau * x));
    }
    // everything exponential folded into one factor so nothing overflows
    const double den = -std::expm1(-tau * x) * x;
    const cplx t1 = std::exp((q - 1.0 - a - tau) * x) * (1.0 - std::exp(-q * x)) /
                    (-std::expm1(-x));
    const cplx t2 = (q + (q * q - q) * (0.5 * x)) * std::exp(-(a + tau) * x);
    return (t1 - t2) / den;
  }
};

cplx panel_sum(const IIntegrand& f, double lo, double hi, double h, const Rule& rule) {
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / h - 1e-12)));
  const double w = (hi - lo) / n;
  cplx total = 0.0;
  for (int p = 0; p < n; ++p) {
    const double x0 = lo + p * w;
    cplx s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.w[i] * f(x0 + w * rule.x[i]);
    total += s * w;
  }
  return total;
}

cplx I_with_rule(const IIntegrand& f, double kappa, const Rule& rule) {
  const double decay = f.a + f.tau;
  double h0 = std::min(0.5, 2.0 * std::numbers::pi / f.tau);
  double h1 = std::min({2.0, 2.0 * std::numbers::pi / f.tau, 6.0 / decay});
  if (f.q.imag() != 0.0) {
    h0 = std::min(h0, std::numbers::pi / std::abs(f.q.imag()));
    h1 = std::min(h1, std::numbers::pi / std::abs(f.q.imag()));
  }
  h0 = std::min(h0, 6.0 / decay);
  const double X = 1.0 + 45.0 / kappa;
  return panel_sum(f, 0.0, 1.0, h0, rule) + panel_sum(f, 1.0, X, h1, rule);
}

double decay_rate(cplx q, double a, double tau) {
  return a + tau - std::max(0.0, q.real() - 1.0);
}

}  // namespace

cplx I_integral(cplx q, double a, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorKind::domain, "I_integral needs tau > 0");
  const double kappa = decay_rate(q, a, tau);
  if (!(kappa > 0.0) || !(a + tau > 0.0))
    throw Error(ErrorKind::domain, "I_integral diverges: a + tau - max(0, Re q - 1) <= 0");
  if (q == 0.0 || q == 1.0) return 0.0;
  const IIntegrand f{q, a, tau, bracket_taylor(q)};
  const cplx v1 = I_with_rule(f, kappa, gauss_legendre(20));
  const cplx v2 = I_with_rule(f, kappa, gauss_legendre(30));
  const double diff = std::abs(v1 - v2);
  if (!(diff <= 1e-11 * (1.0 + std::abs(v2))))
    throw Error(ErrorKind::convergence,
                "I_integral: node refinement changed the value by " + std::to_string(diff));
  return v2;
}

cplx log_G_ratio(cplx q, double a, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorKind::domain, "log_G_ratio needs tau > 0");
  if (q == 0.0) return 0.0;
  // shift a upward until the integral representation is comfortably valid
  int m = 0;
  while (!(a + m >= -0.75 * tau && decay_rate(q, a + m, tau) >= 0.5)) ++m;
  const double as = a + m;
  const double t = 1.0 + as / tau;
  cplx v = I_integral(q, as, tau) + q * log_gamma(t) - (q * q - q) / (2.0 * tau) * digamma(t);
  const cplx z0 = 1.0 + a + tau;
  for (int j = 0; j < m; ++j) {
    const cplx u = (z0 + double(j)) / tau;
    const cplx w = (z0 - q + double(j)) / tau;
    auto is_pole = [](cplx z) {
      return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
    };
    if (is_pole(u) || is_pole(w))
      throw PoleError(j, "Gamma in the G shift", is_pole(u) ? u.real() : w.real());
    v -= log_gamma(u) - log_gamma(w);
  }
  return v;
}

cplx morris_g_part_log(const MellinParams& p) {
  if (!(p.tau > 0.0)) throw Error(ErrorKind::domain, "tau must be positive");
  if (!(p.lambda1 >= 0.0 && p.lambda2 >= 0.0)) throw Error(ErrorKind::domain, "lambda must be >= 0");
  const double t = p.tau;
  return log_G_ratio(p.q, t * (p.lambda1 + p.lambda2), t) + log_G_ratio(p.q, -1.0, t) -
         log_G_ratio(p.q, t * p.lambda1, t) - log_G_ratio(p.q, t * p.lambda2, t);
}

cplx morris_log_mellin(const MellinParams& p) {
  if (p.tau == 1.0) throw PoleError(0, "Gamma(1-1/tau)", 0.0);
  return morris_g_part_log(p) - p.q * log_gamma(cplx(1.0 - 1.0 / p.tau));
}

cplx morris_mellin(const MellinParams& p) { return std::exp(morris_log_mellin(p)); }

namespace {

cplx selberg_g_part_log(const MellinParams& p) {
  const double t = p.tau;
  const double a4 = 1.0 + t * (1.0 + p.lambda1 + p.lambda2);
  return log_G_ratio(p.q, t * p.lambda1, t) + log_G_ratio(p.q, t * p.lambda2, t) +
         log_G_ratio(p.q, -1.0, t) + log_G_ratio(p.q, a4, t) - log_G_ratio(2.0 * p.q, a4, t);
}

double log_prefactor_base(double tau) {
  return std::log(2.0 * std::numbers::pi) + std::log(tau) / tau - log_gamma(1.0 - 1.0 / tau);
}

}  // namespace

double selberg_log_calibration(double tau, double lambda1, double lambda2) {
  MellinParams one{tau, lambda1, lambda2, 1.0};
  const double beta =
      log_gamma(1.0 + lambda1) + log_gamma(1.0 + lambda2) - log_gamma(2.0 + lambda1 + lambda2);
  const double logK = beta - log_prefactor_base(tau) - selberg_g_part_log(one).real();
  // K must not depend on lambda; compare with lambda = 0
  if (lambda1 != 0.0 || lambda2 != 0.0) {
    const double k0 = selberg_log_calibration(tau, 0.0, 0.0);
    if (std::abs(k0 - logK) > 1e-9)
      throw Error(ErrorKind::calibration, "Selberg normalization depends on lambda: " +
                                              std::to_string(logK) + " vs " + std::to_string(k0));
  }
  return logK;
}

cplx selberg_log_mellin(const MellinParams& p) {
  if (!(p.tau > 1.0)) throw Error(ErrorKind::domain, "selberg_mellin needs tau > 1");
  if (!(p.lambda1 >= 0.0 && p.lambda2 >= 0.0)) throw Error(ErrorKind::domain, "lambda must be >= 0");
  const double logK = selberg_log_calibration(p.tau, p.lambda1, p.lambda2);
  return p.q * (log_prefactor_base(p.tau) + logK) + selberg_g_part_log(p);
}

cplx selberg_mellin(const MellinParams& p) { return std::exp(selberg_log_mellin(p)); }

double asymptotic_logM_coefficient(int p, double q, double l1, double l2) {
  if (p == 0) return q * (log_gamma(1.0 + l1 + l2) - log_gamma(1.0 + l1) - log_gamma(1.0 + l2));
  const double aw = hurwitz_zeta(p, 1.0 + l1 + l2) - hurwitz_zeta(p, 1.0 + l1) - hurwitz_zeta(p, 1.0 + l2);
  const double z = riemann_zeta(p);
  const PolynomialQ B = bernoulli_polynomial(p + 1);
  const double Bn = to_double(bernoulli_number(p + 1));
  const double P = (B(q) - Bn) / (p + 1);
  const double Q = (B(q + 1.0) - Bn) / (p + 1);
  return (aw * P + z * Q - q * z) / p;
}

double asymptotic_logM(double q, double tau, double l1, double l2, int P) {
  if (P < 0) throw Error(ErrorKind::domain, "order must be >= 0");
  double s = asymptotic_logM_coefficient(0, q, l1, l2);
  for (int p = 1; p <= P; ++p) s += asymptotic_logM_coefficient(p, q, l1, l2) * std::pow(tau, -p);
  return s;
}

double self_duality_residual(double q, double tau) {
  if (q == 0.0) return 0.0;
  const cplx lhs = morris_g_part_log({1.0 / tau, 0.0, 0.0, q / tau}) + log_gamma(cplx(1.0 - q / tau));
  const cplx rhs = morris_g_part_log({tau, 0.0, 0.0, q}) + log_gamma(cplx(1.0 - q));
  return std::abs(std::exp(lhs) - std::exp(rhs));
}

}  // namespace gmc
