#include "gmc/expansion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmc/error.hpp"

namespace gmc {

namespace {

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

int RealPoly::degree() const {
  int d = static_cast<int>(c.size()) - 1;
  while (d >= 0 && c[d] == 0.0) --d;
  return d;
}

// ------------------------------------------------------------- circle c_p(l)

CircleCParts c_circle_parts(int p, double lambda) {
  if (p < 1) throw Error(ErrorKind::domain, "c_p needs p >= 1");
  if (!(lambda >= 0.0)) throw Error(ErrorKind::domain, "c_p needs lambda >= 0");
  CircleCParts out;
  out.p = p;
  const double scale = 1.0 / (p * std::ldexp(1.0, p));
  out.a_weight = (hurwitz_zeta(p, 1.0 + 2.0 * lambda) - 2.0 * hurwitz_zeta(p, 1.0 + lambda)) * scale;
  out.z_weight = riemann_zeta(p) * scale;
  const PolynomialQ B = bernoulli_polynomial(p + 1);
  const Rational Bn = bernoulli_number(p + 1);
  const Rational inv(1, p + 1);
  out.P = (B - PolynomialQ::constant(Bn)) * inv;
  out.Q = (B.shifted(Rational(1)) - PolynomialQ::constant(Bn)) * inv - PolynomialQ::x();
  return out;
}

double c_closed_circle(int p, double l, double lambda) {
  const CircleCParts cp = c_circle_parts(p, lambda);
  return cp.a_weight * cp.P(l) + cp.z_weight * cp.Q(l);
}

RealPoly c_closed_circle_poly(int p, double lambda) {
  const CircleCParts cp = c_circle_parts(p, lambda);
  const int deg = std::max(cp.P.degree(), cp.Q.degree());
  RealPoly r;
  r.c.resize(std::max(deg + 1, 0));
  for (int k = 0; k <= deg; ++k)
    r.c[k] = cp.a_weight * to_double(cp.P.coeff(k)) + cp.z_weight * to_double(cp.Q.coeff(k));
  return r;
}

LogMomentSeries circle_log_moment_series(double lambda, int max_order) {
  LogMomentSeries s;
  s.max_order = max_order;
  s.phibar = TestFunctionSpec::circular(lambda).mean();
  for (int p = 1; p <= max_order; ++p) s.c.push_back(c_closed_circle_poly(p, lambda));
  return s;
}

// ------------------------------------------------------------- numeric c_p(l)

namespace {

// x_n = Y_n - sum_{r=0}^{n-2} C(n-1,r) Y_{n-1-r} x_{r+1};  c_n = x_n / n!
std::vector<double> invert_bell(const std::vector<double>& Y) {
  const int pmax = static_cast<int>(Y.size()) - 1;
  std::vector<double> x(pmax + 1, 0.0), c(pmax + 1, 0.0);
  for (int n = 1; n <= pmax; ++n) {
    double v = Y[n];
    for (int r = 0; r <= n - 2; ++r) v -= binomial(n - 1, r) * Y[n - 1 - r] * x[r + 1];
    x[n] = v;
    c[n] = v / factorial(n);
  }
  return c;
}

}  // namespace

std::vector<Estimate> c_numeric_all(int pmax, int l, const KernelSpec& kernel,
                                    const TestFunctionSpec& phi, const OracleOptions& opt) {
  if (pmax < 1 || pmax > 6) throw Error(ErrorKind::domain, "c_numeric needs 1 <= p <= 6");
  if (l < 1 || l > 4) throw Error(ErrorKind::domain, "c_numeric needs 1 <= l <= 4");
  const double norm = std::pow(phi.mean(), l);
  std::vector<double> Y(pmax + 1, 1.0), Yerr(pmax + 1, 0.0);
  std::vector<Estimate> out(pmax);
  for (int n = 1; n <= pmax; ++n) {
    const Estimate d = moment_mu_derivative(l, n, kernel, phi, opt);
    Y[n] = d.value / norm;
    Yerr[n] = d.error / norm;
    if (d.budget_exceeded) out[0].budget_exceeded = true;
  }
  const std::vector<double> c = invert_bell(Y);
  // linearized error propagation, one derivative at a time
  std::vector<double> err(pmax + 1, 0.0);
  for (int m = 1; m <= pmax; ++m) {
    if (Yerr[m] == 0.0) continue;
    std::vector<double> Yp = Y;
    Yp[m] += Yerr[m];
    const std::vector<double> cp = invert_bell(Yp);
    for (int p = 1; p <= pmax; ++p) err[p] += std::abs(cp[p] - c[p]);
  }
  const bool extreme = norm < 1e-8 || norm > 1e8;
  for (int p = 1; p <= pmax; ++p) {
    out[p - 1].value = c[p];
    out[p - 1].error = err[p] + 8.0 * kEps * std::abs(c[p]);
    out[p - 1].budget_exceeded = out[0].budget_exceeded;
    if (extreme) out[p - 1].warning = "ill-conditioned: phibar^l = " + std::to_string(norm);
  }
  return out;
}

Estimate c_numeric(int p, int l, const KernelSpec& kernel, const TestFunctionSpec& phi,
                   const OracleOptions& opt) {
  return c_numeric_all(p, l, kernel, phi, opt).back();
}

LogMomentSeries fit_log_moment_series(const KernelSpec& kernel, const TestFunctionSpec& phi,
                                      int max_order, const OracleOptions& opt) {
  if (max_order < 1 || max_order + 1 > 4)
    throw Error(ErrorKind::domain, "fit_log_moment_series supports max_order 1..3");
  // cvals[l][p-1]
  std::vector<std::vector<double>> cvals(max_order + 2);
  for (int l = 2; l <= max_order + 1; ++l) {
    for (const Estimate& e : c_numeric_all(max_order, l, kernel, phi, opt))
      cvals[l].push_back(e.value);
  }
  LogMomentSeries s;
  s.phibar = phi.mean();
  s.max_order = max_order;
  for (int p = 1; p <= max_order; ++p) {
    const int npts = p + 2;  // l = 0..p+1
    Eigen::MatrixXd V(npts, npts);
    Eigen::VectorXd rhs(npts);
    for (int l = 0; l < npts; ++l) {
      for (int k = 0; k < npts; ++k) V(l, k) = std::pow(static_cast<double>(l), k);
      rhs(l) = l < 2 ? 0.0 : cvals[l][p - 1];
    }
    const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(rhs);
    RealPoly r;
    r.c.assign(coef.data(), coef.data() + npts);
    s.c.push_back(r);
  }
  return s;
}

// ------------------------------------------------------------------ H_{n,k}

DerivativeProvider numeric_provider(const KernelSpec& kernel, const TestFunctionSpec& phi,
                                    const OracleOptions& opt) {
  return [kernel, phi, opt](int l, int n) { return moment_mu_derivative(l, n, kernel, phi, opt); };
}

DerivativeProvider bell_provider(const LogMomentSeries& series) {
  return [series](int l, int n) {
    if (n > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
    std::vector<double> x(n);
    for (int r = 1; r <= n; ++r) x[r - 1] = factorial(r) * series(r, static_cast<double>(l));
    Estimate e;
    e.value = std::pow(series.phibar, l) * bell_polynomial(n, x);
    return e;
  };
}

Estimate H_coefficient(int n, int k, const DerivativeProvider& provider, double phibar) {
  if (n < 1 || k < 2) throw Error(ErrorKind::domain, "H_coefficient needs n >= 1, k >= 2");
  const double pref = sign_pow(k) / factorial(k);
  double sum = 0.0, err = 0.0, mag = 0.0;
  for (int l = 2; l <= k; ++l) {
    const Estimate d = provider(l, n);
    const double w = pref * sign_pow(l) * binomial(k, l) * std::pow(phibar, k - l);
    sum += w * d.value;
    err += std::abs(w) * d.error;
    mag += std::abs(w * d.value);
  }
  Estimate e;
  e.value = sum;
  // rounding in the alternating sum is part of the bar
  e.error = err + 4.0 * k * kEps * mag;
  return e;
}

std::map<std::pair<int, int>, double> H_by_recurrence(int n_max, int kmax,
                                                       const LogMomentSeries& series) {
  if (n_max > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
  const double pb = series.phibar;
  auto c = [&](int p, int l) { return series(p, static_cast<double>(l)); };
  // A_{n,k} = (-1)^k ((n+1)!/k!) sum_{l=2}^k (-1)^l C(k,l) c_{n+1}(l)
  auto A = [&](int n, int k) {
    double s = 0.0;
    for (int l = 2; l <= k; ++l) s += sign_pow(l) * binomial(k, l) * c(n + 1, l);
    return sign_pow(k) * factorial(n + 1) / factorial(k) * s;
  };
  // B_{r,t,k} = (-1)^k t! ((r+1)!/k!) sum_{l=t}^k (-1)^l C(k,l) C(l,t) c_{r+1}(l)
  auto B = [&](int r, int t, int k) {
    double s = 0.0;
    for (int l = t; l <= k; ++l) s += sign_pow(l) * binomial(k, l) * binomial(l, t) * c(r + 1, l);
    return sign_pow(k) * factorial(t) * factorial(r + 1) / factorial(k) * s;
  };
  std::map<std::pair<int, int>, double> H;
  for (int k = 2; k <= kmax; ++k) H[{1, k}] = std::pow(pb, k) * A(0, k);
  for (int n = 1; n < n_max; ++n) {
    for (int k = 2; k <= kmax; ++k) {
      double v = std::pow(pb, k) * A(n, k);
      for (int r = 0; r <= n - 1; ++r)
        for (int t = 2; t <= k; ++t)
          v += binomial(n, r) * std::pow(pb, k - t) * H.at({n - r, t}) * B(r, t, k);
      H[{n + 1, k}] = v;
    }
  }
  return H;
}

// ------------------------------------------------------------ Mellin series

std::vector<double> f_coefficients(int n_max, double q, const LogMomentSeries& series) {
  if (n_max > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
  std::vector<double> cq(n_max + 1, 0.0);
  for (int r = 1; r <= n_max; ++r) cq[r] = series(r, q);
  return f_coefficients<double>(n_max, std::pow(series.phibar, q), cq);
}

std::vector<cplx> f_coefficients(int n_max, cplx q, const LogMomentSeries& series) {
  if (n_max > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
  std::vector<cplx> cq(n_max + 1, 0.0);
  for (int r = 1; r <= n_max; ++r) cq[r] = series(r, q);
  return f_coefficients<cplx>(n_max, std::pow(cplx(series.phibar), q), cq);
}

MellinSeries mellin_series(double q, double mu, const LogMomentSeries& series, int P) {
  if (P > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
  MellinSeries out;
  double expo = 0.0;
  double mup = 1.0;
  out.smallest_term = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= P; ++r) {
    mup *= mu;
    const double t = mup * series(r, q);
    out.exponent_terms.push_back(t);
    expo += t;
    // c_1 vanishes identically for some kernels; skip exact zeros
    if (t != 0.0 && std::abs(t) < out.smallest_term) {
      out.smallest_term = std::abs(t);
      out.smallest_term_order = r;
    }
  }
  if (!std::isfinite(out.smallest_term)) out.smallest_term = 0.0;
  out.residual_estimate = P > 0 ? std::abs(out.exponent_terms.back()) : 0.0;
  out.exp_form = std::pow(series.phibar, q) * std::exp(expo);

  const std::vector<double> f = f_coefficients(P, q, series);
  double term = 0.0, mun = 1.0;
  for (int n = 0; n <= P; ++n) {
    term += mun * f[n] / factorial(n);
    mun *= mu;
  }
  out.term_form = term;
  return out;
}

int general_transform_table_length(int n_max, const LogMomentSeries& series) {
  if (n_max > series.max_order) throw Error(ErrorKind::insufficient_order, "series too short");
  std::vector<int> need(n_max + 1, 0);
  need[n_max] = 1;
  for (int n = n_max; n >= 1; --n) {
    if (need[n] == 0) continue;
    for (int r = 0; r <= n - 1; ++r) {
      const int deg = std::max(series.c[r].degree(), 0);
      need[n - 1 - r] = std::max(need[n - 1 - r], need[n] + deg);
    }
  }
  return std::max(need[0], 1);
}

std::vector<double> general_transform(const std::vector<double>& F_derivs, double a, double /*s*/,
                                      int n_max, const LogMomentSeries& series) {
  const int len0 = general_transform_table_length(n_max, series);
  if (static_cast<int>(F_derivs.size()) < len0)
    throw Error(ErrorKind::insufficient_order,
                "general_transform needs " + std::to_string(len0) + " derivatives, got " +
                    std::to_string(F_derivs.size()));
  // table[n][j] = d^j/ds^j F_n(s); lengths shrink by the operator degree
  std::vector<std::vector<double>> table(n_max + 1);
  table[0] = F_derivs;
  for (int n = 0; n < n_max; ++n) {
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (int r = 0; r <= n; ++r) {
      const int deg = std::max(series.c[r].degree(), 0);
      const std::size_t have = table[n - r].size();
      len = std::min(len, have > static_cast<std::size_t>(deg) ? have - deg : 0);
    }
    std::vector<double> next(len, 0.0);
    double falling = 1.0;  // n!/(n-r)!
    for (int r = 0; r <= n; ++r) {
      const RealPoly& cp = series.c[r];
      const std::vector<double>& src = table[n - r];
      for (std::size_t j = 0; j < len; ++j) {
        double acc = 0.0, am = 1.0;
        for (std::size_t m = 0; m < cp.c.size(); ++m) {
          if (cp.c[m] != 0.0) acc += cp.c[m] * am * src[j + m];
          am *= a;
        }
        next[j] += falling * (r + 1) * acc;
      }
      falling *= (n - r);
    }
    table[n + 1] = std::move(next);
  }
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) {
    if (table[n].empty()) throw Error(ErrorKind::insufficient_order, "derivative table exhausted");
    out.push_back(table[n][0]);
  }
  return out;
}

// ------------------------------------------------------------- multi-subset

JointDerivativeProvider joint_numeric_provider(const std::vector<Subinterval>& subsets,
                                               const KernelSpec& kernel, const OracleOptions& opt) {
  return [subsets, kernel, opt](const std::vector<int>& q, int n) {
    return joint_moment_mu_derivative(q, subsets, n, kernel, opt);
  };
}

Estimate multi_subset_H(int n, const std::vector<int>& k, const JointDerivativeProvider& provider,
                        const std::vector<double>& measures) {
  if (k.size() != measures.size()) throw Error(ErrorKind::input, "k and measures differ in length");
  const std::size_t N = k.size();
  int ksum = 0;
  double kfact = 1.0;
  for (int kj : k) {
    if (kj < 0) throw Error(ErrorKind::domain, "negative subset order");
    ksum += kj;
    kfact *= factorial(kj);
  }
  const double pref = sign_pow(ksum) / kfact;
  std::vector<int> q(N, 0);
  double sum = 0.0, err = 0.0, mag = 0.0;
  while (true) {
    int qsum = 0;
    double w = pref;
    for (std::size_t j = 0; j < N; ++j) {
      qsum += q[j];
      w *= std::pow(measures[j], k[j] - q[j]) * binomial(k[j], q[j]);
    }
    w *= sign_pow(qsum);
    const Estimate d = provider(q, n);
    sum += w * d.value;
    err += std::abs(w) * d.error;
    mag += std::abs(w * d.value);
    // odometer over q <= k
    std::size_t j = 0;
    while (j < N && q[j] == k[j]) q[j++] = 0;
    if (j == N) break;
    ++q[j];
  }
  Estimate e;
  e.value = sum;
  e.error = err + 4.0 * (ksum + 1) * kEps * mag;
  return e;
}

}  // namespace gmc
