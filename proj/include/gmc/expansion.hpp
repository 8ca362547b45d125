#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gmc/moments.hpp"
#include "gmc/specfun.hpp"

namespace gmc {

// Polynomial with real coefficients, c[k] multiplies x^k.
struct RealPoly {
  std::vector<double> c;

  int degree() const;
  template <class T>
  T operator()(const T& x) const {
    T acc = T(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }
};

// c_p(l), p = 1..max_order, as polynomials in the moment order l, together
// with phibar. c[p-1] holds c_p.
struct LogMomentSeries {
  std::vector<RealPoly> c;
  double phibar = 1.0;
  int max_order = 0;

  double operator()(int p, double l) const { return c.at(p - 1)(l); }
  cplx operator()(int p, cplx l) const { return c.at(p - 1)(l); }
};

// Circle closed form split into its exact Bernoulli parts:
//   c_p(l) = a_weight * P(l) + z_weight * Q(l)
//   P(l) = (B_{p+1}(l) - B_{p+1}) / (p+1)
//   Q(l) = (B_{p+1}(l+1) - B_{p+1}) / (p+1) - l
//   a_weight = (zeta(p,1+2 lambda) - 2 zeta(p,1+lambda)) / (p 2^p),  z_weight = zeta(p) / (p 2^p)
struct CircleCParts {
  int p = 1;
  double a_weight = 0.0;
  double z_weight = 0.0;
  PolynomialQ P;
  PolynomialQ Q;
};

CircleCParts c_circle_parts(int p, double lambda);
double c_closed_circle(int p, double l, double lambda);
RealPoly c_closed_circle_poly(int p, double lambda);
LogMomentSeries circle_log_moment_series(double lambda, int max_order);

// c_1(l)..c_pmax(l) extracted from numeric mu-derivatives of S_l by inverting
// d^n S_l = phibar^l Y_n(1! c_1, ..., n! c_n).
std::vector<Estimate> c_numeric_all(int pmax, int l, const KernelSpec& kernel,
                                    const TestFunctionSpec& phi, const OracleOptions& opt = {});
Estimate c_numeric(int p, int l, const KernelSpec& kernel, const TestFunctionSpec& phi,
                   const OracleOptions& opt = {});

// Generic kernel: interpolate c_p through l = 0, 1 (exact zeros) and
// l = 2..p+1 (numeric). Requires max_order + 1 <= 4 for quadrature.
LogMomentSeries fit_log_moment_series(const KernelSpec& kernel, const TestFunctionSpec& phi,
                                      int max_order, const OracleOptions& opt = {});

// (l, n) -> d^n S_l / dmu^n at mu = 0
using DerivativeProvider = std::function<Estimate(int l, int n)>;

DerivativeProvider numeric_provider(const KernelSpec& kernel, const TestFunctionSpec& phi,
                                    const OracleOptions& opt = {});
DerivativeProvider bell_provider(const LogMomentSeries& series);

// H_{n,k} = ((-1)^k/k!) sum_{l=2}^k (-1)^l C(k,l) phibar^{k-l} d^n S_l
Estimate H_coefficient(int n, int k, const DerivativeProvider& provider, double phibar);

// H(n,k) for 1 <= n <= n_max, 2 <= k <= kmax regenerated from c_p(l) by the
// A_{n,k} / B_{r,t,k} recurrence.
std::map<std::pair<int, int>, double> H_by_recurrence(int n_max, int kmax,
                                                       const LogMomentSeries& series);

// f_0 = f0, f_{n+1} = n! sum_{r=0}^n f_{n-r}/(n-r)! (r+1) c_{r+1}; cq[r] = c_r(q), cq[0] unused.
// T needs +, *, and construction from long.
template <class T>
std::vector<T> f_coefficients(int n_max, const T& f0, const std::vector<T>& cq) {
  std::vector<T> f{f0};
  for (int n = 0; n < n_max; ++n) {
    T next = T(0);
    long falling = 1;  // n!/(n-r)!
    for (int r = 0; r <= n; ++r) {
      next = next + T(falling) * T(r + 1) * f[n - r] * cq[r + 1];
      falling *= (n - r);
    }
    f.push_back(next);
  }
  return f;
}

std::vector<double> f_coefficients(int n_max, double q, const LogMomentSeries& series);
std::vector<cplx> f_coefficients(int n_max, cplx q, const LogMomentSeries& series);

struct MellinSeries {
  double exp_form = 0.0;   // phibar^q exp(sum_{r<=P} mu^r c_r(q))
  double term_form = 0.0;  // sum_{n<=P} mu^n f_n(q)/n!
  std::vector<double> exponent_terms;  // mu^r c_r(q), r = 1..P
  int smallest_term_order = 0;         // optimal truncation heuristic
  double smallest_term = 0.0;
  double residual_estimate = 0.0;      // |last exponent term|
};

MellinSeries mellin_series(double q, double mu, const LogMomentSeries& series, int P);

// F_derivs[j] = F^{(j)}(s). Returns F_0..F_{n_max} at s.
std::vector<double> general_transform(const std::vector<double>& F_derivs, double a, double s,
                                      int n_max, const LogMomentSeries& series);
// Number of derivatives general_transform needs for this series and n_max.
int general_transform_table_length(int n_max, const LogMomentSeries& series);

// (q_vec, n) -> d^n S_{q_vec} / dmu^n at mu = 0
using JointDerivativeProvider = std::function<Estimate(const std::vector<int>& q, int n)>;

JointDerivativeProvider joint_numeric_provider(const std::vector<Subinterval>& subsets,
                                               const KernelSpec& kernel,
                                               const OracleOptions& opt = {});

Estimate multi_subset_H(int n, const std::vector<int>& k, const JointDerivativeProvider& provider,
                        const std::vector<double>& subset_measures);

}  // namespace gmc
