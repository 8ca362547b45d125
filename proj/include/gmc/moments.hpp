#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gmc/kernels.hpp"
#include "gmc/quadrature.hpp"

namespace gmc {

struct MomentRequest {
  int n = 1;
  double mu = 0.0;
  KernelSpec kernel = KernelSpec::interval();
  TestFunctionSpec phi = TestFunctionSpec::constant();
};

enum class OracleMethod { quadrature, montecarlo };

struct OracleOptions {
  OracleMethod method = OracleMethod::quadrature;
  long long budget = 40'000'000;  // quadrature: integrand evaluations at the fine level
  long long mc_samples = 2'000'000;  // Monte Carlo path
  std::uint64_t seed = 20240601;
  Exec exec = Exec::parallel;
};

// prod_{j<n} Gamma(1+2l-j/tau) Gamma(1-(j+1)/tau) / [Gamma(1+l-j/tau)^2 Gamma(1-1/tau)]
double morris_moment(int n, double tau, double lambda);

// S_n by direct multiple integration.
Estimate numeric_moment_oracle(const MomentRequest& req, const OracleOptions& opt = {});

// d^n/dmu^n S_l at mu = 0. Quadrature for l <= 4; Monte Carlo beyond (or on request).
Estimate moment_mu_derivative(int l, int n, const KernelSpec& kernel, const TestFunctionSpec& phi,
                              const OracleOptions& opt = {});

// zeta(q) = q d - mu q (q-1)/2
double multifractal_spectrum(double q, double mu, int d);
bool nondegenerate(double mu, int d);

struct Subinterval {
  double lo, hi;
};

// Joint moment E[prod_j M(D_j)^{q_j}] with constant phi.
Estimate joint_moment_oracle(const std::vector<int>& orders, const std::vector<Subinterval>& subsets,
                             double mu, const KernelSpec& kernel, const OracleOptions& opt = {});

// n-th mu-derivative at 0 of the joint moment.
Estimate joint_moment_mu_derivative(const std::vector<int>& orders,
                                    const std::vector<Subinterval>& subsets, int n,
                                    const KernelSpec& kernel, const OracleOptions& opt = {});

}  // namespace gmc
