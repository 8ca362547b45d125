#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmc/kernels.hpp"

namespace gmc {

// Every numeric kernel has a serial reference path and an OpenMP path. Both
// reduce partial results in the same fixed order, so they agree bit for bit.
enum class Exec { serial, parallel };

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool budget_exceeded = false;
  long long evaluations = 0;
  std::string warning;
};

// Gauss-Legendre nodes/weights on [0,1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

Rule gauss_legendre(int n);

// Composite Gauss-Legendre on [0,1] with geometric panels shrinking toward
// both endpoints (ratio sigma, `levels` panels per side, m nodes per panel).
// If stretch > 1 the lower end is additionally mapped x = v^stretch, which
// turns an x^{-(1 - 1/stretch)} endpoint singularity into a constant.
Rule graded_rule(int m, int levels, double sigma = 0.15, double stretch = 1.0);

// One block of points in the ordered-simplex integral: `count` points,
// restricted to [lo, hi] and symmetric among themselves.
struct PointGroup {
  double lo = 0.0;
  double hi = 1.0;
  int count = 1;
};

// The integrands we need all depend on the points only through
// P = prod phi(s_i) and G = sum_{i<j} g(s_i - s_j):
//   moment:        P * exp(mu * G)
//   mu_derivative: P * G^power
struct PairIntegrand {
  enum class Kind { moment, mu_derivative } kind = Kind::moment;
  double mu = 0.0;
  int power = 0;
  double operator()(double P, double G) const;
};

struct QuadratureLevel {
  int m;
  int levels;
  long long nodes_per_dim() const { return 2LL * (levels + 1) * m; }
};

// Largest level whose fine grid fits the budget for `dim` dimensions.
int pick_level(int dim, long long budget);
QuadratureLevel level_params(int level);

// Integral of F over prod_j [lo_j, hi_j]^{count_j}. Each group is reduced to
// its ordered simplex (times count_j!). Value is taken from the finer of two
// graded levels; error = |fine - coarse|.
Estimate ordered_integral(const std::vector<PointGroup>& groups, const KernelSpec& kernel,
                          const TestFunctionSpec& phi, const PairIntegrand& f, long long budget,
                          Exec exec);

// Same integral at a single fixed level (no error estimate); exposed for the
// serial/parallel benchmark and tests.
double ordered_integral_at(const std::vector<PointGroup>& groups, const KernelSpec& kernel,
                           const TestFunctionSpec& phi, const PairIntegrand& f, int level,
                           double stretch, Exec exec);

// Stratified Monte Carlo over the unordered product of groups. The first
// coordinate is split into `strata` equal slabs; each stratum owns an RNG
// stream seeded from (seed, stratum). Error = 3 pooled standard errors.
Estimate stratified_mc(const std::vector<PointGroup>& groups, const KernelSpec& kernel,
                       const TestFunctionSpec& phi, const PairIntegrand& f, long long samples,
                       std::uint64_t seed, Exec exec, int strata = 64);

}  // namespace gmc
