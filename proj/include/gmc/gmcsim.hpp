#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gmc/kernels.hpp"
#include "gmc/quadrature.hpp"

namespace gmc {

struct CovarianceGrid {
  int N = 0;
  double epsilon = 0.0;
  double mu = 0.0;
  KernelSpec kernel;
  std::vector<double> grid;  // s_i = i/N
  Eigen::MatrixXd cov;       // the regularized formula itself
  // Periodic kernels: the formula leaves the constant (zero Fourier) mode
  // slightly negative, about -mu*eps*N. The sampled field adds the smallest
  // constant that lifts it to zero.
  double zero_mode_offset = 0.0;
  Eigen::VectorXd mean;      // -(cov_ii + offset) / 2
  Eigen::MatrixXd factor;    // lower triangular, factor factor^T = cov + offset + jitter I
  double jitter = 0.0;

  Eigen::MatrixXd field_cov() const { return cov.array() + zero_mode_offset; }
};

// Regularized covariance on N equispaced points. Circle distances are folded.
double regularized_cov(const KernelSpec& kernel, double mu, double epsilon, double ds);
CovarianceGrid build_covariance(const KernelSpec& kernel, double mu, double epsilon, int N,
                                bool factorize = true);

// Cell integrals of phi over [i/N, (i+1)/N], rescaled to sum exactly to phibar.
std::vector<double> cell_weights(const TestFunctionSpec& phi, int N);

struct MassSampleSet {
  std::vector<double> samples;
  std::uint64_t seed = 0;
  long long n_samples = 0;
  int N = 0;
  double mu = 0.0;
  double epsilon = 0.0;
};

// Samples are drawn in blocks of kSampleBlock; block b owns an RNG seeded from
// (seed, b), so the set does not depend on how blocks are spread over threads.
inline constexpr int kSampleBlock = 256;
MassSampleSet sample_total_mass(const CovarianceGrid& cg, const TestFunctionSpec& phi,
                                long long n_samples, std::uint64_t seed,
                                Exec exec = Exec::parallel);

// Exact E[M^n] of the discretized sampler (n = 1, 2, 3).
double discrete_moment(const CovarianceGrid& cg, const TestFunctionSpec& phi, int n);

struct SampleStats {
  double mean = 0.0, mean_se = 0.0;
  double m2 = 0.0, m2_se = 0.0;
};
SampleStats sample_stats(const std::vector<double>& x);
double empirical_moment(const std::vector<double>& x, int n, double* se = nullptr);

// --- conical construction -------------------------------------------------

struct ConicalIntensity {
  std::function<double(double)> f;
  double upper = 1.0;      // f is defined on (0, upper); l >= 1 branch only for the interval
  bool positive = true;
  double worst_l = 0.0;    // location of the smallest value on the check grid
  double worst_value = 0.0;
};

// f(l) = -l^2 (log r)''(l) on (0,1), (log r)'(1) for l >= 1. Periodic kernels
// are cut at l = 1/2, where (log r)' vanishes.
ConicalIntensity conical_intensity(const KernelSpec& kernel, int check_points = 10000);

struct RhoResult {
  double value = 0.0;
  double abs_error = 0.0;
};
RhoResult rho_intersection(const KernelSpec& kernel, double epsilon, double z);

// |LHS - RHS| for G(X) = exp(beta . X); cov is the unit-mu covariance.
double girsanov_check(const Eigen::MatrixXd& cov, double alpha, int y_index,
                      const Eigen::VectorXd& beta);

struct InvarianceResidual {
  double mean = 0.0;
  double cov = 0.0;
};
InvarianceResidual intermittency_invariance_check(double mu, double delta, double L,
                                                  const KernelSpec& kernel, double epsilon,
                                                  int N);

// --- sample I/O ---------------------------------------------------------------

void write_samples_csv(const std::string& path, const MassSampleSet& s);
MassSampleSet read_samples_csv(const std::string& path);
// 64-byte space-padded JSON header {"format","count","meta_bytes"}, then the
// metadata JSON, then count little-endian doubles.
void write_samples_binary(const std::string& path, const MassSampleSet& s);
MassSampleSet read_samples_binary(const std::string& path);

}  // namespace gmc
