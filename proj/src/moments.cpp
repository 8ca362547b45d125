#include "gmc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmc/error.hpp"
#include "gmc/specfun.hpp"

namespace gmc {

namespace {

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

double checked_gamma(double x, int j, const char* which) {
  if (is_pole(x)) throw PoleError(j, which, x);
  return std::tgamma(x);
}

void check_divergence(int n, double mu, int d = 1) {
  if (mu > 0.0 && !(n < 2.0 * d / mu))
    throw Error(ErrorKind::divergence, "moment of order " + std::to_string(n) +
                                           " diverges for mu = " + std::to_string(mu));
}

Estimate run_integral(const std::vector<PointGroup>& groups, const KernelSpec& kernel,
                      const TestFunctionSpec& phi, const PairIntegrand& f, int dim,
                      const OracleOptions& opt) {
  if (opt.method == OracleMethod::montecarlo || dim > 4)
    return stratified_mc(groups, kernel, phi, f, opt.mc_samples, opt.seed, opt.exec);
  return ordered_integral(groups, kernel, phi, f, opt.budget, opt.exec);
}

std::vector<PointGroup> subset_groups(const std::vector<int>& orders,
                                      const std::vector<Subinterval>& subsets) {
  if (orders.size() != subsets.size())
    throw Error(ErrorKind::input, "orders and subsets differ in length");
  std::vector<PointGroup> groups;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const auto& s = subsets[j];
    if (!(s.lo >= 0.0 && s.hi <= 1.0 && s.lo < s.hi))
      throw Error(ErrorKind::domain, "subset must be a nonempty subinterval of [0,1]");
    for (std::size_t i = 0; i < j; ++i) {
      const auto& o = subsets[i];
      if (s.lo < o.hi && o.lo < s.hi) throw Error(ErrorKind::domain, "subsets overlap");
    }
    if (orders[j] < 0) throw Error(ErrorKind::domain, "negative order");
    groups.push_back({s.lo, s.hi, orders[j]});
  }
  return groups;
}

}  // namespace

double morris_moment(int n, double tau, double lambda) {
  if (n < 1) throw Error(ErrorKind::domain, "morris_moment needs n >= 1");
  if (!(lambda >= 0.0)) throw Error(ErrorKind::domain, "morris_moment needs lambda >= 0");
  if (!(n < tau))
    throw Error(ErrorKind::divergence, "morris_moment: n = " + std::to_string(n) +
                                           " is not below tau = " + std::to_string(tau));
  const double g1 = checked_gamma(1.0 - 1.0 / tau, 0, "Gamma(1-1/tau)");
  double prod = 1.0;
  for (int j = 0; j < n; ++j) {
    const double a = checked_gamma(1.0 + 2.0 * lambda - j / tau, j, "Gamma(1+2lambda-j/tau)");
    const double b = checked_gamma(1.0 - (j + 1) / tau, j, "Gamma(1-(j+1)/tau)");
    const double c = checked_gamma(1.0 + lambda - j / tau, j, "Gamma(1+lambda-j/tau)");
    prod *= a * b / (c * c * g1);
  }
  return prod;
}

Estimate numeric_moment_oracle(const MomentRequest& req, const OracleOptions& opt) {
  if (req.n < 1) throw Error(ErrorKind::domain, "moment order must be positive");
  if (!(req.mu >= 0.0)) throw Error(ErrorKind::domain, "mu must be nonnegative");
  check_divergence(req.n, req.mu, req.kernel.dimension);
  if (req.n == 1) return Estimate{req.phi.mean(), 0.0, false, 0};
  // no field: the integrand factorizes
  if (req.mu == 0.0) return Estimate{std::pow(req.phi.mean(), req.n), 0.0, false, 0};
  PairIntegrand f;
  f.kind = PairIntegrand::Kind::moment;
  f.mu = req.mu;
  return run_integral({{0.0, 1.0, req.n}}, req.kernel, req.phi, f, req.n, opt);
}

Estimate moment_mu_derivative(int l, int n, const KernelSpec& kernel, const TestFunctionSpec& phi,
                              const OracleOptions& opt) {
  if (l < 1 || n < 0) throw Error(ErrorKind::domain, "moment_mu_derivative needs l>=1, n>=0");
  if (n == 0) return Estimate{std::pow(phi.mean(), l), 0.0, false, 0};
  if (l == 1) return Estimate{0.0, 0.0, false, 0};
  PairIntegrand f;
  f.kind = PairIntegrand::Kind::mu_derivative;
  f.power = n;
  return run_integral({{0.0, 1.0, l}}, kernel, phi, f, l, opt);
}

double multifractal_spectrum(double q, double mu, int d) {
  if (!(mu >= 0.0)) throw Error(ErrorKind::domain, "mu must be nonnegative");
  return q * d - mu * q * (q - 1.0) / 2.0;
}

// zeta'(1) = d - mu/2 > 0  <=>  mu < 2d
bool nondegenerate(double mu, int d) { return d - mu / 2.0 > 0.0; }

Estimate joint_moment_oracle(const std::vector<int>& orders, const std::vector<Subinterval>& subsets,
                             double mu, const KernelSpec& kernel, const OracleOptions& opt) {
  const auto groups = subset_groups(orders, subsets);
  int total = 0;
  for (int q : orders) total += q;
  check_divergence(total, mu, kernel.dimension);
  PairIntegrand f;
  f.kind = PairIntegrand::Kind::moment;
  f.mu = mu;
  return run_integral(groups, kernel, TestFunctionSpec::constant(), f, total, opt);
}

Estimate joint_moment_mu_derivative(const std::vector<int>& orders,
                                    const std::vector<Subinterval>& subsets, int n,
                                    const KernelSpec& kernel, const OracleOptions& opt) {
  const auto groups = subset_groups(orders, subsets);
  int total = 0;
  double volume = 1.0;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    total += orders[j];
    volume *= std::pow(subsets[j].hi - subsets[j].lo, orders[j]);
  }
  if (n == 0) return Estimate{volume, 0.0, false, 0};
  if (total <= 1) return Estimate{0.0, 0.0, false, 0};
  PairIntegrand f;
  f.kind = PairIntegrand::Kind::mu_derivative;
  f.power = n;
  return run_integral(groups, kernel, TestFunctionSpec::constant(), f, total, opt);
}

}  // namespace gmc
