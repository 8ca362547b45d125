#pragma once

#include <functional>
#include <string>

namespace gmc {

enum class KernelKind { interval, circle, gff_circle, custom };

// r(t) of the log-correlated covariance -mu log r(s - t).
struct KernelSpec {
  KernelKind kind = KernelKind::interval;
  double qparam = 0.0;  // only for gff_circle
  int dimension = 1;
  bool periodic = false;  // r(t) = r(1 - t) boundary condition

  std::function<double(double)> custom_log_r;
  std::function<double(double)> custom_dlog_r;
  std::function<double(double)> custom_d2log_r;  // optional

  static KernelSpec interval();
  static KernelSpec circle();
  static KernelSpec gff_circle(double q);
  // Validates lim t*dlog_r(t) = 1 at t = 1e-4 (tolerance 1e-3).
  static KernelSpec custom(std::function<double(double)> log_r,
                           std::function<double(double)> dlog_r,
                           std::function<double(double)> d2log_r, bool periodic);

  // t in (-1, 1); even in t.
  double log_r(double t) const;
  double dlog_r(double t) const;   // d/dt log r at t in (0,1)
  double d2log_r(double t) const;  // d^2/dt^2 log r at t in (0,1)
  double g(double t) const { return -log_r(t); }

  std::string name() const;
};

enum class PhiKind { constant, circular, beta };

struct TestFunctionSpec {
  PhiKind kind = PhiKind::constant;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  static TestFunctionSpec constant();
  static TestFunctionSpec circular(double lambda);
  static TestFunctionSpec beta(double lambda1, double lambda2);

  double operator()(double s) const;
  double mean() const;  // phibar = int_0^1 phi
  bool is_constant() const { return kind == PhiKind::constant; }
  std::string name() const;
};

}  // namespace gmc
