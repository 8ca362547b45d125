#include "gmc/kernels.hpp"

#include <cmath>
#include <numbers>

#include "gmc/error.hpp"
#include "gmc/specfun.hpp"

namespace gmc {

using std::numbers::pi;

KernelSpec KernelSpec::interval() { return KernelSpec{}; }

KernelSpec KernelSpec::circle() {
  KernelSpec k;
  k.kind = KernelKind::circle;
  k.periodic = true;
  return k;
}

KernelSpec KernelSpec::gff_circle(double q) {
  if (!(q > -1.0 && q < 1.0)) throw Error(ErrorKind::domain, "gff_circle needs q in (-1,1)");
  KernelSpec k;
  k.kind = KernelKind::gff_circle;
  k.qparam = q;
  k.periodic = true;
  return k;
}

KernelSpec KernelSpec::custom(std::function<double(double)> log_r,
                              std::function<double(double)> dlog_r,
                              std::function<double(double)> d2log_r, bool periodic) {
  if (!log_r || !dlog_r) throw Error(ErrorKind::input, "custom kernel needs log_r and dlog_r");
  const double t = 1e-4;
  const double lim = t * dlog_r(t);
  if (!(std::abs(lim - 1.0) < 1e-3))
    throw Error(ErrorKind::domain,
                "custom kernel is not log-correlated: t*dlog_r(t) = " + std::to_string(lim) +
                    " at t = 1e-4");
  KernelSpec k;
  k.kind = KernelKind::custom;
  k.periodic = periodic;
  k.custom_log_r = std::move(log_r);
  k.custom_dlog_r = std::move(dlog_r);
  k.custom_d2log_r = std::move(d2log_r);
  return k;
}

double KernelSpec::log_r(double t) const {
  t = std::abs(t);
  // fold onto [0, 1/2] so that the wrap-around zero keeps full precision
  if (periodic && t > 0.5) t = 1.0 - t;
  switch (kind) {
    case KernelKind::interval: return std::log(t);
    case KernelKind::circle: return std::log(2.0 * std::sin(pi * t));
    case KernelKind::gff_circle: {
      const double q = qparam;
      const double den = 1.0 - 2.0 * q * std::cos(2.0 * pi * t) + q * q;
      return std::log(2.0 * std::sin(pi * t)) - 0.5 * std::log(den);
    }
    case KernelKind::custom: return custom_log_r(t);
  }
  return 0.0;
}

double KernelSpec::dlog_r(double t) const {
  switch (kind) {
    case KernelKind::interval: return 1.0 / t;
    case KernelKind::circle: return pi / std::tan(pi * t);
    case KernelKind::gff_circle: {
      const double q = qparam;
      const double c = std::cos(2.0 * pi * t), s = std::sin(2.0 * pi * t);
      const double den = 1.0 - 2.0 * q * c + q * q;
      return pi / std::tan(pi * t) - 2.0 * pi * q * s / den;
    }
    case KernelKind::custom: return custom_dlog_r(t);
  }
  return 0.0;
}

double KernelSpec::d2log_r(double t) const {
  switch (kind) {
    case KernelKind::interval: return -1.0 / (t * t);
    case KernelKind::circle: {
      const double s = std::sin(pi * t);
      return -pi * pi / (s * s);
    }
    case KernelKind::gff_circle: {
      const double q = qparam;
      const double sp = std::sin(pi * t);
      const double c = std::cos(2.0 * pi * t), s = std::sin(2.0 * pi * t);
      const double den = 1.0 - 2.0 * q * c + q * q;
      return -pi * pi / (sp * sp) - 4.0 * pi * pi * q * (c * den - 2.0 * q * s * s) / (den * den);
    }
    case KernelKind::custom: {
      if (custom_d2log_r) return custom_d2log_r(t);
      const double h = 1e-5 * std::max(t, 1e-3);
      return (custom_dlog_r(t + h) - custom_dlog_r(t - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

std::string KernelSpec::name() const {
  switch (kind) {
    case KernelKind::interval: return "interval";
    case KernelKind::circle: return "circle";
    case KernelKind::gff_circle: return "gff_circle";
    case KernelKind::custom: return "custom";
  }
  return "?";
}

TestFunctionSpec TestFunctionSpec::constant() { return {}; }

TestFunctionSpec TestFunctionSpec::circular(double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::domain, "circular phi needs lambda >= 0");
  return {PhiKind::circular, lambda, lambda};
}

TestFunctionSpec TestFunctionSpec::beta(double l1, double l2) {
  if (!(l1 > -1.0 && l2 > -1.0)) throw Error(ErrorKind::domain, "beta phi needs lambda > -1");
  return {PhiKind::beta, l1, l2};
}

double TestFunctionSpec::operator()(double s) const {
  switch (kind) {
    case PhiKind::constant: return 1.0;
    case PhiKind::circular: {
      if (lambda1 == 0.0) return 1.0;
      const double t = s > 0.5 ? 1.0 - s : s;
      return std::pow(2.0 * std::sin(pi * t), 2.0 * lambda1);
    }
    case PhiKind::beta: return std::pow(s, lambda1) * std::pow(1.0 - s, lambda2);
  }
  return 0.0;
}

double TestFunctionSpec::mean() const {
  switch (kind) {
    case PhiKind::constant: return 1.0;
    case PhiKind::circular:
      return std::exp(log_gamma(1.0 + 2.0 * lambda1) - 2.0 * log_gamma(1.0 + lambda1));
    case PhiKind::beta:
      return std::exp(log_gamma(1.0 + lambda1) + log_gamma(1.0 + lambda2) -
                      log_gamma(2.0 + lambda1 + lambda2));
  }
  return 0.0;
}

std::string TestFunctionSpec::name() const {
  switch (kind) {
    case PhiKind::constant: return "constant";
    case PhiKind::circular: return "circular";
    case PhiKind::beta: return "beta";
  }
  return "?";
}

}  // namespace gmc
