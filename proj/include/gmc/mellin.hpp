#pragma once

#include "gmc/specfun.hpp"

namespace gmc {

// I(q|a,tau) = int_0^inf dx/x e^{-ax}/(e^{tau x}-1) [(e^{qx}-1)/(e^x-1) - q - (q^2-q) x/2]
// Needs a + tau - max(0, Re q - 1) > 0. Throws convergence if two node counts disagree.
cplx I_integral(cplx q, double a, double tau);

// log G(1+a+tau|tau) / G(1-q+a+tau|tau). Arguments outside the direct
// convergence region are reached with G(z+1|tau) = Gamma(z/tau) G(z|tau).
cplx log_G_ratio(cplx q, double a, double tau);

struct MellinParams {
  double tau = 2.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  cplx q = 0.0;
};

// Morris-side Mellin transform through its four G ratios.
cplx morris_log_mellin(const MellinParams& p);
cplx morris_mellin(const MellinParams& p);
// Same without the Gamma(1-1/tau)^{-q} prefactor.
cplx morris_g_part_log(const MellinParams& p);

// Selberg-side (interval, phi = s^l1 (1-s)^l2). The single multiplicative
// normalization is calibrated so that q = 1 gives the beta integral.
cplx selberg_log_mellin(const MellinParams& p);
cplx selberg_mellin(const MellinParams& p);
// log of the calibration constant K (prefactor (2 pi tau^{1/tau} K / Gamma(1-1/tau))^q)
double selberg_log_calibration(double tau, double lambda1, double lambda2);

// q(logG(1+l1+l2) - logG(1+l1) - logG(1+l2)) + sum_{p<=P} tau^{-p} (1/p)[...]
double asymptotic_logM(double q, double tau, double lambda1, double lambda2, int P);
// The p-th bracket (coefficient of tau^{-p}); p = 0 gives the constant term.
double asymptotic_logM_coefficient(int p, double q, double lambda1, double lambda2);

// |LHS - RHS| of the involution identity for the circle total mass, using the
// G-ratio part (the Gamma(1-1/tau) powers cancel between M and the identity).
double self_duality_residual(double q, double tau);

}  // namespace gmc
