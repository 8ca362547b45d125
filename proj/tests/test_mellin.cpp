#include <cmath>
#include <random>

#include "doctest.h"
#include "gmc/error.hpp"
#include "gmc/mellin.hpp"
#include "gmc/moments.hpp"

using namespace gmc;

namespace {

// Selberg product, two points: int int |x-y|^{2g} x^{a-1}(1-x)^{b-1} y^{a-1}(1-y)^{b-1}
double selberg2(double a, double b, double g) {
  double s = 1.0;
  for (int j = 0; j < 2; ++j)
    s *= std::tgamma(a + j * g) * std::tgamma(b + j * g) * std::tgamma(1 + (j + 1) * g) /
         (std::tgamma(a + b + (1 + j) * g) * std::tgamma(1 + g));
  return s;
}

}  // namespace

TEST_CASE("morris transform at integer q reproduces the moments") {
  for (double tau : {3.5, 6.0, 8.0})
    for (double lam : {0.0, 0.25, 1.0})
      for (int n = 1; n <= 3; ++n) {
        const double m = morris_mellin({tau, lam, lam, double(n)}).real();
        CHECK(m == doctest::Approx(morris_moment(n, tau, lam)).epsilon(1e-9));
      }
  CHECK(std::abs(morris_log_mellin({5.0, 0.2, 0.2, 0.0})) < 1e-12);
}

TEST_CASE("G shift telescopes: G(z+1) = Gamma(z/tau) G(z)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uq(-1.5, 2.5), ua(-0.5, 3.0), ut(1.2, 9.0);
  for (int i = 0; i < 20; ++i) {
    const double q = uq(rng), a = ua(rng), tau = ut(rng);
    const cplx lhs = log_G_ratio(q, a + 1, tau) - log_G_ratio(q, a, tau);
    const cplx rhs = log_gamma(cplx((1 + a + tau) / tau)) - log_gamma(cplx((1 + a + tau - q) / tau));
    CHECK(std::abs(std::exp(lhs - rhs) - 1.0) < 1e-9);
  }
}

TEST_CASE("I integral: leading large-tau behaviour") {
  // small-x bracket is q(q-1)(2q-1)/12 x^2, which gives zeta(2) c2 / tau^2
  const double q = 1.7;
  const double lead = q * (q - 1) * (2 * q - 1) / 12 * M_PI * M_PI / 6;
  const double d50 = std::abs(2500 * I_integral(q, 0.0, 50).real() - lead);
  const double d100 = std::abs(10000 * I_integral(q, 0.0, 100).real() - lead);
  CHECK(d100 < 0.6 * d50);
  CHECK(d100 < 0.05 * std::abs(lead));
  CHECK(std::abs(I_integral(0.0, 0.3, 4.0)) < 1e-14);
  CHECK(std::abs(I_integral(1.0, 0.3, 4.0)) < 1e-14);
}

TEST_CASE("I integral rejects the divergent region") {
  CHECK_THROWS_AS(I_integral(cplx(4.0, 0.0), -2.0, 1.0), Error);
}

TEST_CASE("selberg transform: beta at q = 1, Selberg product at q = 2") {
  for (double tau : {3.0, 6.0})
    for (auto [l1, l2] : {std::pair{0.0, 0.0}, std::pair{0.5, 1.5}, std::pair{2.0, 0.3}}) {
      const double b = std::tgamma(1 + l1) * std::tgamma(1 + l2) / std::tgamma(2 + l1 + l2);
      CHECK(selberg_mellin({tau, l1, l2, 1.0}).real() == doctest::Approx(b).epsilon(1e-9));
      const double s2 = selberg2(1 + l1, 1 + l2, -1.0 / tau);
      CHECK(selberg_mellin({tau, l1, l2, 2.0}).real() == doctest::Approx(s2).epsilon(1e-8));
    }
}

TEST_CASE("self-duality residual is tiny") {
  for (double tau : {1.8, 3.0})
    for (double q : {0.3, 0.9}) CHECK(self_duality_residual(q, tau) < 1e-8);
}

TEST_CASE("asymptotic series approaches the exact transform") {
  const double q = 1.7;
  double prev = 1e9;
  for (double tau : {20.0, 40.0, 80.0}) {
    const double exact = morris_log_mellin({tau, 0.0, 0.0, q}).real();
    const double d = std::abs(exact - asymptotic_logM(q, tau, 0.0, 0.0, 3));
    CHECK(d < prev / 8);
    prev = d;
  }
  CHECK(asymptotic_logM_coefficient(0, q, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("pole at tau = 1") {
  CHECK_THROWS_AS(morris_mellin({1.0, 0.0, 0.0, 0.5}), Error);
}
