#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gmc/error.hpp"
#include "gmc/gmcsim.hpp"
#include "gmc/moments.hpp"

using namespace gmc;

TEST_CASE("regularized covariance: log branch, linear branch, continuity") {
  const KernelSpec k = KernelSpec::interval();
  const double mu = 0.7, eps = 0.01;
  CHECK(regularized_cov(k, mu, eps, 0.3) == doctest::Approx(-mu * std::log(0.3)));
  // interval diagonal: mu (1 - log eps)
  CHECK(regularized_cov(k, mu, eps, 0.0) == doctest::Approx(mu * (1 - std::log(eps))));
  CHECK(regularized_cov(k, mu, eps, eps * (1 - 1e-12)) == doctest::Approx(regularized_cov(k, mu, eps, eps)));
  CHECK(regularized_cov(k, 0.0, eps, 0.0) == 0.0);
  const KernelSpec c = KernelSpec::circle();
  CHECK(regularized_cov(c, mu, eps, 0.9) == doctest::Approx(regularized_cov(c, mu, eps, 0.1)));
}

TEST_CASE("covariance grid agrees with mu times the cone intersection measure") {
  for (const KernelSpec& k : {KernelSpec::interval(), KernelSpec::circle()}) {
    const int N = 64;
    const double mu = 0.5, eps = 4.0 / N;
    const CovarianceGrid cg = build_covariance(k, mu, eps, N, false);
    double worst = 0.0;
    for (int j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(cg.cov(0, j) - mu * rho_intersection(k, eps, double(j) / N).value));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("circle zero mode offset is small and the factor reproduces the field covariance") {
  const int N = 256;
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / N, N);
  CHECK(cg.zero_mode_offset >= 0.0);
  CHECK(cg.zero_mode_offset < 0.5 * 4.0 / N);
  const Eigen::MatrixXd back = cg.factor * cg.factor.transpose();
  Eigen::MatrixXd want = cg.field_cov();
  want.diagonal().array() += cg.jitter;
  CHECK((back - want).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(cg.mean[0] == doctest::Approx(-0.5 * (cg.cov(0, 0) + cg.zero_mode_offset)));
  CHECK((cg.cov - cg.cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bad inputs") {
  CHECK_THROWS_AS(build_covariance(KernelSpec::interval(), 2.0, 0.1, 32), Error);
  CHECK_THROWS_AS(build_covariance(KernelSpec::interval(), 0.5, 0.01, 32), Error);
  CHECK_THROWS_AS(build_covariance(KernelSpec::circle(), 0.5, 0.6, 32), Error);
}

TEST_CASE("cell weights sum to phibar") {
  for (const TestFunctionSpec& phi :
       {TestFunctionSpec::constant(), TestFunctionSpec::beta(0.5, 2.0), TestFunctionSpec::circular(0.3)}) {
    const auto w = cell_weights(phi, 100);
    double s = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(s == doctest::Approx(phi.mean()).epsilon(1e-14));
  }
}

TEST_CASE("mu = 0: every sample is phibar") {
  const CovarianceGrid cg = build_covariance(KernelSpec::interval(), 0.0, 0.25, 16);
  const auto s = sample_total_mass(cg, TestFunctionSpec::constant(), 300, 5);
  for (double v : s.samples) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampler is deterministic and thread-layout independent") {
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / 64, 64);
  const TestFunctionSpec phi = TestFunctionSpec::constant();
  const auto a = sample_total_mass(cg, phi, 1000, 42, Exec::serial);
  const auto b = sample_total_mass(cg, phi, 1000, 42, Exec::parallel);
  CHECK(a.samples == b.samples);
  // blocks are seeded by index: a shorter run is a prefix
  const auto c = sample_total_mass(cg, phi, 300, 42, Exec::parallel);
  CHECK(std::equal(c.samples.begin(), c.samples.end(), a.samples.begin()));
  const auto d = sample_total_mass(cg, phi, 300, 43, Exec::parallel);
  CHECK(d.samples != c.samples);
}

TEST_CASE("exact sampler moments against brute force") {
  const int N = 24;
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.6, 2.0 / N, N);
  const TestFunctionSpec phi = TestFunctionSpec::circular(0.4);
  const auto w = cell_weights(phi, N);
  const Eigen::MatrixXd C = cg.field_cov();
  double m2 = 0.0, m3 = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      m2 += w[i] * w[j] * std::exp(C(i, j));
      for (int k = 0; k < N; ++k) m3 += w[i] * w[j] * w[k] * std::exp(C(i, j) + C(i, k) + C(j, k));
    }
  CHECK(discrete_moment(cg, phi, 1) == doctest::Approx(phi.mean()));
  CHECK(discrete_moment(cg, phi, 2) == doctest::Approx(m2).epsilon(1e-12));
  CHECK(discrete_moment(cg, phi, 3) == doctest::Approx(m3).epsilon(1e-12));
  CHECK_THROWS_AS(discrete_moment(cg, phi, 4), Error);
}

TEST_CASE("sampled moments sit near the exact discrete ones") {
  const int N = 64;
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / N, N);
  const auto s = sample_total_mass(cg, TestFunctionSpec::constant(), 20000, 99);
  const SampleStats st = sample_stats(s.samples);
  CHECK(std::abs(st.mean - 1.0) < 4 * st.mean_se);
  CHECK(std::abs(st.m2 - discrete_moment(cg, TestFunctionSpec::constant(), 2)) < 4 * st.m2_se);
}

TEST_CASE("discrete second moment approaches the continuum as the grid refines") {
  const double target = morris_moment(2, 4.0, 0.0);
  double prev = 1e9;
  for (int N : {128, 256, 512, 1024}) {
    const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.5, 4.0 / N, N, false);
    const double gap = std::abs(discrete_moment(cg, TestFunctionSpec::constant(), 2) - target);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("empirical moment standard error") {
  const std::vector<double> x{1, 2, 3, 4};
  double se = 0.0;
  CHECK(empirical_moment(x, 1, &se) == doctest::Approx(2.5));
  CHECK(se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(empirical_moment(x, 2) == doctest::Approx(7.5));
  CHECK_THROWS_AS(empirical_moment({}, 1), Error);
}

TEST_CASE("conical intensity") {
  const ConicalIntensity a = conical_intensity(KernelSpec::interval());
  for (double l : {1e-5, 0.1, 0.5, 0.999, 1.0, 3.0}) CHECK(a.f(l) == 1.0);
  const ConicalIntensity c = conical_intensity(KernelSpec::circle());
  CHECK(c.positive);
  CHECK(c.upper == 0.5);
  CHECK(c.f(1e-4) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(c.f(1.0), Error);
}

TEST_CASE("rho intersection reproduces -log r away from the diagonal") {
  for (const KernelSpec& k : {KernelSpec::interval(), KernelSpec::circle()})
    for (double z : {0.01, 0.2, 0.45, 0.8}) CHECK(rho_intersection(k, 1e-3, z).value == doctest::Approx(-k.log_r(z)).epsilon(1e-9));
  CHECK(rho_intersection(KernelSpec::interval(), 1e-3, 1.5).value == 0.0);
}

TEST_CASE("girsanov identity on a unit-mu covariance") {
  const CovarianceGrid cg = build_covariance(KernelSpec::interval(), 1.0, 1.0 / 32, 32, false);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0.0, 0.1);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd beta(32);
    for (int i = 0; i < 32; ++i) beta[i] = nd(rng);
    CHECK(girsanov_check(cg.cov, 0.3, t * 5, beta) < 1e-12);
  }
  CHECK_THROWS_AS(girsanov_check(cg.cov, 0.3, 40, Eigen::VectorXd::Zero(32)), Error);
}

TEST_CASE("intermittency invariance") {
  const auto r = intermittency_invariance_check(1.0, 0.3, 1.0, KernelSpec::interval(), 1.0 / 64, 64);
  CHECK(r.mean < 1e-12);
  CHECK(r.cov < 1e-12);
  CHECK_THROWS_AS(intermittency_invariance_check(1.0, 1.3, 1.0, KernelSpec::interval(), 0.1, 16), Error);
}

TEST_CASE("sample files round-trip bit for bit") {
  const auto dir = std::filesystem::temp_directory_path() / "gmc_test_io";
  std::filesystem::create_directories(dir);
  const CovarianceGrid cg = build_covariance(KernelSpec::circle(), 0.4, 4.0 / 32, 32);
  const auto s = sample_total_mass(cg, TestFunctionSpec::constant(), 500, 8);
  const std::string csv = (dir / "s.csv").string(), bin = (dir / "s.bin").string();
  write_samples_csv(csv, s);
  write_samples_binary(bin, s);
  for (const MassSampleSet& r : {read_samples_csv(csv), read_samples_binary(bin)}) {
    CHECK(r.samples == s.samples);
    CHECK(r.seed == 8);
    CHECK(r.N == 32);
    CHECK(r.mu == 0.4);
    CHECK(r.epsilon == s.epsilon);
  }
  {
    std::ofstream out(bin, std::ios::binary);
    out << "{\"format\":\"f64le\"";
  }
  CHECK_THROWS(read_samples_binary(bin));
  CHECK_THROWS_AS(read_samples_csv((dir / "missing.csv").string()), Error);
  std::filesystem::remove_all(dir);
}
