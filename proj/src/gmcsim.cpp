#include "gmc/gmcsim.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "detail.hpp"
#include "gmc/error.hpp"
#include "json.hpp"

namespace gmc {

// ------------------------------------------------------------- covariance

double regularized_cov(const KernelSpec& kernel, double mu, double epsilon, double ds) {
  if (mu == 0.0) return 0.0;
  double d = std::abs(ds);
  if (kernel.periodic) {
    d = std::fmod(d, 1.0);
    d = std::min(d, 1.0 - d);
  }
  if (d >= epsilon) return -mu * kernel.log_r(d);
  return mu * (-kernel.log_r(epsilon) + (1.0 - d / epsilon) * epsilon * kernel.dlog_r(epsilon));
}

CovarianceGrid build_covariance(const KernelSpec& kernel, double mu, double epsilon, int N,
                                bool factorize) {
  if (N < 2) throw Error(ErrorKind::domain, "grid needs N >= 2");
  if (!(mu >= 0.0 && mu < 2.0)) throw Error(ErrorKind::domain, "mu must lie in [0, 2)");
  if (!(epsilon * N >= 1.0 - 1e-12)) throw Error(ErrorKind::domain, "epsilon must be >= 1/N");
  if (!(epsilon < (kernel.periodic ? 0.5 : 1.0)))
    throw Error(ErrorKind::domain, "epsilon too large for the kernel");
  CovarianceGrid cg;
  cg.N = N;
  cg.epsilon = epsilon;
  cg.mu = mu;
  cg.kernel = kernel;
  cg.grid.resize(N);
  for (int i = 0; i < N; ++i) cg.grid[i] = static_cast<double>(i) / N;
  std::vector<double> row(N);
  for (int k = 0; k < N; ++k) row[k] = regularized_cov(kernel, mu, epsilon, static_cast<double>(k) / N);
  cg.cov.resize(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) cg.cov(i, j) = row[std::abs(i - j)];
  if (kernel.periodic) {
    double zero_mode = 0.0;
    for (double v : row) zero_mode += v;
    if (zero_mode < 0.0) cg.zero_mode_offset = -zero_mode / N;
  }
  cg.mean = -0.5 * (cg.cov.diagonal().array() + cg.zero_mode_offset).matrix();

  if (!factorize) return cg;
  if (mu == 0.0) {
    cg.factor = Eigen::MatrixXd::Zero(N, N);
    return cg;
  }
  const double scale = cg.cov.trace() / N;
  double jitter = 0.0;
  double next = 1e-14 * scale;
  while (true) {
    Eigen::MatrixXd a = cg.field_cov();
    a.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      cg.factor = llt.matrixL();
      cg.jitter = jitter;
      return cg;
    }
    if (next > 1e-8 * scale * (1.0 + 1e-9))
      throw Error(ErrorKind::non_psd, "covariance not PSD even with jitter " + std::to_string(jitter));
    jitter = next;
    next *= 10.0;
  }
}

std::vector<double> cell_weights(const TestFunctionSpec& phi, int N) {
  std::vector<double> w(N);
  if (phi.is_constant()) {
    std::fill(w.begin(), w.end(), 1.0 / N);
    return w;
  }
  if (phi.kind == PhiKind::beta) {
    detail::gsl_quiet();
    const double a = phi.lambda1 + 1.0, b = phi.lambda2 + 1.0;
    double prev = 0.0;
    for (int i = 0; i < N; ++i) {
      const double x = static_cast<double>(i + 1) / N;
      const double cur = i + 1 == N ? 1.0 : gsl_sf_beta_inc(a, b, x);
      w[i] = cur - prev;
      prev = cur;
    }
  } else {
    const Rule& r = gauss_legendre(16);
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) s += r.w[k] * phi((i + r.x[k]) / N);
      w[i] = s / N;
    }
  }
  double total = 0.0;
  for (double v : w) total += v;
  const double scale = phi.mean() / total;
  for (double& v : w) v *= scale;
  return w;
}

// ---------------------------------------------------------------- sampling

namespace {

void sample_block(const CovarianceGrid& cg, const std::vector<double>& w, std::uint64_t seed,
                  long long block, int count, double* out) {
  const int N = cg.N;
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(sq);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd Z(N, count);
  for (int j = 0; j < count; ++j)
    for (int i = 0; i < N; ++i) Z(i, j) = nd(rng);
  const Eigen::MatrixXd X = cg.factor.triangularView<Eigen::Lower>() * Z;
  for (int j = 0; j < count; ++j) {
    double m = 0.0;
    for (int i = 0; i < N; ++i) m += w[i] * std::exp(cg.mean[i] + X(i, j));
    out[j] = m;
  }
}

}  // namespace

MassSampleSet sample_total_mass(const CovarianceGrid& cg, const TestFunctionSpec& phi,
                                long long n_samples, std::uint64_t seed, Exec exec) {
  if (n_samples < 1) throw Error(ErrorKind::domain, "n_samples must be positive");
  if (cg.factor.rows() != cg.N) throw Error(ErrorKind::input, "covariance grid is not factorized");
  MassSampleSet s;
  s.seed = seed;
  s.n_samples = n_samples;
  s.N = cg.N;
  s.mu = cg.mu;
  s.epsilon = cg.epsilon;
  s.samples.assign(n_samples, 0.0);
  const std::vector<double> w = cell_weights(phi, cg.N);
  const long long blocks = (n_samples + kSampleBlock - 1) / kSampleBlock;
  // one thread per block; Eigen's own threading would change nothing but speed
  const int eigen_threads = Eigen::nbThreads();
  Eigen::setNbThreads(1);
  auto run = [&](long long b) {
    const long long first = b * kSampleBlock;
    const int count = static_cast<int>(std::min<long long>(kSampleBlock, n_samples - first));
    sample_block(cg, w, seed, b, count, s.samples.data() + first);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < blocks; ++b) run(b);
  } else {
    for (long long b = 0; b < blocks; ++b) run(b);
  }
  Eigen::setNbThreads(eigen_threads);
  return s;
}

double discrete_moment(const CovarianceGrid& cg, const TestFunctionSpec& phi, int n) {
  const std::vector<double> wv = cell_weights(phi, cg.N);
  const Eigen::Map<const Eigen::VectorXd> w(wv.data(), cg.N);
  if (n == 1) return w.sum();
  const Eigen::MatrixXd E = cg.field_cov().array().exp().matrix();
  if (n == 2) return w.dot(E * w);
  if (n == 3) {
    // sum_i w_i (A E A^T)_ii with A = E diag(w)
    const Eigen::MatrixXd A = E * w.asDiagonal();
    const Eigen::MatrixXd T = A * E;
    return (w.array() * (T.array() * A.array()).rowwise().sum()).sum();
  }
  throw Error(ErrorKind::domain, "discrete_moment supports n = 1, 2, 3");
}

double empirical_moment(const std::vector<double>& x, int n, double* se) {
  if (x.empty()) throw Error(ErrorKind::input, "empty sample");
  double mean = 0.0, m2 = 0.0;
  long long k = 0;
  for (double v : x) {
    const double y = std::pow(v, n);
    ++k;
    const double d = y - mean;
    mean += d / k;
    m2 += d * (y - mean);
  }
  if (se) *se = k > 1 ? std::sqrt(m2 / (k - 1) / k) : 0.0;
  return mean;
}

SampleStats sample_stats(const std::vector<double>& x) {
  SampleStats s;
  s.mean = empirical_moment(x, 1, &s.mean_se);
  s.m2 = empirical_moment(x, 2, &s.m2_se);
  return s;
}

// ------------------------------------------------------- conical construction

namespace {

double intensity(const KernelSpec& k, double l) {
  switch (k.kind) {
    case KernelKind::interval:
      return 1.0;
    case KernelKind::circle: {
      if (l >= 1.0) throw Error(ErrorKind::domain, "circle intensity needs l < 1");
      const double s = std::sin(std::numbers::pi * l);
      return std::numbers::pi * std::numbers::pi * l * l / (s * s);
    }
    default:
      if (l >= 1.0) {
        if (k.periodic) throw Error(ErrorKind::domain, "periodic kernel intensity needs l < 1");
        return k.dlog_r(1.0);
      }
      return -l * l * k.d2log_r(l);
  }
}

template <class F>
RhoResult qags(const F& fn, double lo, double hi) {
  detail::gsl_quiet();
  RhoResult r;
  if (!(hi > lo)) return r;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function gf;
  gf.function = [](double x, void* p) { return (*static_cast<const F*>(p))(x); };
  gf.params = const_cast<F*>(&fn);
  const int status = gsl_integration_qags(&gf, lo, hi, 1e-14, 1e-12, 2000, ws, &r.value, &r.abs_error);
  gsl_integration_workspace_free(ws);
  if (status != 0 && r.abs_error > 1e-9)
    throw Error(ErrorKind::convergence, "rho integral: " + std::string(gsl_strerror(status)) +
                                            ", achieved " + std::to_string(r.abs_error));
  return r;
}

}  // namespace

ConicalIntensity conical_intensity(const KernelSpec& kernel, int check_points) {
  ConicalIntensity ci;
  ci.upper = kernel.periodic ? 0.5 : 1.0;
  ci.f = [kernel](double l) { return intensity(kernel, l); };
  const double lo = 1e-6;
  ci.worst_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < check_points; ++i) {
    // log-spaced on [lo, upper)
    const double l = lo * std::pow(ci.upper / lo, static_cast<double>(i) / check_points);
    const double v = ci.f(l);
    if (v < ci.worst_value) {
      ci.worst_value = v;
      ci.worst_l = l;
    }
  }
  if (!kernel.periodic) {
    const double tail = ci.f(1.0);
    if (tail < ci.worst_value) {
      ci.worst_value = tail;
      ci.worst_l = 1.0;
    }
  }
  ci.positive = ci.worst_value > 0.0;
  return ci;
}

RhoResult rho_intersection(const KernelSpec& kernel, double epsilon, double z) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::domain, "epsilon must lie in (0,1)");
  if (!(z >= 0.0)) throw Error(ErrorKind::domain, "z must be >= 0");
  if (kernel.periodic) {
    double d = std::fmod(z, 1.0);
    d = std::min(d, 1.0 - d);
    const double lo = std::max(d, epsilon);
    auto w = [&](double l) { return intensity(kernel, l) / (l * l) * (l - d); };
    RhoResult r = qags(w, lo, 0.5);
    r.value -= kernel.log_r(0.5);
    return r;
  }
  if (z >= 1.0) return {};
  const double lo = std::max(z, epsilon);
  auto w = [&](double l) { return intensity(kernel, l) / (l * l) * (l - z); };
  RhoResult r = qags(w, lo, 1.0);
  // int_1^inf f/l^2 with f constant there
  r.value += (1.0 - z) * intensity(kernel, 1.0);
  return r;
}

double girsanov_check(const Eigen::MatrixXd& cov, double alpha, int y_index,
                      const Eigen::VectorXd& beta) {
  const int N = static_cast<int>(cov.rows());
  if (y_index < 0 || y_index >= N || beta.size() != N)
    throw Error(ErrorKind::input, "girsanov_check: index or beta size mismatch");
  // LHS: E[exp(beta.X + alpha X_y - alpha^2 C_yy / 2)] = exp(v'Cv/2 - alpha^2 C_yy/2), v = beta + alpha e_y
  Eigen::VectorXd v = beta;
  v[y_index] += alpha;
  const double lhs = std::exp(0.5 * v.dot(cov * v) - 0.5 * alpha * alpha * cov(y_index, y_index));
  // RHS: E[exp(beta.(X + alpha C e_y))]
  const double rhs = std::exp(alpha * beta.dot(cov.col(y_index)) + 0.5 * beta.dot(cov * beta));
  return std::abs(lhs - rhs);
}

InvarianceResidual intermittency_invariance_check(double mu, double delta, double L,
                                                  const KernelSpec& kernel, double epsilon,
                                                  int N) {
  if (!(delta > 0.0 && delta < mu)) throw Error(ErrorKind::domain, "need 0 < delta < mu");
  if (!(L >= 1.0)) throw Error(ErrorKind::domain, "need L >= 1");
  // omega_{m,L}: covariance of omega_m plus m log L, mean -var/2
  auto field = [&](double m, double LL) {
    CovarianceGrid cg = build_covariance(kernel, m, epsilon, N, false);
    cg.cov.array() += m * std::log(LL);
    cg.mean = -0.5 * cg.cov.diagonal();
    return cg;
  };
  const CovarianceGrid lhs = field(mu, L);
  const CovarianceGrid a = field(mu - delta, L);
  const CovarianceGrid b = field(delta, L * std::numbers::e);
  const Eigen::MatrixXd cov_l = lhs.cov.array() + delta;  // B(delta) at unit time
  const Eigen::VectorXd mean_l = lhs.mean.array() - 0.5 * delta;
  const Eigen::MatrixXd cov_r = a.cov + b.cov;
  const Eigen::VectorXd mean_r = a.mean + b.mean;
  return {(mean_l - mean_r).cwiseAbs().maxCoeff(), (cov_l - cov_r).cwiseAbs().maxCoeff()};
}

// ---------------------------------------------------------------------- I/O

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json meta_json(const MassSampleSet& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n_samples;
  j["seed"] = s.seed;
  j["N"] = s.N;
  j["mu"] = s.mu;
  j["eps"] = s.epsilon;
  return j;
}

void meta_from_json(const nlohmann::json& j, MassSampleSet& s) {
  s.n_samples = j.at("n").get<long long>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.N = j.at("N").get<int>();
  s.mu = j.at("mu").get<double>();
  s.epsilon = j.at("eps").get<double>();
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

}  // namespace

void write_samples_csv(const std::string& path, const MassSampleSet& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path);
  out << "# " << meta_json(s).dump() << "\n";
  out << "mass\n";
  for (double v : s.samples) out << fmt17(v) << "\n";
  if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

MassSampleSet read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  MassSampleSet s;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw Error(ErrorKind::io, path + ": missing metadata line");
  meta_from_json(nlohmann::json::parse(line.substr(2)), s);
  if (!std::getline(in, line) || line != "mass") throw Error(ErrorKind::io, path + ": missing header");
  while (std::getline(in, line))
    if (!line.empty()) s.samples.push_back(std::stod(line));
  if (static_cast<long long>(s.samples.size()) != s.n_samples)
    throw Error(ErrorKind::io, path + ": sample count does not match metadata");
  return s;
}

void write_samples_binary(const std::string& path, const MassSampleSet& s) {
  const std::string meta = meta_json(s).dump();
  nlohmann::ordered_json h;
  h["format"] = "f64le";
  h["count"] = s.samples.size();
  h["meta_bytes"] = meta.size();
  std::string head = h.dump();
  if (head.size() > 63) throw Error(ErrorKind::io, "binary header does not fit in 64 bytes");
  head.resize(63, ' ');
  head.push_back('\n');
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path);
  out.write(head.data(), 64);
  out.write(meta.data(), static_cast<std::streamsize>(meta.size()));
  for (double v : s.samples) {
    const std::uint64_t u = to_le(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&u), 8);
  }
  if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

MassSampleSet read_samples_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::string head(64, '\0');
  if (!in.read(head.data(), 64)) throw Error(ErrorKind::io, path + ": short header");
  const auto h = nlohmann::json::parse(head);
  if (h.at("format") != "f64le") throw Error(ErrorKind::io, path + ": unknown format");
  std::string meta(h.at("meta_bytes").get<std::size_t>(), '\0');
  if (!in.read(meta.data(), static_cast<std::streamsize>(meta.size())))
    throw Error(ErrorKind::io, path + ": short metadata");
  MassSampleSet s;
  meta_from_json(nlohmann::json::parse(meta), s);
  const std::size_t count = h.at("count").get<std::size_t>();
  s.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t u;
    if (!in.read(reinterpret_cast<char*>(&u), 8)) throw Error(ErrorKind::io, path + ": short data");
    s.samples[i] = std::bit_cast<double>(to_le(u));
  }
  return s;
}

}  // namespace gmc
