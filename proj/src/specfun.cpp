#include "gmc/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "detail.hpp"
#include "gmc/error.hpp"

namespace gmc {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::pole: return "pole";
    case ErrorKind::non_psd: return "non_psd";
    case ErrorKind::insufficient_order: return "insufficient_order";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::input: return "input";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

namespace detail {
void gsl_quiet() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}
}  // namespace detail

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

// ---------------------------------------------------------------- PolynomialQ

PolynomialQ::PolynomialQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

PolynomialQ PolynomialQ::constant(const Rational& c) { return PolynomialQ({c}); }

PolynomialQ PolynomialQ::x() { return PolynomialQ({Rational(0), Rational(1)}); }

void PolynomialQ::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational PolynomialQ::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[k];
}

Rational PolynomialQ::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double PolynomialQ::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

cplx PolynomialQ::operator()(cplx x) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

PolynomialQ PolynomialQ::shifted(const Rational& h) const {
  // Horner in polynomial arithmetic: p(x+h)
  PolynomialQ acc;
  const PolynomialQ lin({h, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * lin;
    acc += PolynomialQ::constant(*it);
  }
  return acc;
}

PolynomialQ& PolynomialQ::operator+=(const PolynomialQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolynomialQ& PolynomialQ::operator-=(const PolynomialQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolynomialQ& PolynomialQ::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
  if (a.is_zero() || b.is_zero()) return PolynomialQ();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return PolynomialQ(std::move(out));
}

std::string PolynomialQ::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k].get_str();
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

// ------------------------------------------------------------------ MultiPoly

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) t_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(unsigned index) {
  MultiPoly p;
  Exponents e(index + 1, 0u);
  e[index] = 1;
  p.t_.emplace(std::move(e), Rational(1));
  return p;
}

unsigned MultiPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : t_) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

void MultiPoly::add_term(Exponents e, const Rational& c) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  auto [it, inserted] = t_.emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  } else if (c == 0) {
    t_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  MultiPoly out;
  for (const auto& [ea, ca] : t_) {
    for (const auto& [eb, cb] : o.t_) {
      Exponents e(std::max(ea.size(), eb.size()), 0u);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

MultiPoly MultiPoly::truncated(unsigned var, unsigned max_deg) const {
  MultiPoly out;
  for (const auto& [e, c] : t_) {
    unsigned d = var < e.size() ? e[var] : 0u;
    if (d <= max_deg) out.t_.emplace(e, c);
  }
  return out;
}

MultiPoly MultiPoly::coefficient(unsigned var, unsigned deg) const {
  MultiPoly out;
  for (const auto& [e, c] : t_) {
    unsigned d = var < e.size() ? e[var] : 0u;
    if (d != deg) continue;
    Exponents f = e;
    if (var < f.size()) f[var] = 0;
    out.add_term(std::move(f), c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*v" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ------------------------------------------------------------------ Bernoulli

BernoulliTable::BernoulliTable(int max_degree) {
  if (max_degree < 0) throw Error(ErrorKind::domain, "negative Bernoulli degree");
  numbers_.resize(max_degree + 1);
  numbers_[0] = 1;
  // sum_{k=0}^{n} C(n+1,k) B_k = 0
  for (int n = 1; n <= max_degree; ++n) {
    Rational s(0);
    for (int k = 0; k < n; ++k) s += binomial_q(n + 1, k) * numbers_[k];
    numbers_[n] = -s / Rational(n + 1);
  }
  polys_.reserve(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<Rational> c(n + 1);
    for (int k = 0; k <= n; ++k) c[n - k] = binomial_q(n, k) * numbers_[k];
    polys_.emplace_back(std::move(c));
  }
}

const BernoulliTable& default_bernoulli() {
  static const BernoulliTable table(32);
  return table;
}

Rational bernoulli_number(int n) {
  if (n < 0) throw Error(ErrorKind::domain, "negative Bernoulli index");
  const auto& t = default_bernoulli();
  if (n <= t.max_degree()) return t.number(n);
  return BernoulliTable(n).number(n);
}

PolynomialQ bernoulli_polynomial(int n) {
  if (n < 0) throw Error(ErrorKind::domain, "negative Bernoulli index");
  const auto& t = default_bernoulli();
  if (n <= t.max_degree()) return t.polynomial(n);
  return BernoulliTable(n).polynomial(n);
}

// ------------------------------------------------------------ zeta and gamma

namespace {

constexpr int kDirectTerms = 50;
constexpr int kCorrections = 8;

struct EulerMaclaurinCoeffs {
  double b2j_over_fact[kCorrections + 1];
  EulerMaclaurinCoeffs() {
    double fact = 1.0;
    for (int j = 1; j <= kCorrections; ++j) {
      fact *= (2 * j - 1) * (2 * j);
      b2j_over_fact[j] = to_double(default_bernoulli().number(2 * j)) / fact;
    }
  }
};

}  // namespace

double hurwitz_zeta(int p, double a) {
  if (!(a > 0)) throw Error(ErrorKind::domain, "hurwitz_zeta needs a > 0");
  if (p < 1) throw Error(ErrorKind::domain, "hurwitz_zeta needs p >= 1");
  if (p == 1) return -digamma(a);
  static const EulerMaclaurinCoeffs em;
  const double s = p;
  const double big = kDirectTerms + a;
  double tail = std::pow(big, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big, -s);
  // s (s+1) ... (s+2j-2) * big^{-s-2j+1}
  double rising = s;
  double power = std::pow(big, -s - 1.0);
  const double inv2 = 1.0 / (big * big);
  for (int j = 1; j <= kCorrections; ++j) {
    tail += em.b2j_over_fact[j] * rising * power;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    power *= inv2;
  }
  double sum = tail;
  for (int k = kDirectTerms - 1; k >= 0; --k) sum += std::pow(k + a, -s);
  return sum;
}

double riemann_zeta(int p) { return hurwitz_zeta(p, 1.0); }

double digamma(double x) {
  detail::gsl_quiet();
  gsl_sf_result r;
  if (gsl_sf_psi_e(x, &r) != GSL_SUCCESS) throw Error(ErrorKind::pole, "digamma pole");
  return r.val;
}

cplx digamma(cplx z) {
  detail::gsl_quiet();
  if (z.imag() == 0.0) return digamma(z.real());
  gsl_sf_result re, im;
  if (gsl_sf_complex_psi_e(z.real(), z.imag(), &re, &im) != GSL_SUCCESS)
    throw Error(ErrorKind::pole, "complex digamma failed");
  return {re.val, im.val};
}

double log_gamma(double x) {
  detail::gsl_quiet();
  gsl_sf_result r;
  if (gsl_sf_lngamma_e(x, &r) != GSL_SUCCESS) throw Error(ErrorKind::pole, "log_gamma pole");
  return r.val;
}

cplx log_gamma(cplx z) {
  detail::gsl_quiet();
  gsl_sf_result lnr, arg;
  if (gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg) != GSL_SUCCESS)
    throw Error(ErrorKind::pole, "complex log_gamma pole");
  return {lnr.val, arg.val};
}

double gamma_fn(double x) { return std::tgamma(x); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Rational binomial_q(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Rational(z);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace gmc
