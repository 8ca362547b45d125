#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gmc {

// GMP keeps mpq_class canonical after every arithmetic operation; the few
// places that build one from a raw numerator/denominator call canonicalize().
using Rational = mpq_class;
using cplx = std::complex<double>;

Rational make_rational(long num, long den = 1);
double to_double(const Rational& r);

class PolynomialQ {
 public:
  PolynomialQ() = default;
  explicit PolynomialQ(std::vector<Rational> coeffs);
  static PolynomialQ constant(const Rational& c);
  static PolynomialQ x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int k) const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  cplx operator()(cplx x) const;

  // p(x + h) as a new polynomial
  PolynomialQ shifted(const Rational& h) const;

  PolynomialQ& operator+=(const PolynomialQ& o);
  PolynomialQ& operator-=(const PolynomialQ& o);
  PolynomialQ& operator*=(const Rational& s);
  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator*(PolynomialQ a, const Rational& s) { return a *= s; }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b);
  friend bool operator==(const PolynomialQ& a, const PolynomialQ& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Sparse multivariate polynomial over Q. Variables are numbered from 0;
// exponent vectors are stored with trailing zeros stripped so that
// polynomials built with different variable counts compare equal.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;

  MultiPoly() = default;
  MultiPoly(long c);  // NOLINT: integer constants convert implicitly
  MultiPoly(const Rational& c);  // NOLINT
  static MultiPoly variable(unsigned index);

  const std::map<Exponents, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  unsigned total_degree() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }

  // keep only terms whose degree in `var` is <= max_deg
  MultiPoly truncated(unsigned var, unsigned max_deg) const;
  // coefficient of var^deg, as a polynomial in the other variables
  MultiPoly coefficient(unsigned var, unsigned deg) const;

  std::string to_string() const;

 private:
  void add_term(Exponents e, const Rational& c);
  std::map<Exponents, Rational> t_;
};

// --- Bernoulli numbers / polynomials -------------------------------------

// Exact table of Bernoulli numbers B_0..B_max (B_1 = -1/2) and polynomials.
class BernoulliTable {
 public:
  explicit BernoulliTable(int max_degree = 32);
  int max_degree() const { return static_cast<int>(numbers_.size()) - 1; }
  const Rational& number(int n) const { return numbers_.at(n); }
  const PolynomialQ& polynomial(int n) const { return polys_.at(n); }

 private:
  std::vector<Rational> numbers_;
  std::vector<PolynomialQ> polys_;
};

const BernoulliTable& default_bernoulli();

Rational bernoulli_number(int n);
PolynomialQ bernoulli_polynomial(int n);

// --- zeta, gamma family ---------------------------------------------------

double hurwitz_zeta(int p, double a);
double riemann_zeta(int p);
double digamma(double x);
cplx digamma(cplx z);
double log_gamma(double x);     // log|Gamma(x)|
cplx log_gamma(cplx z);         // a branch of log Gamma(z); exp() is exact
double gamma_fn(double x);

double binomial(int n, int k);
Rational binomial_q(int n, int k);
double factorial(int n);

// --- templates ------------------------------------------------------------

// (q)_k = q (q-1) ... (q-k+1)
template <class T>
T pochhammer_falling(const T& q, int k) {
  T out = T(1);
  for (int i = 0; i < k; ++i) out = out * (q - T(i));
  return out;
}

// Complete Bell polynomial Y_n(x_1..x_n) by the binomial recurrence.
// x[0] holds x_1. T needs +, * and construction from long.
template <class T>
T bell_polynomial(int n, const std::vector<T>& x) {
  std::vector<T> Y;
  Y.reserve(n + 1);
  Y.push_back(T(1));
  for (int m = 0; m < n; ++m) {
    T next = T(0);
    long c = 1;  // C(m, r)
    for (int r = 0; r <= m; ++r) {
      next = next + T(c) * Y[m - r] * x[r];
      c = c * (m - r) / (r + 1);
    }
    Y.push_back(next);
  }
  return Y[n];
}

// All of Y_0..Y_n at once (same recurrence).
template <class T>
std::vector<T> bell_sequence(int n, const std::vector<T>& x) {
  std::vector<T> Y{T(1)};
  for (int m = 0; m < n; ++m) {
    T next = T(0);
    long c = 1;
    for (int r = 0; r <= m; ++r) {
      next = next + T(c) * Y[m - r] * x[r];
      c = c * (m - r) / (r + 1);
    }
    Y.push_back(next);
  }
  return Y;
}

}  // namespace gmc
