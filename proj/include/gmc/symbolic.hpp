#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gmc/specfun.hpp"

namespace gmc {

// Product of edge symbols g[i,j] (i<j) and vertex symbols f[i], indices 1-based.
// Repeated symbols are stored repeatedly; both lists are kept sorted. The
// factor prod_{i<=k} phi_i is implicit.
struct Monomial {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> verts;

  void normalize();
  Monomial relabeled(const std::vector<int>& perm) const;  // perm[i-1] = new label of i
  int degree() const { return static_cast<int>(edges.size() + verts.size()); }
  int max_index() const;
  int distinct_indices() const;
  std::string to_text() const;

  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.verts < b.verts;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.edges == b.edges && a.verts == b.verts;
  }
};

struct SymbolicCoefficient {
  int arity = 0;
  std::map<Monomial, Rational> terms;

  void add(const Monomial& m, const Rational& c);
  SymbolicCoefficient scaled(const Rational& s) const;

  // "1/8 * g[1,2] g[3,4]^2 + ..." ; "0" for the empty sum
  std::string to_text() const;
  static SymbolicCoefficient parse(const std::string& text, int arity);

  double evaluate(const std::function<double(int, int)>& g,
                  const std::function<double(int)>& f) const;

  friend bool operator==(const SymbolicCoefficient& a, const SymbolicCoefficient& b) {
    return a.arity == b.arity && a.terms == b.terms;
  }
};

// Raw output of the three-term recurrence (not symmetric in the labels).
std::map<int, SymbolicCoefficient> h_recurrence_raw(int n, bool with_f);

// Average over all relabelings of 1..arity.
SymbolicCoefficient symmetrize(const SymbolicCoefficient& s);

// Symmetric h_{n,k}, k = 1..2n (2..2n without f). Memoized.
const std::map<int, SymbolicCoefficient>& h_symbolic(int n, bool with_f);

}  // namespace gmc
