#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "gmc/error.hpp"
#include "gmc/symbolic.hpp"

using namespace gmc;

namespace {

// Terms of (sum_{i<j<=k} g_ij)^n that touch every index, divided by k!.
SymbolicCoefficient multinomial_oracle(int n, int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);
  SymbolicCoefficient out;
  out.arity = k;
  Rational kf = 1;
  for (int i = 2; i <= k; ++i) kf *= i;
  // ordered n-tuples of pairs; each contributes 1 to its monomial
  std::vector<int> idx(n, 0);
  const int P = static_cast<int>(pairs.size());
  if (P == 0) return out;
  while (true) {
    Monomial m;
    std::vector<bool> seen(k + 1, false);
    for (int t : idx) {
      m.edges.push_back(pairs[t]);
      seen[pairs[t].first] = seen[pairs[t].second] = true;
    }
    bool all = true;
    for (int i = 1; i <= k; ++i) all = all && seen[i];
    if (all) {
      m.normalize();
      out.add(m, Rational(1) / kf);
    }
    int d = 0;
    while (d < n && ++idx[d] == P) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

const char* kH34[] = {
    "3 * g[1,2] g[3,4]^2", "3 * g[3,4] g[1,2]^2", "3 * g[1,3] g[2,4]^2", "3 * g[2,4] g[1,3]^2",
    "3 * g[1,4] g[2,3]^2", "3 * g[2,3] g[1,4]^2", "6 * g[1,2] g[2,3] g[3,4]",
    "6 * g[1,2] g[1,3] g[1,4]", "6 * g[1,2] g[2,3] g[2,4]", "6 * g[1,3] g[2,3] g[3,4]",
    "6 * g[1,4] g[2,4] g[3,4]", "6 * g[1,2] g[1,3] g[3,4]", "6 * g[1,2] g[1,4] g[2,3]",
    "6 * g[1,3] g[1,4] g[2,4]", "6 * g[1,2] g[1,4] g[3,4]", "6 * g[1,3] g[1,4] g[2,3]",
    "6 * g[1,2] g[2,4] g[3,4]", "6 * g[1,4] g[2,3] g[3,4]", "6 * g[1,4] g[2,3] g[2,4]",
    "6 * g[1,3] g[2,4] g[3,4]", "6 * g[1,3] g[2,3] g[2,4]", "6 * g[1,2] g[1,3] g[2,4]",
};

}  // namespace

TEST_CASE("h_{3,4} equals the 22-term list") {
  const auto t0 = std::chrono::steady_clock::now();
  SymbolicCoefficient ref;
  ref.arity = 4;
  for (const char* s : kH34) {
    const SymbolicCoefficient one = SymbolicCoefficient::parse(s, 4);
    REQUIRE(one.terms.size() == 1);
    const auto& [m, c] = *one.terms.begin();
    CHECK(ref.terms.count(m) == 0);  // the list has no repeats
    ref.add(m, c);
  }
  CHECK(ref.terms.size() == 22);
  const SymbolicCoefficient got = h_symbolic(3, false).at(4).scaled(24);
  CHECK(got == ref);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
}

TEST_CASE("without f, h_{n,k} is the all-index part of the multinomial expansion") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 2; k <= 2 * n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(h_symbolic(n, false).at(k) == multinomial_oracle(n, k));
    }
}

TEST_CASE("no entry beyond k = 2n") {
  for (bool with_f : {false, true})
    for (int n = 1; n <= 5; ++n)
      for (const auto& [k, h] : h_symbolic(n, with_f)) {
        CHECK(k <= 2 * n);
        CHECK(h.arity == k);
        for (const auto& [m, c] : h.terms) {
          CHECK(m.distinct_indices() == k);
          CHECK(c != 0);
        }
      }
}

TEST_CASE("term counts with f, n = 4") {
  const std::size_t expect[] = {1, 13, 84, 297, 600, 690, 420, 105};
  const auto& h = h_symbolic(4, true);
  for (int k = 1; k <= 8; ++k) CHECK(h.at(k).terms.size() == expect[k - 1]);
}

TEST_CASE("symmetric under relabeling") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 3; ++n)
    for (const auto& [k, h] : h_symbolic(n, true)) {
      std::vector<int> perm(k);
      for (int i = 0; i < k; ++i) perm[i] = i + 1;
      std::shuffle(perm.begin(), perm.end(), rng);
      SymbolicCoefficient r;
      r.arity = k;
      for (const auto& [m, c] : h.terms) r.add(m.relabeled(perm), c);
      CHECK(r == h);
    }
}

TEST_CASE("raw recurrence and symmetrized form integrate alike") {
  // evaluation at a fully symmetric point set cannot tell them apart
  auto g = [](int, int) { return 0.7; };
  auto f = [](int) { return -1.3; };
  for (int n = 1; n <= 3; ++n) {
    const auto raw = h_recurrence_raw(n, true);
    for (const auto& [k, h] : h_symbolic(n, true))
      CHECK(h.evaluate(g, f) == doctest::Approx(raw.at(k).evaluate(g, f)));
  }
}

TEST_CASE("text round trip and parse errors") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& [k, h] : h_symbolic(n, true))
      CHECK(SymbolicCoefficient::parse(h.to_text(), k) == h);
  SymbolicCoefficient empty;
  empty.arity = 3;
  CHECK(empty.to_text() == "0");
  CHECK(SymbolicCoefficient::parse("0", 3) == empty);
  CHECK_THROWS_AS(SymbolicCoefficient::parse("3 * g[1,", 2), Error);
  CHECK_THROWS_AS(SymbolicCoefficient::parse("1/2 * h[1,2]", 2), Error);
}
