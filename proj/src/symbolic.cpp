#include "gmc/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "gmc/error.hpp"

namespace gmc {

void Monomial::normalize() {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  std::sort(verts.begin(), verts.end());
}

Monomial Monomial::relabeled(const std::vector<int>& perm) const {
  Monomial m;
  m.edges.reserve(edges.size());
  for (auto [i, j] : edges) m.edges.emplace_back(perm[i - 1], perm[j - 1]);
  for (int v : verts) m.verts.push_back(perm[v - 1]);
  m.normalize();
  return m;
}

int Monomial::max_index() const {
  int m = 0;
  for (auto [i, j] : edges) m = std::max({m, i, j});
  for (int v : verts) m = std::max(m, v);
  return m;
}

int Monomial::distinct_indices() const {
  std::set<int> s(verts.begin(), verts.end());
  for (auto [i, j] : edges) {
    s.insert(i);
    s.insert(j);
  }
  return static_cast<int>(s.size());
}

namespace {

void append_power(std::ostringstream& os, bool& first, const std::string& sym, int count) {
  if (!first) os << ' ';
  first = false;
  os << sym;
  if (count > 1) os << '^' << count;
}

}  // namespace

std::string Monomial::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t a = 0; a < edges.size();) {
    std::size_t b = a;
    while (b < edges.size() && edges[b] == edges[a]) ++b;
    append_power(os, first,
                 "g[" + std::to_string(edges[a].first) + "," + std::to_string(edges[a].second) + "]",
                 static_cast<int>(b - a));
    a = b;
  }
  for (std::size_t a = 0; a < verts.size();) {
    std::size_t b = a;
    while (b < verts.size() && verts[b] == verts[a]) ++b;
    append_power(os, first, "f[" + std::to_string(verts[a]) + "]", static_cast<int>(b - a));
    a = b;
  }
  return os.str();
}

void SymbolicCoefficient::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

SymbolicCoefficient SymbolicCoefficient::scaled(const Rational& s) const {
  SymbolicCoefficient out;
  out.arity = arity;
  if (s == 0) return out;
  for (const auto& [m, c] : terms) out.terms.emplace(m, c * s);
  return out;
}

std::string SymbolicCoefficient::to_text() const {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) out += " + ";
    first = false;
    out += c.get_str();
    out += " * ";
    out += m.to_text();
  }
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  int arity;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::input,
                "symbolic parse error at offset " + std::to_string(pos) + ": " + what);
  }
  void skip_ws() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  bool eat(char ch) {
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  int integer() {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::stoi(s.substr(start, pos - start));
  }
  int index() {
    const int i = integer();
    if (i < 1 || i > arity) fail("index " + std::to_string(i) + " outside 1.." + std::to_string(arity));
    return i;
  }
  Rational coefficient() {
    const std::size_t start = pos;
    eat('-');
    integer();
    if (eat('/')) integer();
    Rational r;
    if (r.set_str(s.substr(start, pos - start), 10) != 0) fail("bad rational");
    r.canonicalize();
    return r;
  }
  int power() {
    if (eat('^')) return integer();
    return 1;
  }
};

}  // namespace

SymbolicCoefficient SymbolicCoefficient::parse(const std::string& text, int arity) {
  SymbolicCoefficient out;
  out.arity = arity;
  Parser p{text, 0, arity};
  p.skip_ws();
  if (text.substr(p.pos) == "0") return out;
  while (true) {
    p.skip_ws();
    const Rational c = p.coefficient();
    p.skip_ws();
    p.expect('*');
    Monomial m;
    while (true) {
      p.skip_ws();
      if (p.eat('g')) {
        p.expect('[');
        const int i = p.index();
        p.expect(',');
        const int j = p.index();
        p.expect(']');
        if (i >= j) p.fail("edge indices must satisfy i < j");
        const int k = p.power();
        for (int r = 0; r < k; ++r) m.edges.emplace_back(i, j);
      } else if (p.eat('f')) {
        p.expect('[');
        const int i = p.index();
        p.expect(']');
        const int k = p.power();
        for (int r = 0; r < k; ++r) m.verts.push_back(i);
      } else {
        break;
      }
    }
    if (m.degree() == 0) p.fail("empty monomial");
    m.normalize();
    out.add(m, c);
    p.skip_ws();
    if (p.pos == text.size()) break;
    p.expect('+');
  }
  return out;
}

double SymbolicCoefficient::evaluate(const std::function<double(int, int)>& g,
                                     const std::function<double(int)>& f) const {
  double total = 0.0;
  for (const auto& [m, c] : terms) {
    double v = to_double(c);
    for (auto [i, j] : m.edges) v *= g(i, j);
    for (int i : m.verts) v *= f(i);
    total += v;
  }
  return total;
}

// ---------------------------------------------------------------- recurrence

namespace {

// h * (sum_{i<j<=k} g_ij + [with_f] sum_{i<=k} f_i)
void add_times_full_sum(SymbolicCoefficient& out, const SymbolicCoefficient& h, int k, bool with_f) {
  for (const auto& [m, c] : h.terms) {
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        Monomial t = m;
        t.edges.emplace_back(i, j);
        t.normalize();
        out.add(t, c);
      }
    if (with_f)
      for (int i = 1; i <= k; ++i) {
        Monomial t = m;
        t.verts.push_back(i);
        t.normalize();
        out.add(t, c);
      }
  }
}

// h * (sum_{i<k} g_ik + [with_f] f_k)
void add_times_new_vertex(SymbolicCoefficient& out, const SymbolicCoefficient& h, int k,
                          bool with_f) {
  for (const auto& [m, c] : h.terms) {
    for (int i = 1; i < k; ++i) {
      Monomial t = m;
      t.edges.emplace_back(i, k);
      t.normalize();
      out.add(t, c);
    }
    if (with_f) {
      Monomial t = m;
      t.verts.push_back(k);
      t.normalize();
      out.add(t, c);
    }
  }
}

}  // namespace

std::map<int, SymbolicCoefficient> h_recurrence_raw(int n, bool with_f) {
  if (n < 1 || n > 6) throw Error(ErrorKind::domain, "h_symbolic supports 1 <= n <= 6");
  std::map<int, SymbolicCoefficient> cur;
  if (with_f) {
    SymbolicCoefficient h11;
    h11.arity = 1;
    h11.add(Monomial{{}, {1}}, Rational(1));
    cur[1] = h11;
  }
  SymbolicCoefficient h12;
  h12.arity = 2;
  h12.add(Monomial{{{1, 2}}, {}}, Rational(1, 2));
  cur[2] = h12;

  for (int step = 1; step < n; ++step) {
    std::map<int, SymbolicCoefficient> next;
    const int kmax = 2 * step + 2;
    for (int k = with_f ? 1 : 2; k <= kmax; ++k) {
      SymbolicCoefficient h;
      h.arity = k;
      if (auto it = cur.find(k - 2); it != cur.end()) {
        for (const auto& [m, c] : it->second.terms) {
          Monomial t = m;
          t.edges.emplace_back(k - 1, k);
          t.normalize();
          h.add(t, c / 2);
        }
      }
      if (auto it = cur.find(k - 1); it != cur.end()) add_times_new_vertex(h, it->second, k, with_f);
      if (auto it = cur.find(k); it != cur.end()) add_times_full_sum(h, it->second, k, with_f);
      if (!h.terms.empty()) next[k] = std::move(h);
    }
    cur = std::move(next);
  }
  return cur;
}

SymbolicCoefficient symmetrize(const SymbolicCoefficient& s) {
  const int k = s.arity;
  SymbolicCoefficient out;
  out.arity = k;
  std::set<Monomial> done;
  std::vector<int> perm(k);
  for (const auto& [m0, c0] : s.terms) {
    if (done.count(m0)) continue;
    // orbit of m0 under S_k, generated by adjacent transpositions
    std::set<Monomial> orbit{m0};
    std::deque<Monomial> queue{m0};
    while (!queue.empty()) {
      const Monomial m = std::move(queue.front());
      queue.pop_front();
      for (int a = 1; a < k; ++a) {
        std::iota(perm.begin(), perm.end(), 1);
        std::swap(perm[a - 1], perm[a]);
        Monomial t = m.relabeled(perm);
        if (orbit.insert(t).second) queue.push_back(std::move(t));
      }
    }
    Rational total = 0;
    for (const Monomial& m : orbit) {
      if (auto it = s.terms.find(m); it != s.terms.end()) total += it->second;
      done.insert(m);
    }
    if (total == 0) continue;
    const Rational share = total / Rational(static_cast<long>(orbit.size()));
    for (const Monomial& m : orbit) out.terms.emplace(m, share);
  }
  return out;
}

const std::map<int, SymbolicCoefficient>& h_symbolic(int n, bool with_f) {
  static std::mutex mtx;
  static std::map<std::pair<int, bool>, std::map<int, SymbolicCoefficient>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, with_f);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::map<int, SymbolicCoefficient> out;
  for (auto& [k, h] : h_recurrence_raw(n, with_f)) out[k] = symmetrize(h);
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace gmc
