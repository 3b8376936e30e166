#include "pcg/merzlyakov.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pcg/errors.h"
#include "pcg/eval.h"
#include "pcg/trace.h"

namespace pcg {

std::vector<Gen> delta_walk(const CommutationGraph& g) {
  auto d = non_commutation(g);
  std::vector<Gen> walk;
  std::vector<char> seen(d.n, 0);
  std::function<void(Gen)> visit = [&](Gen v) {
    seen[v] = 1;
    walk.push_back(v);
    for (Gen w : d.adjacency[v])
      if (!seen[w]) {
        visit(w);
        walk.push_back(v);
      }
  };
  if (d.n == 0) return walk;
  visit(0);
  // cut the trailing backtrack after the last new vertex
  std::size_t last_new = 0;
  std::vector<char> first(d.n, 0);
  for (std::size_t i = 0; i < walk.size(); ++i)
    if (!first[walk[i]]) {
      first[walk[i]] = 1;
      last_new = i;
    }
  walk.resize(last_new + 1);
  return walk;
}

std::pair<Word, Word> base_elements(const CommutationGraph& g) {
  if (g.rank() < 2) throw DomainError("base elements need at least two generators");
  if (!is_indecomposable(g)) throw DomainError("non-commutation graph is disconnected");
  auto walk = delta_walk(g);
  Word b;
  for (Gen v : walk) b.push_back({v, false});
  for (int i = static_cast<int>(walk.size()) - 2; i >= 0; --i) b.push_back({walk[i], false});
  Word b2 = letter_word(walk[1]);
  Word a = concat({b2, b, b2});
  if (!consecutive_noncommuting(g, a) || !consecutive_noncommuting(g, b))
    throw std::logic_error("base elements: consecutive letters commute");
  return {a, b};
}

bool consecutive_noncommuting(const CommutationGraph& g, const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].gen == w[i + 1].gen || g.commute(w[i].gen, w[i + 1].gen)) return false;
  return true;
}

namespace {

bool dependent(const CommutationGraph& g, Letter x, Letter y) { return !independent(g, x, y); }

// Greedy prefix test in the trace monoid.
bool trace_prefix(const CommutationGraph& g, Word r, const Word& p) {
  for (Letter x : p) {
    bool found = false;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == x) {
        r.erase(r.begin() + static_cast<long>(k));
        found = true;
        break;
      }
      if (dependent(g, r[k], x)) break;
    }
    if (!found) return false;
  }
  return true;
}

bool factor_by_downsets(const CommutationGraph& g, const Word& h, const Word& p) {
  const int r = g.rank();
  std::vector<std::vector<int>> occ(r);
  for (int i = 0; i < static_cast<int>(h.size()); ++i) occ[h[i].gen].push_back(i);
  long double total = 1;
  for (auto& o : occ) total *= static_cast<long double>(o.size() + 1);
  if (total > 2e6L) throw LimitExceeded("trace factor test: too many prefixes");
  std::vector<int> cnt(r, 0);
  for (;;) {
    std::vector<char> in(h.size(), 0);
    for (int x = 0; x < r; ++x)
      for (int t = 0; t < cnt[x]; ++t) in[occ[x][t]] = 1;
    bool downset = true;
    for (std::size_t k = 0; k < h.size() && downset; ++k) {
      if (!in[k]) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (!in[j] && dependent(g, h[j], h[k])) {
          downset = false;
          break;
        }
    }
    if (downset) {
      Word rest;
      for (std::size_t k = 0; k < h.size(); ++k)
        if (!in[k]) rest.push_back(h[k]);
      if (trace_prefix(g, rest, p)) return true;
    }
    int x = 0;
    while (x < r && ++cnt[x] > static_cast<int>(occ[x].size())) cnt[x++] = 0;
    if (x == r) return false;
  }
}

}  // namespace

bool trace_factor(const CommutationGraph& g, const Word& h, const Word& p) {
  if (p.empty()) return true;
  if (p.size() > h.size()) return false;
  bool chain = true;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!dependent(g, p[i], p[i + 1])) chain = false;
  if (!chain) return factor_by_downsets(g, h, p);

  const int n = static_cast<int>(h.size());
  const int r = g.rank();
  auto code = [](Letter l) { return l.gen * 2 + (l.inv ? 1 : 0); };
  // next occurrence at or after position i of each signed letter
  std::vector<int> next_letter(static_cast<std::size_t>(n + 1) * 2 * r, n);
  for (int i = n - 1; i >= 0; --i) {
    std::copy_n(next_letter.begin() + static_cast<long>(i + 1) * 2 * r, 2 * r, next_letter.begin() + static_cast<long>(i) * 2 * r);
    next_letter[static_cast<std::size_t>(i) * 2 * r + code(h[i])] = i;
  }
  std::vector<int> pos(p.size());
  std::vector<char> in(h.size(), 0), above(h.size(), 0), below(h.size(), 0);
  for (int start = 0; start < n; ++start) {
    if (h[start] != p[0]) continue;
    pos[0] = start;
    bool ok = true;
    for (std::size_t t = 1; t < p.size() && ok; ++t) {
      int nx = next_letter[static_cast<std::size_t>(pos[t - 1] + 1) * 2 * r + code(p[t])];
      if (nx >= n) ok = false;
      pos[t] = nx;
    }
    if (!ok) continue;
    int lo = pos.front(), hi = pos.back();
    for (int k = lo; k <= hi; ++k) in[k] = above[k] = below[k] = 0;
    for (int q : pos) in[q] = 1;
    std::vector<int> last(r, -1);
    for (int k = lo; k <= hi; ++k) {
      bool up = in[k];
      for (Gen x = 0; x < r && !up; ++x)
        if (last[x] >= 0 && (x == h[k].gen || !g.commute(x, h[k].gen)) && above[last[x]]) up = true;
      above[k] = up;
      last[h[k].gen] = k;
    }
    std::fill(last.begin(), last.end(), -1);
    for (int k = hi; k >= lo; --k) {
      bool down = in[k];
      for (Gen x = 0; x < r && !down; ++x)
        if (last[x] >= 0 && (x == h[k].gen || !g.commute(x, h[k].gen)) && below[last[x]]) down = true;
      below[k] = down;
      last[h[k].gen] = k;
    }
    bool convex = true;
    for (int k = lo; k <= hi && convex; ++k)
      if (!in[k] && above[k] && below[k]) convex = false;
    if (convex) return true;
  }
  return false;
}

Word merzlyakov_word(const CommutationGraph& g, std::size_t i, const MerzlyakovParams& p,
                     const std::vector<Word>& history) {
  if (i >= p.exponents.size()) throw DomainError("no exponent sequence for g_" + std::to_string(i + 1));
  if (p.m < 1) throw DomainError("m must be positive");
  const auto& ex = p.exponents[i];
  for (std::size_t j = 0; j < ex.size(); ++j)
    if (ex[j] <= 0 || (j && ex[j] <= ex[j - 1]))
      throw DomainError("condition 1 violated: exponents of g_" + std::to_string(i + 1) + " must increase strictly from 1");
  if (static_cast<int>(ex.size()) <= p.n_bound)
    throw DomainError("condition 2 violated: n_" + std::to_string(i + 1) + " = " + std::to_string(ex.size()) +
                      " must exceed " + std::to_string(p.n_bound));
  auto [a, b] = base_elements(g);
  Word bm = power(b, p.m);
  Word w = bm;
  for (int e : ex) w = concat({w, power(a, e), bm});
  if (!is_geodesic(g, w)) throw std::logic_error("merzlyakov word is not geodesic");
  for (int e : ex) {
    Word pat = concat({bm, power(a, e), bm});
    for (std::size_t l = 0; l < history.size(); ++l)
      if (trace_factor(g, history[l], pat))
        throw DomainError("condition 3 violated: b^m a^" + std::to_string(e) + " b^m occurs in history word " +
                          std::to_string(l + 1) + "; use larger exponents");
  }
  return w;
}

MerzlyakovParams default_params(int k, int n, int m) {
  MerzlyakovParams p;
  p.m = m;
  for (int i = 0; i < k; ++i) {
    std::vector<int> ex;
    for (int j = 1; j <= n; ++j) ex.push_back(i * n + j);
    p.exponents.push_back(ex);
  }
  p.n_bound = n - 1;
  return p;
}

SkolemCandidate parse_skolem(std::string_view text, const CommutationGraph& g) {
  SkolemCandidate q;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto def = line.find(":=");
    if (def == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected '?x ?y := word'", 0, lineno);
    }
    std::istringstream head(line.substr(0, def));
    std::vector<std::string> names;
    for (std::string t; head >> t;) names.push_back(t);
    if (names.size() != 2 || names[0].size() < 2 || names[1].size() < 2 || names[0][0] != '?' || names[1][0] != '?')
      throw ParseError("expected '?x ?y' before ':='", 0, lineno);
    std::string x = names[0].substr(1), y = names[1].substr(1);
    for (auto& seen : {q.xs, q.ys})
      if (std::find(seen.begin(), seen.end(), x) != seen.end() || std::find(seen.begin(), seen.end(), y) != seen.end())
        throw ParseError("variable declared twice", 0, lineno);
    if (x == y) throw ParseError("variable declared twice", 0, lineno);
    q.xs.push_back(x);
    q.ys.push_back(y);
    std::vector<std::string> scope = q.xs;
    Row r;
    try {
      r = parse_row(line.substr(def + 2), g, scope);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, lineno);
    }
    if (scope.size() != q.xs.size() || !r.equation)
      throw DomainError("variable scoping violation: q for ?" + y + " may only use ?" + q.xs.front() + " .. ?" + x);
    q.qs.push_back(r);
  }
  return q;
}

namespace {

// Values of x_i and y_i as words of G[X].
std::vector<std::pair<std::string, Word>> gx_values(const CommutationGraph& g, const SkolemCandidate& q) {
  std::vector<std::pair<std::string, Word>> out;
  for (std::size_t i = 0; i < q.xs.size(); ++i) {
    out.emplace_back(q.xs[i], letter_word(g.rank() + static_cast<int>(i)));
    out.emplace_back(q.ys[i], row_in_gx(q.qs[i], g.rank()));
  }
  return out;
}

}  // namespace

bool skolem_check(const CommutationGraph& g, const System& s, const SkolemCandidate& q) {
  CommutationGraph gx = with_variables(g, q.xs);
  auto vals = gx_values(g, q);
  std::vector<Word> values;
  for (auto& v : s.vars) {
    auto it = std::find_if(vals.begin(), vals.end(), [&](auto& p) { return p.first == v; });
    if (it == vals.end()) throw DomainError("variable scoping violation: ?" + v + " is neither an x nor a y");
    values.push_back(it->second);
  }
  return system_holds(gx, s, values);
}

bool lift_check(const CommutationGraph& g, const Formula& phi, const SkolemCandidate& q) {
  const Formula* m = &phi;
  std::size_t i = 0;
  while (m->kind == Formula::Kind::Forall || m->kind == Formula::Kind::Exists) {
    bool want_forall = i % 2 == 0;
    if ((m->kind == Formula::Kind::Forall) != want_forall) throw DomainError("shape violation: quantifiers must alternate forall/exists");
    std::size_t k = i / 2;
    const auto& expect = want_forall ? q.xs : q.ys;
    if (k >= expect.size() || expect[k] != m->var)
      throw DomainError("shape violation: quantified ?" + m->var + " does not match the candidate");
    ++i;
    m = &m->args[0];
  }
  if (i != 2 * q.xs.size()) throw DomainError("shape violation: prefix length does not match the candidate");
  if (!is_quantifier_free(*m)) throw DomainError("shape violation: matrix is not quantifier-free");
  BallStructure gx{with_variables(g, q.xs), {}, 0};
  return eval_ball(gx, *m, gx_values(g, q));
}

}  // namespace pcg
