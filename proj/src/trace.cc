#include "pcg/trace.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "pcg/errors.h"

namespace pcg {

Word reduce_with_pairs(const CommutationGraph& g, const Word& w, std::vector<std::pair<int, int>>* pairs,
                       std::vector<int>* survivors) {
  check_declared(w, g);
  Word out;
  std::vector<int> pos;
  out.reserve(w.size());
  pos.reserve(w.size());
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    Letter x = w[i];
    bool cancelled = false;
    for (int k = static_cast<int>(out.size()) - 1; k >= 0; --k) {
      Letter y = out[k];
      if (y.gen == x.gen) {
        if (y.inv != x.inv) {
          if (pairs) pairs->emplace_back(pos[k], i);
          out.erase(out.begin() + k);
          pos.erase(pos.begin() + k);
          cancelled = true;
        }
        break;
      }
      if (!g.commute(x.gen, y.gen)) break;
    }
    if (!cancelled) {
      out.push_back(x);
      pos.push_back(i);
    }
  }
  if (survivors) *survivors = pos;
  return out;
}

Word reduce(const CommutationGraph& g, const Word& w) { return reduce_with_pairs(g, w, nullptr); }

Word monoid_normal_form(const CommutationGraph& g, const Word& w) {
  check_declared(w, g);
  const int n = static_cast<int>(w.size());
  const int r = g.rank();
  // edges from the last earlier occurrence of each dependent generator
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  std::vector<int> last(r, -1);
  for (int i = 0; i < n; ++i) {
    for (Gen h = 0; h < r; ++h) {
      if (last[h] < 0) continue;
      if (h == w[i].gen || !g.commute(h, w[i].gen)) {
        succ[last[h]].push_back(i);
        ++indeg[i];
      }
    }
    last[w[i].gen] = i;
  }
  auto cmp = [&](int a, int b) { return w[b] < w[a] || (w[a] == w[b] && b < a); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int i = 0; i < n; ++i)
    if (!indeg[i]) ready.push(i);
  Word out;
  out.reserve(n);
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    out.push_back(w[i]);
    for (int j : succ[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  return out;
}

Word normalize(const CommutationGraph& g, const Word& w) { return monoid_normal_form(g, reduce(g, w)); }

bool equals(const CommutationGraph& g, const Word& u, const Word& v) {
  return reduce(g, concat(u, inverse(v))).empty();
}

bool is_trivial(const CommutationGraph& g, const Word& w) { return reduce(g, w).empty(); }

bool trace_equal(const CommutationGraph& g, const Word& u, const Word& v) {
  return u.size() == v.size() && monoid_normal_form(g, u) == monoid_normal_form(g, v);
}

bool is_geodesic(const CommutationGraph& g, const Word& w) { return reduce(g, w).size() == w.size(); }

bool has_cancelling_pattern(const CommutationGraph& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j] == w[i].inverse()) return true;
      if (w[j].gen != w[i].gen && !g.commute(w[j].gen, w[i].gen)) break;
    }
  }
  return false;
}

std::vector<Gen> alpha(const CommutationGraph& g, const Word& w) {
  std::set<Gen> s;
  for (auto l : reduce(g, w)) s.insert(l.gen);
  return {s.begin(), s.end()};
}

std::vector<Gen> a_set(const CommutationGraph& g, const Word& w) {
  auto al = alpha(g, w);
  std::vector<Gen> out;
  for (Gen x = 0; x < g.rank(); ++x) {
    if (std::binary_search(al.begin(), al.end(), x)) continue;
    if (is_trivial(g, commutator(letter_word(x), w))) out.push_back(x);
  }
  return out;
}

bool is_geodesic_concat(const CommutationGraph& g, const Word& u, const Word& v) {
  if (!is_geodesic(g, u) || !is_geodesic(g, v)) throw DomainError("is_geodesic_concat: non-geodesic input");
  return reduce(g, concat(u, v)).size() == u.size() + v.size();
}

bool left_divides(const CommutationGraph& g, const Word& u, const Word& v) {
  Word uu = reduce(g, u), vv = reduce(g, v);
  if (uu.size() > vv.size()) return false;
  return reduce(g, concat(inverse(uu), vv)).size() == vv.size() - uu.size();
}

bool right_divides(const CommutationGraph& g, const Word& u, const Word& v) {
  return left_divides(g, inverse(u), inverse(v));
}

namespace {

// Position of an occurrence of x that can be moved to the front, or -1.
int front_position(const CommutationGraph& g, const Word& w, Letter x) {
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] == x) return i;
    if (!independent(g, w[i], x)) return -1;
  }
  return -1;
}

}  // namespace

std::vector<Letter> first_letters(const CommutationGraph& g, const Word& w) {
  std::set<Letter> s;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) ok = independent(g, w[j], w[i]);
    if (ok) s.insert(w[i]);
  }
  return {s.begin(), s.end()};
}

std::vector<Letter> last_letters(const CommutationGraph& g, const Word& w) {
  std::set<Letter> s;
  for (auto l : first_letters(g, Word(w.rbegin(), w.rend()))) s.insert(l);
  return {s.begin(), s.end()};
}

Word left_gcd(const CommutationGraph& g, const Word& u, const Word& v) {
  Word a = reduce(g, u), b = reduce(g, v), out;
  for (;;) {
    bool found = false;
    for (Letter x : first_letters(g, a)) {
      int j = front_position(g, b, x);
      if (j < 0) continue;
      int i = front_position(g, a, x);
      a.erase(a.begin() + i);
      b.erase(b.begin() + j);
      out.push_back(x);
      found = true;
      break;
    }
    if (!found) break;
  }
  return monoid_normal_form(g, out);
}

BlockDecomposition block_decomposition(const CommutationGraph& g, const Word& w) {
  Word n = normalize(g, w);
  auto al = alpha(g, n);
  // components of Δ restricted to α(w)
  std::map<Gen, int> comp;
  int ncomp = 0;
  for (Gen s : al) {
    if (comp.count(s)) continue;
    std::vector<Gen> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      Gen x = stack.back();
      stack.pop_back();
      for (Gen y : al)
        if (y != x && !g.commute(x, y) && !comp.count(y)) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
    }
    ++ncomp;
  }
  BlockDecomposition bd;
  bd.blocks.resize(ncomp);
  for (auto l : n) bd.blocks[comp[l.gen]].push_back(l);
  // components were numbered in order of their smallest generator
  for (auto& b : bd.blocks) b = monoid_normal_form(g, b);
  return bd;
}

bool is_block(const CommutationGraph& g, const Word& w) {
  return !is_trivial(g, w) && block_decomposition(g, w).blocks.size() == 1;
}

CyclicDecomposition cyclic_reduce(const CommutationGraph& g, const Word& w) {
  Word cur = normalize(g, w);
  Word conj;
  for (;;) {
    auto firsts = first_letters(g, cur);
    auto lasts = last_letters(g, cur);
    bool peeled = false;
    for (Letter x : firsts) {
      if (!std::binary_search(lasts.begin(), lasts.end(), x.inverse())) continue;
      int i = front_position(g, cur, x);
      cur.erase(cur.begin() + i);
      Word rev(cur.rbegin(), cur.rend());
      int j = front_position(g, rev, x.inverse());
      cur.erase(cur.begin() + (static_cast<int>(cur.size()) - 1 - j));
      conj.push_back(x);
      peeled = true;
      break;
    }
    if (!peeled) break;
  }
  return {monoid_normal_form(g, conj), monoid_normal_form(g, cur)};
}

bool is_cyclically_reduced(const CommutationGraph& g, const Word& w) {
  Word r = reduce(g, w);
  return reduce(g, concat(r, r)).size() == 2 * r.size();
}

std::vector<Word> left_divisors(const CommutationGraph& g, const Word& w) {
  Word n = normalize(g, w);
  std::set<Word> seen;
  // DFS over (prefix, rest) pairs; a prefix is determined by its normal form
  std::vector<std::pair<Word, Word>> stack{{Word{}, n}};
  seen.insert(Word{});
  while (!stack.empty()) {
    auto [pre, rest] = stack.back();
    stack.pop_back();
    for (Letter x : first_letters(g, rest)) {
      Word p2 = monoid_normal_form(g, concat(pre, Word{x}));
      if (!seen.insert(p2).second) continue;
      Word r2 = rest;
      r2.erase(r2.begin() + front_position(g, rest, x));
      stack.emplace_back(std::move(p2), std::move(r2));
    }
    if (seen.size() > 1000000) throw LimitExceeded("too many left divisors");
  }
  return {seen.begin(), seen.end()};
}

std::vector<Word> cyclic_permutations(const CommutationGraph& g, const Word& z) {
  if (!is_cyclically_reduced(g, z)) throw DomainError("cyclic_permutations: word is not cyclically reduced");
  std::set<Word> out;
  for (auto& d : left_divisors(g, z)) out.insert(normalize(g, concat({inverse(d), z, d})));
  return {out.begin(), out.end()};
}

namespace {

// Largest k with block == p^k, where p takes the first count/k occurrences of each generator.
Root block_root(const CommutationGraph& g, const Word& block) {
  std::map<Gen, long> count;
  for (auto l : block) ++count[l.gen];
  long d = 0;
  for (auto& [gen, c] : count) d = std::gcd(d, c);
  for (long k = d; k >= 1; --k) {
    if (d % k) continue;
    std::map<Gen, long> taken;
    Word p;
    for (auto l : block)
      if (taken[l.gen] < count[l.gen] / k) {
        ++taken[l.gen];
        p.push_back(l);
      }
    if (equals(g, power(p, k), block)) return {normalize(g, p), k};
  }
  return {block, 1};
}

}  // namespace

Root root(const CommutationGraph& g, const Word& w) {
  if (is_trivial(g, w)) throw DomainError("root: trivial input");
  auto cd = cyclic_reduce(g, w);
  auto bd = block_decomposition(g, cd.core);
  std::vector<Root> roots;
  long m = 0;
  for (auto& b : bd.blocks) {
    roots.push_back(block_root(g, b));
    m = std::gcd(m, roots.back().exponent);
  }
  Word r;
  for (auto& br : roots) r = concat(r, power(br.root, br.exponent / m));
  return {normalize(g, concat({cd.conjugator, r, inverse(cd.conjugator)})), m};
}

void for_each_geodesic(const CommutationGraph& g, int L, const std::function<bool(const Word&)>& fn) {
  if (L < 0) throw DomainError("negative radius");
  std::set<Word> level{Word{}};
  if (!fn(Word{})) return;
  for (int len = 1; len <= L; ++len) {
    std::set<Word> next;
    for (auto& w : level)
      for (Gen x = 0; x < g.rank(); ++x)
        for (bool inv : {false, true}) {
          Word e = w;
          e.push_back({x, inv});
          if (!is_geodesic(g, e)) continue;
          next.insert(monoid_normal_form(g, e));
        }
    for (auto& w : next)
      if (!fn(w)) return;
    level = std::move(next);
  }
}

std::vector<Word> enumerate_geodesics(const CommutationGraph& g, int L) {
  std::vector<Word> out;
  for_each_geodesic(g, L, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace pcg
