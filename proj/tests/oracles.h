#pragma once
// Brute-force reference implementations used only by tests.

#include <deque>
#include <random>
#include <set>
#include <vector>

#include "pcg/trace.h"

namespace oracle {

// Closure of w under commuting swaps and deletion of adjacent x x^-1.
inline std::set<pcg::Word> rewrite_closure(const pcg::CommutationGraph& g, const pcg::Word& w) {
  std::set<pcg::Word> seen{w};
  std::deque<pcg::Word> q{w};
  while (!q.empty()) {
    auto cur = q.front();
    q.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i + 1] == cur[i].inverse()) {
        auto n = cur;
        n.erase(n.begin() + i, n.begin() + i + 2);
        if (seen.insert(n).second) q.push_back(n);
      } else if (pcg::independent(g, cur[i], cur[i + 1])) {
        auto n = cur;
        std::swap(n[i], n[i + 1]);
        if (seen.insert(n).second) q.push_back(n);
      }
    }
  }
  return seen;
}

inline std::size_t bfs_min_length(const pcg::CommutationGraph& g, const pcg::Word& w) {
  std::size_t best = w.size();
  for (auto& x : rewrite_closure(g, w)) best = std::min(best, x.size());
  return best;
}

// Words of minimal length in the closure.
inline std::set<pcg::Word> bfs_minimal_words(const pcg::CommutationGraph& g, const pcg::Word& w) {
  auto all = rewrite_closure(g, w);
  std::size_t best = w.size();
  for (auto& x : all) best = std::min(best, x.size());
  std::set<pcg::Word> out;
  for (auto& x : all)
    if (x.size() == best) out.insert(x);
  return out;
}

inline pcg::Word random_word(std::mt19937_64& rng, int rank, int len) {
  pcg::Word w;
  std::uniform_int_distribution<int> gen(0, rank - 1), sign(0, 1);
  for (int i = 0; i < len; ++i) w.push_back({gen(rng), sign(rng) == 1});
  return w;
}

// Every raw word of length <= L.
inline std::vector<pcg::Word> raw_words(int rank, int L) {
  std::vector<pcg::Word> out{pcg::Word{}};
  std::vector<pcg::Word> level{pcg::Word{}};
  for (int len = 1; len <= L; ++len) {
    std::vector<pcg::Word> next;
    for (auto& w : level)
      for (int x = 0; x < rank; ++x)
        for (bool inv : {false, true}) {
          auto e = w;
          e.push_back({x, inv});
          next.push_back(e);
        }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace oracle
