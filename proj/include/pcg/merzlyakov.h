#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcg/formula.h"
#include "pcg/graph.h"
#include "pcg/system.h"
#include "pcg/word.h"

namespace pcg {

// Δ-walk from the smallest vertex (DFS, neighbours in index order, with backtracking),
// truncated once every vertex has been seen.
std::vector<Gen> delta_walk(const CommutationGraph& g);
// b = b1 ... bn ... b1 along the walk, a = b2 b b2.
std::pair<Word, Word> base_elements(const CommutationGraph& g);
// No two consecutive letters commute (or are equal generators with opposite sign).
bool consecutive_noncommuting(const CommutationGraph& g, const Word& w);

// Is p a factor of h in the trace monoid over signed letters (h = u p v for some traces u, v)?
bool trace_factor(const CommutationGraph& g, const Word& h, const Word& p);

struct MerzlyakovParams {
  int m = 1;
  std::vector<std::vector<int>> exponents;  // exponents[i] = m_{i,1} < ... < m_{i,n_i}
  int n_bound = 0;                          // each n_i must exceed this
};

// g_i = b^m a^{m_i1} b^m ... a^{m_in} b^m (i is 0-based). history holds the earlier g_l and
// recorded representatives; throws DomainError naming the violated condition.
Word merzlyakov_word(const CommutationGraph& g, std::size_t i, const MerzlyakovParams& p,
                     const std::vector<Word>& history);
// Consecutive blocks of fresh exponents: g_0 gets 1..n, g_1 gets n+1..2n, ...
MerzlyakovParams default_params(int k, int n, int m);

// Line i: "?x_i ?y_i := q_i" -- universal then existential variable, q_i over x_1..x_i.
struct SkolemCandidate {
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  std::vector<Row> qs;  // rows over variable list xs
};
SkolemCandidate parse_skolem(std::string_view text, const CommutationGraph& g);

// Substitute y_i := q_i and decide every row in G[X].
bool skolem_check(const CommutationGraph& g, const System& s, const SkolemCandidate& q);
// phi = forall x1 exists y1 ... (quantifier-free matrix), decided in G[X] under y_i := q_i.
bool lift_check(const CommutationGraph& g, const Formula& phi, const SkolemCandidate& q);

}  // namespace pcg
