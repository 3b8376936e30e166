#pragma once

#include <functional>
#include <vector>

#include "pcg/graph.h"
#include "pcg/word.h"

namespace pcg {

// Distinct generators joined by an edge. a and a^-1 are dependent.
inline bool independent(const CommutationGraph& g, Letter x, Letter y) {
  return x.gen != y.gen && g.commute(x.gen, y.gen);
}

// Geodesic representative (free cancellation through commuting letters), not canonical.
Word reduce(const CommutationGraph& g, const Word& w);
// Same, also reporting which input positions cancelled against each other.
Word reduce_with_pairs(const CommutationGraph& g, const Word& w,
                       std::vector<std::pair<int, int>>* pairs, std::vector<int>* survivors = nullptr);
// Lexicographically least linearization of the trace of w; no cancellation.
Word monoid_normal_form(const CommutationGraph& g, const Word& w);
// Canonical geodesic: reduce, then least linearization.
Word normalize(const CommutationGraph& g, const Word& w);

bool equals(const CommutationGraph& g, const Word& u, const Word& v);
bool is_trivial(const CommutationGraph& g, const Word& w);
// Equality in the trace monoid over signed letters.
bool trace_equal(const CommutationGraph& g, const Word& u, const Word& v);

bool is_geodesic(const CommutationGraph& g, const Word& w);
// Looks for a subword x B x^-1 with B commuting with x.
bool has_cancelling_pattern(const CommutationGraph& g, const Word& w);

std::vector<Gen> alpha(const CommutationGraph& g, const Word& w);
std::vector<Gen> a_set(const CommutationGraph& g, const Word& w);

bool is_geodesic_concat(const CommutationGraph& g, const Word& u, const Word& v);
bool left_divides(const CommutationGraph& g, const Word& u, const Word& v);
bool right_divides(const CommutationGraph& g, const Word& u, const Word& v);
Word left_gcd(const CommutationGraph& g, const Word& u, const Word& v);
// Letters x with some occurrence that can be moved to the front (resp. back) of w.
std::vector<Letter> first_letters(const CommutationGraph& g, const Word& w);
std::vector<Letter> last_letters(const CommutationGraph& g, const Word& w);

struct BlockDecomposition {
  std::vector<Word> blocks;
};
BlockDecomposition block_decomposition(const CommutationGraph& g, const Word& w);
bool is_block(const CommutationGraph& g, const Word& w);

struct CyclicDecomposition {
  Word conjugator;  // g1
  Word core;        // g2, cyclically reduced
};
CyclicDecomposition cyclic_reduce(const CommutationGraph& g, const Word& w);
bool is_cyclically_reduced(const CommutationGraph& g, const Word& w);

// All trace prefixes of a geodesic, normalized, sorted.
std::vector<Word> left_divisors(const CommutationGraph& g, const Word& w);
std::vector<Word> cyclic_permutations(const CommutationGraph& g, const Word& z);

struct Root {
  Word root;
  long exponent = 1;
};
Root root(const CommutationGraph& g, const Word& w);

// Canonical words of length <= L, by length and then lexicographically.
std::vector<Word> enumerate_geodesics(const CommutationGraph& g, int L);
void for_each_geodesic(const CommutationGraph& g, int L, const std::function<bool(const Word&)>& fn);

}  // namespace pcg
