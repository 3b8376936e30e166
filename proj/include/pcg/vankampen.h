#pragma once

#include <utility>
#include <vector>

#include "pcg/graph.h"
#include "pcg/word.h"

namespace pcg {

// Occurrence pairs (i<j) that cancel in the left-to-right reduction, sorted.
struct CancellationPairing {
  std::vector<std::pair<int, int>> pairs;
  bool complete = false;  // every occurrence paired, i.e. the word is trivial
};

CancellationPairing cancellation_pairing(const CommutationGraph& g, const Word& w);

// pieces[l][i] (0-based) is the part of factor l cancelling against factor i.
// Factor l reassembles as pieces[l][l-1] ... pieces[l][0] (remainder[l]) pieces[l][k-1] ... pieces[l][l+1].
struct ProductScheme {
  int k = 0;
  std::vector<std::vector<Word>> pieces;
  bool has_remainder = false;
  std::vector<Word> remainder;
  CancellationPairing pairing;  // over the concatenation (with v^-1 appended when has_remainder)
};

ProductScheme product_scheme(const CommutationGraph& g, const std::vector<Word>& ws);
ProductScheme product_scheme_rem(const CommutationGraph& g, const std::vector<Word>& ws, const Word& v);

// Ordered product of factor l's pieces (and remainder), as in the reassembly rule.
Word reassemble(const ProductScheme& s, int l);

}  // namespace pcg
