#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/graph.h"

namespace pcg {

// Signed generator occurrence. Ordering: generator index, then + before -.
struct Letter {
  Gen gen = 0;
  bool inv = false;
  Letter inverse() const { return {gen, !inv}; }
  auto operator<=>(const Letter&) const = default;
};

// A word is a plain letter sequence; the ambient graph is passed to each operation.
using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);
Word concat(std::initializer_list<Word> parts);
// w^k, negative k allowed.
Word power(const Word& w, long k);
Word letter_word(Gen g, bool inv = false);
// Literal commutator u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

// Word syntax: tokens g, g^-1, g^k, and 1. Names are looked up in the graph,
// so a graph extended with "?x" vertices also parses variable tokens.
Word parse_word(std::string_view text, const CommutationGraph& g);
// Runs of equal letters are printed as g^k; the empty word prints as 1.
std::string format_word(const Word& w, const CommutationGraph& g);

// Throws DomainError if some letter is outside the graph.
void check_declared(const Word& w, const CommutationGraph& g);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w) {
      h ^= static_cast<std::size_t>(l.gen * 2 + (l.inv ? 1 : 0));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace pcg
