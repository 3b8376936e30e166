#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcg/formula.h"
#include "pcg/graph.h"
#include "pcg/word.h"

namespace pcg {

// Finite quantifier range over a group; membership of the identity and closure
// under inverses are the caller's business when the domain is given explicitly.
struct BallStructure {
  CommutationGraph graph;
  std::vector<Word> domain;
  int radius = -1;  // -1 when the domain was given explicitly
  static BallStructure ball(const CommutationGraph& g, int radius);
};

using Env = std::vector<std::pair<std::string, Word>>;

Word eval_term(const CommutationGraph& g, const Term& t, const Env& env);
bool eval_atom(const CommutationGraph& g, const Formula& atom, const Env& env);
// Tarski semantics with quantifiers ranging over s.domain.
bool eval_ball(const BallStructure& s, const Formula& f, const Env& env);

// For a formula forall x1..xk M with M quantifier-free: first failing tuple, if any.
std::optional<std::vector<Word>> universal_counterexample(const BallStructure& s, const Formula& f);

}  // namespace pcg
