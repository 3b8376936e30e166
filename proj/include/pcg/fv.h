#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcg/eval.h"
#include "pcg/formula.h"
#include "pcg/graph.h"

namespace pcg {

// Pairs (psi_i, psi'_i): the product satisfies phi at ((a1,b1),...) iff for some i the first
// factor satisfies psi_i at (a1,...) and the second psi'_i at (b1,...). Both sides keep the
// variable names of phi. Constants of psi'_i are indexed over the second factor's generators.
struct FormulaPairFamily {
  std::vector<std::pair<Formula, Formula>> pairs;
};

struct FvOptions {
  std::size_t max_index = 12;         // |I| allowed under a negation
  std::size_t max_double_index = 4;   // |I| allowed under the double powerset rules
  std::size_t max_pairs = 1 << 16;    // family size before LimitExceeded
  unsigned threads = 0;               // fv_check workers, 0: hardware concurrency
};

// Constants of phi are words over direct_product(g1, g2); split_rank = g1.rank().
FormulaPairFamily fv_split(const Formula& phi, int split_rank, const FvOptions& opt = {});
// Positive input; every output formula is positive.
FormulaPairFamily fv_split_positive(const Formula& phi, int split_rank, const FvOptions& opt = {});

// Trivial simplifications: constant folding of true/false, flattening, vacuous quantifiers.
Formula simplify(const Formula& f);

// Product structure with domain D1 x D2 over direct_product(s1.graph, s2.graph).
BallStructure product_structure(const BallStructure& s1, const BallStructure& s2);

// Evaluation of a family at a product assignment given by components.
bool eval_family(const BallStructure& s1, const BallStructure& s2, const FormulaPairFamily& fam,
                 const std::vector<std::string>& vars, const std::vector<Word>& first, const std::vector<Word>& second);

struct FvCheckResult {
  bool agree = true;
  std::size_t assignments = 0;
  std::vector<Word> counterexample;  // product words, one per free variable
  std::size_t family_size = 0;
};

// Direct evaluation over the product against the family, for every assignment of the free
// variables (or the first `sample` assignments of a seeded shuffle when sample > 0).
FvCheckResult fv_check(const Formula& phi, const BallStructure& s1, const BallStructure& s2, bool positive = false,
                       std::size_t sample = 0, unsigned long long seed = 0, const FvOptions& opt = {});

}  // namespace pcg
