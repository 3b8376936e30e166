#pragma once

#include <optional>
#include <vector>

#include "pcg/formula.h"
#include "pcg/graph.h"
#include "pcg/solver.h"
#include "pcg/word.h"

namespace pcg {

struct CentraliserDescription {
  Word conjugator;                 // g with w = g core g^-1
  std::vector<Word> cyclic_parts;  // least roots of the blocks of the core
  std::vector<Gen> abelian_part;   // A-set of the core
  std::vector<Word> generators;    // the above conjugated back by g, normalized
};

CentraliserDescription centraliser(const CommutationGraph& g, const Word& w);
bool has_cyclic_centraliser(const CommutationGraph& g, const Word& w);

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<Word> conjugator;  // c with c u c^-1 = v
};
ConjugacyResult conjugate(const CommutationGraph& g, const Word& u, const Word& v);

struct DomainWitness {
  Word a;
  Word b;
  int N = 0;
};

// Requires a non-abelian graph with connected Δ; N defaults to 3*cdim+4.
DomainWitness domain_witnesses(const CommutationGraph& g, std::optional<int> N = std::nullopt);
// Throws DomainError explaining which requirement fails.
void validate_witness(const CommutationGraph& g, const DomainWitness& w);

// [x,y] = 1, [x, y^(a^N)] = 1, [x, y^(b^N)] = 1 with x, y given as terms.
std::vector<Formula> domain_system(const DomainWitness& w, const Term& x, const Term& y);
std::vector<Formula> domain_system(const DomainWitness& w);  // over ?x ?y

bool power_conjugate_split(const CommutationGraph& g, const Word& z, const Word& h, int N);

struct Separation {
  std::vector<Word> assignment;  // one value per variable
  bool by_power_map = true;      // false when the ball search was needed
};
// gx: G with the variables appended as isolated vertices after the first base_rank generators.
Separation separate_in_gx(const CommutationGraph& gx, int base_rank, const Word& w, int cdim_override = 0,
                          const SolverOptions& opt = {});

}  // namespace pcg
