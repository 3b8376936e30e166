#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcg/graph.h"
#include "pcg/system.h"
#include "pcg/word.h"

namespace pcg {

// V[i][j] is the word standing for letter j of row i. Words live over gamma, whose first
// base_rank generators are those of G and whose remaining generators are z1..zp.
struct PartitionTable {
  System system;
  int base_rank = 0;
  int num_z = 0;
  std::vector<std::vector<Word>> V;
  CommutationGraph gamma;

  Word flattened() const;
  bool operator==(const PartitionTable&) const = default;
};

// Checks conditions 0) to 3); the message names the first one that fails.
void validate_table(const CommutationGraph& g, const PartitionTable& t);

struct TableEnumerationOptions {
  int z_cap = 6;                      // tables needing more z letters are skipped (cap flag set)
  int max_free_pairs = 16;            // graph choices per filling: 2^pairs
  long long max_checks = 20'000'000;  // row triviality tests before LimitExceeded
};

struct TableEnumeration {
  std::vector<PartitionTable> tables;
  bool cap_bound = false;  // some candidates were skipped because of the caps
};

// Deterministic order. fn returns false to stop.
bool for_each_partition_table(const CommutationGraph& g, const System& s, const TableEnumerationOptions& opt,
                              const std::function<bool(const PartitionTable&)>& fn);
TableEnumeration partition_tables(const CommutationGraph& g, const System& s, std::size_t limit,
                                  const TableEnumerationOptions& opt = {});

struct GEBase {
  bool variable = true;
  int alpha = 0, beta = 0;  // boundaries, 1-based
  int eps = 1;
  int dual = -1;            // index into bases (variable bases)
  Letter letter{};          // constant bases
  bool graphical = false;   // basic equation read letter for letter
  std::string label;        // z name or variable name
  bool operator==(const GEBase&) const = default;
};

struct GEOccurrence {
  int alpha = 0, beta = 0, eps = 1;  // alpha == beta when the occurrence is empty
  bool operator==(const GEOccurrence&) const = default;
};

struct GEVariable {
  std::string name;
  std::vector<GEOccurrence> occurrences;  // in row order; the first one defines P_x
  bool operator==(const GEVariable&) const = default;
};

struct GeneralisedEquation {
  int rho = 0;  // items h_1..h_rho, boundaries 1..rho+1
  std::vector<GEBase> bases;
  std::vector<std::pair<int, int>> commutations;  // items (i, j)
  std::vector<GEVariable> variables;
  bool operator==(const GeneralisedEquation&) const = default;
};

GeneralisedEquation build_ge(const PartitionTable& t);
// Involution, alpha < beta, unit constant width, references in range.
void validate_ge(const GeneralisedEquation& ge);

std::string ge_to_json(const GeneralisedEquation& ge, const CommutationGraph& g);
GeneralisedEquation parse_ge_json(std::string_view text, const CommutationGraph& g);
std::string table_to_json(const PartitionTable& t, const CommutationGraph& g);

// Values of the variables under h := U (first occurrence of each variable).
std::vector<Word> apply_p(const GeneralisedEquation& ge, const std::vector<Word>& U);
// Human-readable P_x words over h1..h_rho.
std::vector<std::pair<std::string, std::string>> p_map(const GeneralisedEquation& ge);

// Solution in the trace monoid over g (nonempty geodesic items, sides geodesic as written).
bool check_solution(const CommutationGraph& g, const GeneralisedEquation& ge, const std::vector<Word>& U);
// Same, with the first failing equation described in why.
bool check_solution(const CommutationGraph& g, const GeneralisedEquation& ge, const std::vector<Word>& U,
                    std::string* why);

struct InducedTable {
  PartitionTable table;
  std::vector<Word> U;       // one value per item of build_ge(table)
  std::vector<Word> z_values;
};
// W solves s in G; pieces of the cancellation scheme of each row become the z letters.
InducedTable induced_table(const CommutationGraph& g, const System& s, const std::vector<Word>& W);

// P(U) over an extension of g (same first generators), verified against s there.
std::vector<Word> lift_solution(const CommutationGraph& ext, const System& s, const GeneralisedEquation& ge,
                                const std::vector<Word>& U);

}  // namespace pcg
