#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pcg/graph.h"
#include "pcg/word.h"

namespace pcg {

// One letter of a system row: a constant generator or a variable, possibly inverted.
struct SysLetter {
  bool is_var = false;
  int index = 0;  // generator index or variable index
  bool inv = false;
  SysLetter inverse() const { return {is_var, index, !inv}; }
  auto operator<=>(const SysLetter&) const = default;
};

// A row r = 1 (or r != 1 when equation is false).
struct Row {
  std::vector<SysLetter> letters;
  bool equation = true;
  bool operator==(const Row&) const = default;
};

struct System {
  std::vector<std::string> vars;  // names without the leading '?'
  std::vector<Row> rows;
  int var_index(std::string_view name) const;  // -1 if absent
  bool operator==(const System&) const = default;
};

// One row per line; "!" in front marks an inequation; an optional "=" splits lhs/rhs.
// Variables are "?x" tokens, numbered by first appearance unless preset in vars.
System parse_system(std::string_view text, const CommutationGraph& g, std::vector<std::string> vars = {});
Row parse_row(std::string_view text, const CommutationGraph& g, std::vector<std::string>& vars);
std::string format_row(const Row& r, const CommutationGraph& g, const std::vector<std::string>& vars);
std::string format_system(const System& s, const CommutationGraph& g);

Row inverse(const Row& r);
Row concat(const Row& a, const Row& b);
Row constant_row(const Word& w);

// Replace variables by values (raw concatenation, no reduction).
Word substitute(const Row& r, const std::vector<Word>& values);
// Value of the row (reduced) decides it: true when the row's relation holds.
bool row_holds(const CommutationGraph& g, const Row& r, const std::vector<Word>& values);
bool system_holds(const CommutationGraph& g, const System& s, const std::vector<Word>& values);

// Variable vertices "?x" appended as isolated generators: the group G[X].
CommutationGraph with_variables(const CommutationGraph& g, const std::vector<std::string>& vars);
// Row as a word of G[X] (variable i becomes generator g.rank()+i).
Word row_in_gx(const Row& r, int base_rank);
// Letters >= base_rank become variables again.
Row row_from_gx(const Word& w, int base_rank);

}  // namespace pcg
