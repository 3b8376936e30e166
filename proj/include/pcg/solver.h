#pragma once

#include <optional>
#include <vector>

#include "pcg/graph.h"
#include "pcg/system.h"
#include "pcg/word.h"

namespace pcg {

struct SolverOptions {
  long long max_checks = 10'000'000;  // cap on |domain|^|vars|
  unsigned threads = 0;               // 0: hardware concurrency
};

using Assignment = std::vector<Word>;

struct BoundedVariety {
  std::vector<std::string> vars;
  int radius = 0;
  std::vector<Assignment> solutions;  // canonical order (ball order, first variable slowest)
};

BoundedVariety solve_bounded(const CommutationGraph& g, const System& s, int radius, const SolverOptions& opt = {});

struct VarietyComparison {
  bool equal = true;
  std::optional<Assignment> counterexample;
  bool counterexample_in_first = false;  // solves the first system but not the second
};

// Both systems must share the variable list.
VarietyComparison verify_variety_eq(const CommutationGraph& g, const System& s1, const System& s2, int radius,
                                    const SolverOptions& opt = {});

// Per-variable subdomain; nullopt keeps the ball.
using Constraint = std::vector<std::optional<std::vector<Word>>>;
std::optional<Assignment> search_assignment(const CommutationGraph& g, const System& s, int radius,
                                            const Constraint& constraint = {}, const SolverOptions& opt = {});

// Generic sweep over ball^n tuples; visit returns false to stop that worker's partition early.
// Used by the other modules for exhaustive checks.
long long tuple_count(std::size_t domain, std::size_t n);
void check_guard(std::size_t domain, std::size_t n, long long max_checks);
unsigned worker_count(unsigned requested);

}  // namespace pcg
