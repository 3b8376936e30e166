#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pcg/eval.h"
#include "pcg/formula.h"
#include "pcg/graph.h"

namespace pcg {

// U(X,P), E(X,Y,P), Mult(X,Y,Z,P), Inv(X,Y,P) over declared variable tuples.
struct GroupCode {
  std::vector<std::string> X, Y, Z, P;
  Formula U, E, Mult, Inv;
  std::size_t arity() const { return X.size(); }
};

GroupCode identity_code();
// Subgroup code with the given U(x); P is the list of parameters of U.
GroupCode subgroup_code(const Formula& U, std::vector<std::string> P = {});
// Quotient code: E(x,y) = exists v (x = y v and U(v)).
GroupCode quotient_code(const Formula& U, std::vector<std::string> P = {});
// forall w [x,w] = 1 as U(x).
Formula centre_formula();

// JSON object with keys arity, X, Y, Z, P, U, E, Mult, Inv (formulas as s-expressions).
GroupCode parse_code_json(std::string_view text, const CommutationGraph& g);
std::string code_to_json(const GroupCode& c, const CommutationGraph& g);
void validate_code(const GroupCode& c);

// Rewrite atoms into x = y, x y = z, x^-1 = y with fresh existential variables.
// Constants are not expressible and raise DomainError.
Formula flatten_atoms(const Formula& f, FreshNames& fresh);
// Group variable x becomes the tuple x (arity 1) or x_1..x_n.
Formula translate_code(const GroupCode& c, const Formula& f);

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::vector<Word> counterexample;  // values of the universally quantified variables
};
struct AxiomReport {
  Word a, b;  // constants used for (I) and (IV)
  bool witnesses_valid = false;
  std::vector<AxiomResult> results;
  bool all_passed() const;
};

std::vector<Formula> axiom_formulas(const Word& a, const Word& b);
AxiomReport check_axioms(const CommutationGraph& g, int radius);

}  // namespace pcg
