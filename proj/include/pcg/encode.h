#pragma once

#include <vector>

#include "pcg/formula.h"
#include "pcg/structure.h"

namespace pcg {

// An equation S = 1 is carried as the term S.
Term equation_term(const Formula& atom);  // t = u  ->  t u^-1

// S1^2 a S1^2 a^-1 (S2 b S2 b^-1)^-2, folded left over the list.
Term encode_conj_pair(const Term& s1, const Term& s2, const Word& a, const Word& b);
Term encode_conj(const std::vector<Term>& eqs, const Word& a, const Word& b);
// Disjunction of equations through the triple-commutator system, folded left.
Term encode_disj(const std::vector<Term>& eqs, const DomainWitness& w);
// R with (and T_i != 1) equivalent to R != 1, and the disjunctive dual.
Term encode_ineq_conj(const std::vector<Term>& ineqs, const DomainWitness& w);
Term encode_ineq_disj(const std::vector<Term>& ineqs, const DomainWitness& w);

// Number of leaves of a term (size guard for the folds).
std::size_t term_size(const Term& t);

struct QFDisjunct {
  Term S;  // S = 1
  Term T;  // T != 1
};
struct QFNormalForm {
  std::vector<QFDisjunct> disjuncts;
  Formula to_formula() const;
};

// Disjunct without inequations gets T = a b a^-1 b^-1 (witness pair); without equations S = 1.
QFNormalForm qf_normal_form(const Formula& f, const DomainWitness& w);

// forall x1 exists y1 ... forall xk exists yk (S = 1) for a positive formula.
Formula prenex_positive(const Formula& f, const DomainWitness& w);

}  // namespace pcg
