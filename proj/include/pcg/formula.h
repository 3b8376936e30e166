#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/graph.h"
#include "pcg/system.h"
#include "pcg/word.h"

namespace pcg {

struct Term {
  enum class Kind { Var, Const, Mul, Inv, One };
  Kind kind = Kind::One;
  std::string var;          // Var (name without '?')
  Word word;                // Const, kept as written
  std::vector<Term> args;   // Mul (n-ary), Inv (one)

  static Term variable(std::string name);
  static Term constant(Word w);
  static Term one();
  static Term mul(std::vector<Term> factors);
  static Term inv(Term t);
  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { True, False, Eq, Neq, Not, And, Or, Implies, Exists, Forall };
  Kind kind = Kind::True;
  std::vector<Term> terms;     // Eq/Neq: lhs, rhs
  std::vector<Formula> args;   // Not: 1, And/Or: n, Implies: 2, quantifiers: 1
  std::string var;             // quantifiers

  static Formula truth();
  static Formula falsity();
  static Formula eq(Term l, Term r);
  static Formula neq(Term l, Term r);
  static Formula negation(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula exists(std::string v, Formula f);
  static Formula forall(std::string v, Formula f);
  bool operator==(const Formula&) const = default;
};

// Sugar used by the encoders: t^-1 u^-1 t u and u^-1 t u.
Term comm(Term t, Term u);
Term conjugate_term(Term t, Term u);
Term power_term(const Term& t, int k);

// Grammar: atoms (= t u) (!= t u); terms (* t ...) (inv t) (comm t u) (conj t u) 1,
// generator names, [word] literals, ?x variables; connectives and/or/not/implies,
// true/false; quantifiers (forall ?x f) (exists ?x f). Bound variables may be written bare.
Formula parse_formula(std::string_view text, const CommutationGraph& g);
Term parse_term(std::string_view text, const CommutationGraph& g);
std::string print_formula(const Formula& f, const CommutationGraph& g);
std::string print_term(const Term& t, const CommutationGraph& g);

// Variables in order of first free occurrence.
std::vector<std::string> free_vars(const Formula& f);
std::vector<std::string> term_vars(const Term& t);
void collect_names(const Formula& f, std::set<std::string>& out);

bool is_quantifier_free(const Formula& f);
// No not / implies / != anywhere.
bool is_positive(const Formula& f);
int quantifier_depth(const Formula& f);

class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used, std::string prefix = "_") : used_(std::move(used)), prefix_(std::move(prefix)) {}
  void reserve(const Formula& f) { collect_names(f, used_); }
  void reserve(const std::string& n) { used_.insert(n); }
  std::string next();

 private:
  std::set<std::string> used_;
  std::string prefix_ = "_";
  int counter_ = 0;
};

// Every bound variable gets a fresh name.
Formula rename_bound(const Formula& f, FreshNames& fresh);
// Capture-avoiding replacement of free variables.
Formula substitute(const Formula& f, const std::map<std::string, Term>& sub, FreshNames& fresh);
Term substitute(const Term& t, const std::map<std::string, Term>& sub);

// Term as a row over the listed variables (unknown variables are appended).
Row term_to_row(const Term& t, std::vector<std::string>& vars);
Term row_to_term(const Row& r, const std::vector<std::string>& vars);
// Atom t = u becomes the row t u^-1 (an inequation for !=).
Row atom_to_row(const Formula& atom, std::vector<std::string>& vars);
// Conjunction of atoms to a system; throws DomainError for anything else.
System formula_to_system(const Formula& f, std::vector<std::string> vars = {});

// Negation normal form: only and/or over (possibly negated) atoms and quantifiers; no implies.
Formula nnf(const Formula& f);

}  // namespace pcg
