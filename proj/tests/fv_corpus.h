#pragma once
// Formulas over the product of gens a b c (edge a b) and the free group on two letters.
// The second factor's letters print as a2 b2.

#include <random>
#include <string>
#include <vector>

namespace fv_corpus {

inline const char* kProductGraph = "gens: a b c a2 b2\nedge: a b\nedge: a a2\nedge: a b2\nedge: b a2\nedge: b b2\n"
                                   "edge: c a2\nedge: c b2\n";

inline std::vector<std::string> fixed_corpus() {
  return {
      "(= ?x ?y)",
      "(= ?x [a a2])",
      "(not (= ?x ?y))",
      "(exists z (= z ?x))",
      "(forall z (= (comm z ?x) 1))",
      "(exists z (and (= (comm z a) 1) (not (= z 1))))",
      "(not (exists z (= z [c b2 c])))",
      "(forall z (exists w (= (* z w) 1)))",
      "(exists z (forall w (= (comm z w) 1)))",
      "(forall z (or (= z 1) (not (= (* z z) 1))))",
      "(implies (= ?x 1) (= (* ?x ?y) ?y))",
      "(exists z (= (* z z) ?x))",
      "(or (= ?x a) (= ?x a2))",
      "(and (= (comm ?x ?y) 1) (not (= ?x ?y)))",
      "(forall z (implies (= (comm z ?x) 1) (= (comm z ?y) 1)))",
      "(exists z (and (= (comm z ?x) 1) (= (comm z b2) 1)))",
      "(forall z (forall w (= (comm z w) 1)))",
      "(exists z (exists w (and (!= z 1) (!= w 1) (= (comm z w) 1))))",
      "(!= (* ?x ?y) (* ?y ?x))",
      "(forall z (or (= z ?x) (!= (comm z ?x) 1)))",
  };
}

// Random formula of quantifier depth exactly `depth`, free variables among `free`.
class Generator {
 public:
  Generator(unsigned long long seed, bool positive) : rng_(seed), positive_(positive) {}

  // heavy bounds the nots and foralls wrapping a quantifier body: each costs a powerset in the
  // plain split, and two nested ones can overrun the index guard.
  std::string formula(int depth, std::vector<std::string> scope, int heavy = 1) {
    heavy_ = heavy;
    return gen(depth, scope);
  }

 private:
  std::mt19937_64 rng_;
  bool positive_;
  int fresh_ = 0;
  int heavy_ = 1;

  int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned long long>(n)); }

  std::string var(const std::vector<std::string>& scope, bool newest) {
    if (scope.empty()) return "1";
    const std::string& v = newest ? scope.back() : scope[pick(static_cast<int>(scope.size()))];
    return v;
  }

  std::string constant() {
    static const char* cs[] = {"a", "b", "c", "a2", "b2", "[a b2]", "[c a2]", "1"};
    return cs[pick(8)];
  }

  std::string atom(const std::vector<std::string>& scope) {
    std::string x = var(scope, true), y = var(scope, false);
    std::string e;
    switch (pick(5)) {
      case 0: e = "(= " + x + " " + y + ")"; break;
      case 1: e = "(= " + x + " " + constant() + ")"; break;
      case 2: e = "(= (comm " + x + " " + y + ") 1)"; break;
      case 3: e = "(= (comm " + x + " " + constant() + ") 1)"; break;
      default: e = "(= (* " + x + " " + y + ") " + var(scope, false) + ")"; break;
    }
    if (!positive_ && pick(4) == 0) e = "(not " + e + ")";
    return e;
  }

  std::string gen(int depth, std::vector<std::string>& scope) {
    if (depth == 0) {
      if (pick(3) == 0) return std::string(pick(2) ? "(and " : "(or ") + atom(scope) + " " + atom(scope) + ")";
      return atom(scope);
    }
    int r = pick(10);
    if (r < 2) return std::string(pick(2) ? "(and " : "(or ") + gen(depth, scope) + " " + atom(scope) + ")";
    if (r < 3 && !positive_ && heavy_ > 0) {
      --heavy_;
      return "(not " + gen(depth, scope) + ")";
    }
    bool all = pick(2) && (positive_ || heavy_ > 0);
    if (all && !positive_) --heavy_;
    std::string v = "q" + std::to_string(fresh_++);
    scope.push_back(v);
    std::string body = gen(depth - 1, scope);
    scope.pop_back();
    return std::string(all ? "(forall " : "(exists ") + v + " " + body + ")";
  }
};

}  // namespace fv_corpus
