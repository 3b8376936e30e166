#include "doctest.h"

#include <random>

#include "common.h"
#include "oracles.h"
#include "pcg/errors.h"
#include "pcg/merzlyakov.h"
#include "pcg/system.h"

using namespace pcg;
using namespace testing_graphs;

namespace {
const CommutationGraph G1 = gamma1();
Word W(const char* s) { return parse_word(s, G1); }
std::string S(const Word& w) { return format_word(w, G1); }

// Brute force: some member of the trace class of h contains p as a contiguous block.
bool factor_oracle(const CommutationGraph& g, const Word& h, const Word& p) {
  std::set<Word> seen{h};
  std::vector<Word> todo{h};
  while (!todo.empty()) {
    Word cur = todo.back();
    todo.pop_back();
    if (std::search(cur.begin(), cur.end(), p.begin(), p.end()) != cur.end()) return true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      if (independent(g, cur[i], cur[i + 1])) {
        Word n = cur;
        std::swap(n[i], n[i + 1]);
        if (seen.insert(n).second) todo.push_back(n);
      }
  }
  return p.empty();
}
}  // namespace

TEST_CASE("base elements") {
  CHECK(delta_walk(G1) == std::vector<Gen>{0, 2, 1});
  auto [a, b] = base_elements(G1);
  CHECK(S(b) == "a c b c a");
  CHECK(S(a) == "c a c b c a c");
  CHECK(consecutive_noncommuting(G1, a));
  CHECK(consecutive_noncommuting(G1, b));
  CHECK(alpha(G1, a).size() == 3);
  CHECK(alpha(G1, b).size() == 3);

  auto f2 = free2();
  auto [fa, fb] = base_elements(f2);
  CHECK(fb == parse_word("a b a", f2));
  CHECK(fa == parse_word("b a b a b", f2));

  CHECK_THROWS_AS(base_elements(zsq()), DomainError);
  CHECK_FALSE(consecutive_noncommuting(G1, W("a b")));
  CHECK_FALSE(consecutive_noncommuting(G1, W("c c^-1")));

  auto p4 = path4();
  auto [pa, pb] = base_elements(p4);
  CHECK(consecutive_noncommuting(p4, pa));
  CHECK(consecutive_noncommuting(p4, pb));
  CHECK(alpha(p4, pb).size() == 4);
}

TEST_CASE("trace factor agrees with brute force") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Word h = oracle::random_word(rng, 3, 1 + rng() % 7);
    Word p = oracle::random_word(rng, 3, 1 + rng() % 3);
    if (rng() % 3 == 0 && h.size() >= 2) p = Word(h.begin() + 1, h.end() - (h.size() > 2 ? 1 : 0));
    CHECK_MESSAGE(trace_factor(G1, h, p) == factor_oracle(G1, h, p), S(h) << " / " << S(p));
  }
  CHECK(trace_factor(G1, W("b a"), W("a b")));
  CHECK_FALSE(trace_factor(G1, W("c a c"), W("a c c")));
}

TEST_CASE("merzlyakov words") {
  MerzlyakovParams p;
  p.m = 2;
  p.exponents = {{1, 2}};
  auto [a, b] = base_elements(G1);
  Word g = merzlyakov_word(G1, 0, p, {});
  Word want = concat({power(b, 2), a, power(b, 2), power(a, 2), power(b, 2)});
  CHECK(g == want);
  CHECK(is_geodesic(G1, g));

  MerzlyakovParams dup = p;
  dup.exponents = {{2, 2}};
  CHECK_THROWS_WITH_AS(merzlyakov_word(G1, 0, dup, {}), doctest::Contains("condition 1"), DomainError);
  MerzlyakovParams small = p;
  small.n_bound = 2;
  CHECK_THROWS_WITH_AS(merzlyakov_word(G1, 0, small, {}), doctest::Contains("condition 2"), DomainError);

  auto d = default_params(3, 3, 2);
  std::vector<Word> hist;
  for (std::size_t i = 0; i < 3; ++i) {
    Word gi = merzlyakov_word(G1, i, d, hist);
    CHECK(is_geodesic(G1, gi));
    hist.push_back(gi);
  }
  MerzlyakovParams stale = d;
  stale.exponents[1] = stale.exponents[0];
  CHECK_THROWS_WITH_AS(merzlyakov_word(G1, 1, stale, {hist[0]}), doctest::Contains("condition 3"), DomainError);
}

TEST_CASE("skolem candidates") {
  auto q = parse_skolem("?x1 ?y1 := ?x1\n", G1);
  auto comm_sys = parse_system("?x1 ?y1 ?x1^-1 ?y1^-1", G1);
  CHECK(skolem_check(G1, comm_sys, q));
  auto qc = parse_skolem("?x1 ?y1 := c", G1);
  CHECK_FALSE(skolem_check(G1, comm_sys, qc));
  auto q2 = parse_skolem("?x1 ?y1 := ?x1^2", G1);
  CHECK(skolem_check(G1, parse_system("?y1 ?x1 ?y1^-1 ?x1^-1 a a^-1", G1), q2));
  CHECK_THROWS_AS(parse_skolem("?x1 ?y1 := ?x2", G1), DomainError);
  CHECK_THROWS_AS(parse_skolem("?x1 := a", G1), ParseError);

  auto two = parse_skolem("?x1 ?y1 := ?x1\n?x2 ?y2 := ?x1 ?x2\n", G1);
  CHECK(two.qs.size() == 2);
  CHECK(skolem_check(G1, parse_system("?y2 ?x2^-1 ?y1^-1", G1), two));
}

TEST_CASE("skolem check matches specialisations") {
  auto q = parse_skolem("?x1 ?y1 := ?x1^2 a", G1);
  auto sys = parse_system("?x1 ?y1 ?x1^-1 ?y1^-1", G1);
  bool lifted = skolem_check(G1, sys, q);
  CHECK_FALSE(lifted);
  // some specialisation x1 -> G breaks it
  std::mt19937_64 rng(9);
  bool broken = false;
  for (int i = 0; i < 100; ++i) {
    Word x = oracle::random_word(rng, 3, 1 + rng() % 4);
    Word y = concat({x, x, W("a")});
    if (!is_trivial(G1, commutator(x, y))) broken = true;
  }
  CHECK(broken);
}

TEST_CASE("lift check") {
  auto q = parse_skolem("?x1 ?y1 := ?x1", G1);
  auto ok = parse_formula("(forall ?x1 (exists ?y1 (and (= (comm ?x1 ?y1) 1) (!= ?x1 1))))", G1);
  CHECK(lift_check(G1, ok, q));
  auto bad = parse_formula("(forall ?x1 (exists ?y1 (and (= 1 1) (!= (* ?y1 (inv ?x1)) 1))))", G1);
  CHECK_FALSE(lift_check(G1, bad, q));
  auto mixed = parse_formula(
      "(forall ?x1 (exists ?y1 (or (and (= ?y1 1) (!= ?x1 1)) (and (= (comm ?y1 a) 1) (!= ?y1 1)))))", G1);
  CHECK_FALSE(lift_check(G1, mixed, q));
  auto qa = parse_skolem("?x1 ?y1 := a", G1);
  CHECK(lift_check(G1, mixed, qa));
  CHECK_THROWS_AS(lift_check(G1, parse_formula("(exists ?y1 (= ?y1 1))", G1), q), DomainError);
}
