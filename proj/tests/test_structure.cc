#include "doctest.h"

#include <random>
#include <set>

#include "common.h"
#include "oracles.h"
#include "pcg/errors.h"
#include "pcg/eval.h"
#include "pcg/formula.h"
#include "pcg/solver.h"
#include "pcg/structure.h"

using namespace pcg;
using namespace testing_graphs;

namespace {
const CommutationGraph G1 = gamma1();
Word W(const char* s) { return parse_word(s, G1); }
std::string S(const Word& w) { return format_word(w, G1); }
bool commute(const CommutationGraph& g, const Word& u, const Word& v) { return is_trivial(g, commutator(u, v)); }
}  // namespace

TEST_CASE("centraliser examples") {
  auto ca = centraliser(G1, W("a"));
  REQUIRE(ca.cyclic_parts.size() == 1);
  CHECK(ca.cyclic_parts[0] == W("a"));
  CHECK(ca.abelian_part == std::vector<Gen>{1});

  auto cc = centraliser(G1, W("c"));
  CHECK(cc.cyclic_parts == std::vector<Word>{W("c")});
  CHECK(cc.abelian_part.empty());

  auto cac = centraliser(G1, W("a c a c"));
  REQUIRE(cac.cyclic_parts.size() == 1);
  CHECK(equals(G1, cac.cyclic_parts[0], W("a c")));
  CHECK(cac.abelian_part.empty());

  // conjugated input: generators conjugate back
  auto cj = centraliser(G1, W("b c b^-1"));
  CHECK(equals(G1, W("b c b^-1"), concat({cj.conjugator, W("c"), inverse(cj.conjugator)})));
  for (auto& gen : cj.generators) CHECK(commute(G1, gen, W("b c b^-1")));

  CHECK_THROWS_AS(centraliser(G1, W("a a^-1")), DomainError);
}

TEST_CASE("centraliser of a root") {
  for (auto* s : {"a c a c", "c^3", "a^2 b^2", "b c b^-1 c^2 b c b^-1 c^2"}) {
    Word w = W(s);
    auto r = root(G1, w);
    auto g1 = centraliser(G1, w).generators, g2 = centraliser(G1, r.root).generators;
    REQUIRE(g1.size() == g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(equals(G1, g1[i], g2[i]));
  }
}

TEST_CASE("centraliser covers commuting ball elements") {
  auto ball = enumerate_geodesics(G1, 2);
  for (auto& w : ball) {
    if (w.empty()) continue;
    auto gens = centraliser(G1, w).generators;
    for (auto& x : gens) CHECK(commute(G1, x, w));
    // products of at most two generators or inverses
    std::set<Word> reach{Word{}};
    std::vector<Word> step;
    for (auto& x : gens) {
      step.push_back(normalize(G1, x));
      step.push_back(normalize(G1, inverse(x)));
    }
    for (int k = 0; k < 4; ++k) {
      std::set<Word> next = reach;
      for (auto& r : reach)
        for (auto& x : step) next.insert(normalize(G1, concat(r, x)));
      reach = std::move(next);
    }
    for (auto& x : ball)
      if (commute(G1, x, w)) CHECK_MESSAGE(reach.count(x), S(w) << " / " << S(x));
  }
}

TEST_CASE("cyclic centraliser") {
  CHECK(has_cyclic_centraliser(G1, W("c")));
  CHECK_FALSE(has_cyclic_centraliser(G1, W("a")));
  CHECK(has_cyclic_centraliser(G1, W("a c")));
  CHECK_THROWS_AS(has_cyclic_centraliser(G1, Word{}), DomainError);
}

TEST_CASE("conjugacy examples") {
  auto r = conjugate(G1, W("a c"), W("c a"));
  REQUIRE(r.conjugate);
  REQUIRE(r.conjugator.has_value());
  CHECK(equals(G1, concat({*r.conjugator, W("a c"), inverse(*r.conjugator)}), W("c a")));
  auto e = conjugate(G1, W("a b"), W("b a"));
  CHECK(e.conjugate);
  CHECK(normalize(G1, *e.conjugator).empty());
  CHECK_FALSE(conjugate(G1, W("a"), W("c")).conjugate);
}

TEST_CASE("conjugacy against brute force") {
  auto ball = enumerate_geodesics(G1, 1);
  auto ts = enumerate_geodesics(G1, 2);
  for (auto& u : ball)
    for (auto& v : ball) {
      bool brute = false;
      for (auto& t : ts)
        if (equals(G1, concat({t, u, inverse(t)}), v)) {
          brute = true;
          break;
        }
      auto r = conjugate(G1, u, v);
      if (brute) CHECK(r.conjugate);
      if (r.conjugate) CHECK(equals(G1, concat({*r.conjugator, u, inverse(*r.conjugator)}), v));
    }
}

TEST_CASE("domain witnesses") {
  auto w = domain_witnesses(G1);
  CHECK(S(w.b) == "a c b c a");
  CHECK(S(w.a) == "c a c b c a c");
  CHECK(w.N == 10);
  CHECK(has_cyclic_centraliser(G1, w.a));
  CHECK(has_cyclic_centraliser(G1, w.b));
  CHECK_FALSE(commute(G1, w.a, w.b));
  CHECK_NOTHROW(validate_witness(G1, w));
  CHECK_THROWS_AS(domain_witnesses(zsq()), DomainError);
  CHECK_THROWS_AS(domain_witnesses(parse_graph("gens: a b c\nedge: a b\nedge: b c\n")), DomainError);
  CHECK(domain_witnesses(G1, 3).N == 3);
}

TEST_CASE("domain system syntax") {
  auto w = domain_witnesses(G1);
  auto sys = domain_system(w);
  REQUIRE(sys.size() == 3);
  for (auto& f : sys) CHECK(parse_formula(print_formula(f, G1), G1) == f);
  auto x = Term::variable("x"), y = Term::variable("y");
  CHECK(sys[0] == Formula::eq(comm(x, y), Term::one()));
  CHECK(sys[1] == Formula::eq(comm(x, conjugate_term(y, Term::constant(power(w.a, 10)))), Term::one()));
  auto w0 = w;
  w0.N = 0;
  auto deg = domain_system(w0);
  // with N = 0 all three conditions say [x,y] = 1
  auto s = BallStructure::ball(G1, 1);
  for (auto& a : s.domain)
    for (auto& b : s.domain) {
      Env env{{"x", a}, {"y", b}};
      CHECK(eval_atom(G1, deg[1], env) == eval_atom(G1, deg[0], env));
    }
}

TEST_CASE("domain criterion on balls") {
  auto w = domain_witnesses(G1);
  std::vector<std::string> vars{"x", "y"};
  auto sys = formula_to_system(Formula::conj(domain_system(w)), vars);
  for (auto& sol : solve_bounded(G1, sys, 2).solutions) CHECK((sol[0].empty() || sol[1].empty()));

  // decomposable: F2 x F2 has commuting nontrivial pairs that survive any conjugation
  auto prod = direct_product(free2(), free2());
  DomainWitness fake{letter_word(0), letter_word(1), 4};
  auto psys = formula_to_system(Formula::conj(domain_system(fake)), vars);
  bool both = false;
  for (auto& sol : solve_bounded(prod, psys, 1).solutions)
    if (!sol[0].empty() && !sol[1].empty()) both = true;
  CHECK(both);
}

TEST_CASE("power conjugate split") {
  CHECK(power_conjugate_split(G1, W("c"), W("a c"), 10));
  CHECK_FALSE(power_conjugate_split(G1, W("a c"), W("a c"), 10));
  CHECK(power_conjugate_split(G1, Word{}, W("a c"), 10));
  CHECK_THROWS_AS(power_conjugate_split(G1, W("c"), W("a b"), 10), DomainError);
}

TEST_CASE("block product keeps its ends") {
  std::mt19937_64 rng(7);
  std::vector<Word> blocks{W("c"), W("a c"), W("a c b c a"), W("b c^-1")};
  int tested = 0;
  for (int it = 0; it < 2000; ++it) {
    Word a = blocks[it % blocks.size()];
    REQUIRE(is_cyclically_reduced(G1, a));
    auto sgn = [&] { return (rng() & 1) ? 1 : -1; };
    int d1 = sgn(), d2 = sgn(), e = sgn();
    Word g1 = normalize(G1, oracle::random_word(rng, 3, 1 + rng() % 4));
    Word g2 = normalize(G1, oracle::random_word(rng, 3, 1 + rng() % 4));
    Word w1 = concat({power(a, d1), g1, power(a, e)}), w2 = concat({power(a, e), g2, power(a, d2)});
    if (!is_geodesic(G1, w1) || !is_geodesic(G1, w2)) continue;
    ++tested;
    Word n = normalize(G1, concat(w1, w2));
    CHECK(left_divides(G1, power(a, d1), n));
    CHECK(right_divides(G1, power(a, d2), n));
    Word mid = normalize(G1, concat({power(a, -d1), n, power(a, -d2)}));
    CHECK(mid.size() + 2 * a.size() == n.size());
  }
  CHECK(tested > 100);
}

TEST_CASE("separation in G[X]") {
  auto gx = with_variables(G1, {"x"});
  auto x = parse_word("?x", gx);
  auto s = separate_in_gx(gx, 3, x);
  REQUIRE(s.assignment.size() == 1);
  auto wa = domain_witnesses(G1).a;
  CHECK(equals(G1, s.assignment[0], power(wa, 20)));
  CHECK(s.by_power_map);

  auto xc = parse_word("?x c ?x^-1 c^-1", gx);
  auto t = separate_in_gx(gx, 3, xc);
  CHECK_FALSE(commute(G1, t.assignment[0], W("c")));
  CHECK_THROWS_AS(separate_in_gx(gx, 3, parse_word("?x ?x^-1", gx)), DomainError);

  auto gxy = with_variables(G1, {"x", "y"});
  auto xy = parse_word("?x ?y ?x^-1 ?y^-1 a", gxy);
  auto u = separate_in_gx(gxy, 3, xy);
  REQUIRE(u.assignment.size() == 2);
  Word img = concat({u.assignment[0], u.assignment[1], inverse(u.assignment[0]), inverse(u.assignment[1]), W("a")});
  CHECK_FALSE(is_trivial(G1, img));
}
