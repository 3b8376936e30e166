#include "doctest.h"

#include <set>

#include "common.h"
#include "pcg/errors.h"
#include "pcg/geneq.h"
#include "pcg/solver.h"

using namespace pcg;
using namespace testing_graphs;

namespace {
const CommutationGraph G1 = gamma1();
Word W(const char* s) { return parse_word(s, G1); }
const System COMM = parse_system("?x a ?x^-1 a^-1", G1);

// The hand-built table z1 a z1^-1 a^-1 with [z1, a] = 1.
PartitionTable comm_table() {
  PartitionTable t;
  t.system = COMM;
  t.base_rank = 3;
  t.num_z = 1;
  t.gamma = G1.extended({"?z1"}, {{0, 3}});
  t.V = {{parse_word("?z1", t.gamma), W("a"), parse_word("?z1^-1", t.gamma), W("a^-1")}};
  return t;
}

// Tables equal up to the order of z names and irrelevant edges is not needed: names are canonical.
bool same_table(const PartitionTable& a, const PartitionTable& b) { return a.V == b.V && a.gamma == b.gamma; }
}  // namespace

TEST_CASE("hand built table") {
  auto t = comm_table();
  CHECK_NOTHROW(validate_table(G1, t));
  auto bad = t;
  bad.gamma = G1.extended({"?z1"});
  CHECK_THROWS_WITH_AS(validate_table(G1, bad), doctest::Contains("condition 1"), DomainError);
  auto twice = t;
  twice.V[0][2] = parse_word("?z1", t.gamma);
  CHECK_THROWS_WITH_AS(validate_table(G1, twice), doctest::Contains("condition 0"), DomainError);
}

TEST_CASE("enumeration contains the commutator table") {
  auto all = partition_tables(G1, COMM, 1'000'000);
  CHECK_FALSE(all.cap_bound);
  auto want = comm_table();
  bool found = false;
  for (auto& t : all.tables) {
    CHECK_NOTHROW(validate_table(G1, t));
    if (same_table(t, want)) found = true;
  }
  CHECK(found);
  CHECK(partition_tables(G1, COMM, 0).tables.empty());
  CHECK(partition_tables(G1, COMM, 3).tables.size() == 3);
}

TEST_CASE("variable free system") {
  auto s = parse_system("a a^-1", G1);
  auto all = partition_tables(G1, s, 100);
  REQUIRE(all.tables.size() == 1);
  CHECK(all.tables[0].num_z == 0);
  auto ge = build_ge(all.tables[0]);
  CHECK(ge.rho == 2);
  for (auto& b : ge.bases) CHECK_FALSE(b.variable);
  CHECK(p_map(ge).empty());
}

TEST_CASE("generalised equation of the commutator table") {
  auto ge = build_ge(comm_table());
  CHECK(ge.rho == 4);
  int vars = 0, consts = 0;
  for (auto& b : ge.bases) {
    if (b.variable) {
      ++vars;
      CHECK(b.graphical);
    } else {
      ++consts;
      CHECK(b.beta == b.alpha + 1);
    }
  }
  CHECK(vars == 4);  // z1 pair and the pair of x occurrences
  CHECK(consts == 2);
  CHECK(ge.bases[0].alpha == 1);
  CHECK(ge.bases[0].eps == 1);
  CHECK(ge.bases[1].alpha == 3);
  CHECK(ge.bases[1].eps == -1);
  std::vector<std::pair<int, int>> want{{1, 2}, {1, 4}, {3, 2}, {3, 4}};
  CHECK(ge.commutations == want);
  auto pm = p_map(ge);
  REQUIRE(pm.size() == 1);
  CHECK(pm[0] == std::pair<std::string, std::string>{"x", "h1"});

  CHECK_FALSE(check_solution(G1, ge, {W("c"), W("a"), W("c^-1"), W("a^-1")}));
  CHECK(check_solution(G1, ge, {W("b"), W("a"), W("b^-1"), W("a^-1")}));
  CHECK_FALSE(check_solution(G1, ge, {Word{}, W("a"), Word{}, W("a^-1")}));
  CHECK_THROWS_AS(check_solution(G1, ge, {W("b")}), DomainError);

  CHECK(parse_ge_json(ge_to_json(ge, G1), G1) == ge);
}

TEST_CASE("induced tables round trip") {
  auto ind = induced_table(G1, COMM, {W("b")});
  CHECK(ind.z_values == std::vector<Word>{W("b")});
  CHECK(ind.table.V == comm_table().V);
  CHECK(ind.table.gamma.commute(3, 0));
  CHECK_FALSE(ind.table.gamma.commute(3, 2));
  auto ge = build_ge(ind.table);
  CHECK(check_solution(G1, ge, ind.U));
  CHECK(apply_p(ge, ind.U) == std::vector<Word>{W("b")});
  CHECK_THROWS_AS(induced_table(G1, COMM, {W("c")}), DomainError);

  const char* systems[] = {"?x a ?x^-1 a^-1", "?x ?y ?x^-1 ?y^-1", "?x ?x ?y^-1 ?y^-1", "?x c ?y"};
  for (auto* text : systems) {
    auto s = parse_system(text, G1);
    auto v = solve_bounded(G1, s, 2);
    for (auto& sol : v.solutions) {
      auto it = induced_table(G1, s, sol);
      auto e = build_ge(it.table);
      CHECK(check_solution(G1, e, it.U));
      auto back = apply_p(e, it.U);
      for (std::size_t i = 0; i < back.size(); ++i) CHECK(trace_equal(G1, back[i], sol[i]));
      // every occurrence of a variable gives the same element
      for (auto& var : e.variables)
        for (auto& o : var.occurrences) {
          Word w;
          for (int h = o.alpha; h < o.beta; ++h) w = concat(w, it.U[h - 1]);
          if (o.eps < 0) w = inverse(w);
          CHECK(trace_equal(G1, w, back[&var - &e.variables[0]]));
        }
      CHECK(lift_solution(G1, s, e, it.U) == back);
    }
  }
}

TEST_CASE("induced table appears in the enumeration") {
  auto all = partition_tables(G1, COMM, 1'000'000);
  for (auto& sol : solve_bounded(G1, COMM, 2).solutions) {
    auto it = induced_table(G1, COMM, sol);
    bool found = false;
    for (auto& t : all.tables) found = found || same_table(t, it.table);
    CHECK(found);
  }
}

TEST_CASE("lifting over an extension") {
  auto ge = build_ge(comm_table());
  auto gx = with_variables(G1, {"t"});
  auto t = parse_word("?t", gx);
  // z1 := t does not commute with a in G[t]
  CHECK_THROWS_AS(lift_solution(gx, COMM, ge, {t, W("a"), inverse(t), W("a^-1")}), DomainError);
  auto tb = parse_word("b ?t b", gx);
  (void)tb;
  CHECK(lift_solution(gx, COMM, ge, {W("b^2"), W("a"), W("b^-2"), W("a^-1")}) == std::vector<Word>{W("b^2")});
  CHECK_THROWS_AS(lift_solution(G1, COMM, ge, {W("b")}), DomainError);
}
