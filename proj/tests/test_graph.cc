#include "doctest.h"

#include <set>

#include "common.h"
#include "pcg/errors.h"

using namespace pcg;
using namespace testing_graphs;

TEST_CASE("parse graph files") {
  auto g = gamma1();
  CHECK(g.rank() == 3);
  CHECK(g.edges() == std::vector<std::pair<Gen, Gen>>{{0, 1}});
  CHECK(g.commute(0, 1));
  CHECK(!g.commute(0, 2));
  CHECK(zee().rank() == 1);
  CHECK(zee().edges().empty());
  CHECK_THROWS_AS(parse_graph("gens: a b\nedge: a a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("gens: a a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("gens: a b\nedge: a q\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("gens: a1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("edge: a b\n"), ParseError);
  // comments, edge order normalized
  auto h = parse_graph("# hi\ngens: x y z  # three\nedge: z x\nedge: y x\n");
  CHECK(h.edges() == std::vector<std::pair<Gen, Gen>>{{0, 1}, {0, 2}});
  CHECK(parse_graph(h.to_text()) == h);
}

TEST_CASE("gamma and delta partition the pairs") {
  for (auto g : {gamma1(), free2(), zsq(), zee(), path4()}) {
    auto d = non_commutation(g);
    std::set<std::pair<Gen, Gen>> all;
    for (auto e : g.edges()) CHECK(all.insert(e).second);
    for (auto e : d.edges()) CHECK(all.insert(e).second);
    CHECK(all.size() == std::size_t(g.rank() * (g.rank() - 1) / 2));
  }
}

TEST_CASE("direct decomposition") {
  auto c = delta_components(gamma1());
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::vector<Gen>{0, 1, 2});
  auto h = parse_graph("gens: a b c\nedge: a b\nedge: b c\n");
  auto hc = delta_components(h);
  REQUIRE(hc.size() == 2);
  CHECK(hc[0] == std::vector<Gen>{0, 2});
  CHECK(hc[1] == std::vector<Gen>{1});
  auto parts = direct_decomposition(zsq());
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].generators() == std::vector<std::string>{"a"});
  CHECK(parts[1].generators() == std::vector<std::string>{"b"});
  CHECK(is_indecomposable(gamma1()));
  CHECK(!is_indecomposable(h));
}

TEST_CASE("diameter of delta") {
  CHECK(diameter_delta(gamma1()) == 2);
  CHECK(diameter_delta(free2()) == 1);
  CHECK(!diameter_delta(zsq()).has_value());
  CHECK(diameter_delta(path4()) == 3);
  CHECK(diameter_delta(zee()) == 0);
}

TEST_CASE("centre generators") {
  CHECK(center_generators(gamma1()).empty());
  auto k3 = parse_graph("gens: a b c\nedge: a b\nedge: b c\nedge: a c\n");
  CHECK(center_generators(k3) == std::vector<Gen>{0, 1, 2});
  auto star = parse_graph("gens: a b c d\nedge: b a\nedge: b c\nedge: b d\n");
  CHECK(center_generators(star) == std::vector<Gen>{1});
  CHECK(is_abelian(k3));
  CHECK(!is_abelian(gamma1()));
}

TEST_CASE("cdim estimates") {
  auto e = cdim_estimate(gamma1());
  CHECK(e.lower == 2);
  CHECK(e.lattice_height == 2);
  CHECK(e.chosen == 2);
  CHECK(cdim_estimate(free2()).chosen == 2);
  CHECK(cdim_estimate(zee()).chosen == 1);
  CHECK(cdim_estimate(zsq()).chosen == 2);
  for (auto g : {gamma1(), free2(), zee(), path4()}) {
    auto c = cdim_estimate(g);
    CHECK(c.lower <= c.chosen);
    CHECK(c.chosen >= 1);
  }
}

TEST_CASE("direct product graph renames clashes") {
  auto p = direct_product(gamma1(), free2());
  CHECK(p.generators() == std::vector<std::string>{"a", "b", "c", "a2", "b2"});
  CHECK(p.commute(2, 3));
  CHECK(!p.commute(3, 4));
  CHECK(p.commute(0, 1));
}
