// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "common.h"
#include "fv_corpus.h"
#include "oracles.h"
#include "pcg/code.h"
#include "pcg/encode.h"
#include "pcg/errors.h"
#include "pcg/eval.h"
#include "pcg/formula.h"
#include "pcg/fv.h"
#include "pcg/geneq.h"
#include "pcg/merzlyakov.h"
#include "pcg/solver.h"
#include "pcg/structure.h"
#include "pcg/trace.h"
#include "pcg/vankampen.h"

using namespace pcg;
using namespace testing_graphs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

const CommutationGraph G1 = gamma1();
Word W(const char* s) { return parse_word(s, G1); }
std::string S(const Word& w) { return format_word(w, G1); }
bool commute(const CommutationGraph& g, const Word& u, const Word& v) { return is_trivial(g, commutator(u, v)); }

Outcome words_vs_rewriting() {
  Outcome o;
  std::mt19937_64 rng(1);
  const CommutationGraph gs[] = {gamma1(), free2(), zsq()};
  int total = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto& g = gs[n % 3];
    Word u = oracle::random_word(rng, g.rank(), static_cast<int>(rng() % 11));
    auto cu = oracle::rewrite_closure(g, u);
    std::size_t best = u.size();
    for (auto& x : cu) best = std::min(best, x.size());
    if (normalize(g, u).size() != best) o.fail("length mismatch on " + format_word(u, g));
    // v: half the time a scrambled equal word, otherwise random
    Word v;
    if (rng() % 2) {
      v = *std::next(cu.begin(), static_cast<long>(rng() % cu.size()));
      Gen x = static_cast<Gen>(rng() % g.rank());
      std::size_t at = v.empty() ? 0 : rng() % (v.size() + 1);
      v.insert(v.begin() + static_cast<long>(at), {Letter{x, false}, Letter{x, true}});
    } else {
      v = oracle::random_word(rng, g.rank(), static_cast<int>(rng() % 11));
    }
    auto cv = oracle::rewrite_closure(g, v);
    bool meet = false;
    for (auto& x : cv)
      if (cu.count(x)) {
        meet = true;
        break;
      }
    if (equals(g, u, v) != meet) o.fail("equality mismatch on " + format_word(u, g) + " / " + format_word(v, g));
    ++total;
  }
  o.detail = o.pass ? std::to_string(total) + " words over 3 graphs" : o.detail;
  return o;
}

Outcome figure_word() {
  Outcome o;
  Word w = W("c a b a^-1 b^-1 c^-1");
  if (!normalize(G1, w).empty()) o.fail("not trivial");
  auto p = cancellation_pairing(G1, w);
  std::set<int> seen;
  for (auto [i, j] : p.pairs) {
    seen.insert(i);
    seen.insert(j);
    if (w[i] != w[j].inverse()) o.fail("pair of non-inverse letters");
  }
  if (!p.complete || seen.size() != 6) o.fail("pairing does not cover all six letters");
  if (o.pass) {
    std::ostringstream d;
    for (auto [i, j] : p.pairs) d << "(" << i << "," << j << ")";
    o.detail = "pairs " + d.str();
  }
  return o;
}

Outcome product_schemes() {
  Outcome o;
  std::mt19937_64 rng(3);
  auto ball = enumerate_geodesics(G1, 3);
  for (int t = 0; t < 200; ++t) {
    int k = 2 + static_cast<int>(rng() % 3);
    std::vector<Word> ws;
    Word prod;
    for (int i = 0; i + 1 < k; ++i) {
      ws.push_back(ball[rng() % ball.size()]);
      prod = concat(prod, ws.back());
    }
    ws.push_back(normalize(G1, inverse(prod)));
    auto s = product_scheme(G1, ws);
    for (int l = 0; l < k; ++l) {
      if (!trace_equal(G1, reassemble(s, l), ws[l])) o.fail("reassembly fails for factor " + S(ws[l]));
      for (int i = 0; i < k; ++i)
        if (i != l && !equals(G1, s.pieces[l][i], inverse(s.pieces[i][l]))) o.fail("pieces not inverse");
    }
  }
  if (o.pass) o.detail = "200 products";
  return o;
}

Outcome centralisers() {
  Outcome o;
  auto ball = enumerate_geodesics(G1, 2);
  int gens_total = 0;
  for (auto& w : ball) {
    if (w.empty()) continue;
    auto gens = centraliser(G1, w).generators;
    gens_total += static_cast<int>(gens.size());
    for (auto& x : gens)
      if (!commute(G1, x, w)) o.fail("generator " + S(x) + " does not commute with " + S(w));
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
      if (commute(G1, x, w) && !reach.count(x)) o.fail(S(x) + " commutes with " + S(w) + " but is not reached");
  }
  if (o.pass) o.detail = std::to_string(ball.size() - 1) + " elements, " + std::to_string(gens_total) + " generators";
  return o;
}

Outcome conjugacy() {
  Outcome o;
  auto ball = enumerate_geodesics(G1, 2);
  auto ts = enumerate_geodesics(G1, 3);
  int witnessed = 0;
  for (auto& u : ball)
    for (auto& v : ball) {
      bool brute = false;
      for (auto& t : ts)
        if (equals(G1, concat({t, u, inverse(t)}), v)) {
          brute = true;
          break;
        }
      auto r = conjugate(G1, u, v);
      if (brute && !r.conjugate) o.fail("missed " + S(u) + " ~ " + S(v));
      if (r.conjugate && (!r.conjugator || !equals(G1, concat({*r.conjugator, u, inverse(*r.conjugator)}), v)))
        o.fail("bad witness for " + S(u) + " ~ " + S(v));
      witnessed += brute;
    }
  if (o.pass) o.detail = std::to_string(ball.size() * ball.size()) + " pairs, " + std::to_string(witnessed) + " conjugate";
  return o;
}

Outcome axioms() {
  Outcome o;
  auto r = check_axioms(G1, 2);
  if (!r.witnesses_valid) o.fail("witness pair invalid");
  for (auto& a : r.results)
    if (!a.passed) o.fail("axiom " + a.name + " fails");
  auto sys = parse_system("?x ?x ?y ?y ?z ?z", G1);
  auto v = solve_bounded(G1, sys, 1);
  for (auto& s : v.solutions)
    if (!commute(G1, s[0], s[1]) || !commute(G1, s[0], s[2]) || !commute(G1, s[1], s[2]))
      o.fail("non-commutative solution " + S(s[0]) + ", " + S(s[1]) + ", " + S(s[2]));
  if (o.pass) o.detail = "a=" + S(r.a) + " b=" + S(r.b) + "; " + std::to_string(v.solutions.size()) + " solutions of x2y2z2";
  return o;
}

Term random_term(std::mt19937_64& rng) {
  const Term X = Term::variable("x"), Y = Term::variable("y");
  std::vector<Term> parts;
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    switch (rng() % 5) {
      case 0: parts.push_back(X); break;
      case 1: parts.push_back(Y); break;
      case 2: parts.push_back(Term::inv(X)); break;
      case 3: parts.push_back(Term::inv(Y)); break;
      default: parts.push_back(Term::constant(letter_word(static_cast<Gen>(rng() % 3), rng() & 1)));
    }
  }
  return parts.size() == 1 ? parts[0] : Term::mul(parts);
}

System eq_system(const std::vector<Term>& ts) {
  std::vector<Formula> fs;
  for (auto& t : ts) fs.push_back(Formula::eq(t, Term::one()));
  return formula_to_system(Formula::conj(fs), {"x", "y"});
}

Outcome malcev() {
  Outcome o;
  auto w = domain_witnesses(G1);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    Term s1 = random_term(rng), s2 = random_term(rng);
    auto cmp = verify_variety_eq(G1, eq_system({s1, s2}), eq_system({encode_conj({s1, s2}, w.a, w.b)}), 2);
    if (!cmp.equal) o.fail("varieties differ for " + print_term(s1, G1) + ", " + print_term(s2, G1));
  }
  auto pure = solve_bounded(G1, eq_system({encode_conj({Term::variable("x"), Term::variable("y")}, w.a, w.b)}), 2);
  if (pure.solutions.size() != 1 || !pure.solutions[0][0].empty() || !pure.solutions[0][1].empty())
    o.fail("pure equation has " + std::to_string(pure.solutions.size()) + " solutions");
  if (o.pass) o.detail = "20 pairs; pure equation only (1,1)";
  return o;
}

Outcome disjunction() {
  Outcome o;
  auto w = domain_witnesses(G1);
  if (w.N != 3 * cdim_estimate(G1).chosen + 4) o.fail("N is not 3 cdim + 4");
  auto sys = formula_to_system(Formula::conj(domain_system(w)), {"x", "y"});
  auto v = solve_bounded(G1, sys, 2);
  for (auto& s : v.solutions)
    if (!s[0].empty() && !s[1].empty()) o.fail("solution with x, y != 1: " + S(s[0]) + ", " + S(s[1]));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    Term s1 = random_term(rng), s2 = random_term(rng);
    auto got = solve_bounded(G1, eq_system({encode_disj({s1, s2}, w)}), 2).solutions;
    auto u1 = solve_bounded(G1, eq_system({s1}), 2).solutions;
    auto u2 = solve_bounded(G1, eq_system({s2}), 2).solutions;
    std::set<Assignment> want(u1.begin(), u1.end());
    want.insert(u2.begin(), u2.end());
    if (std::set<Assignment>(got.begin(), got.end()) != want)
      o.fail("union differs for " + print_term(s1, G1) + ", " + print_term(s2, G1));
  }
  if (o.pass) o.detail = "N=" + std::to_string(w.N) + ", " + std::to_string(v.solutions.size()) + " ball solutions, 20 pairs";
  return o;
}

Outcome generalised_equations() {
  Outcome o;
  const char* systems[] = {"?x a ?x^-1 a^-1", "?x ?y ?x^-1 ?y^-1", "?x c ?y"};
  int count = 0;
  for (auto* text : systems) {
    auto s = parse_system(text, G1);
    for (auto& sol : solve_bounded(G1, s, 1).solutions) {
      auto it = induced_table(G1, s, sol);
      auto ge = build_ge(it.table);
      if (!check_solution(G1, ge, it.U)) o.fail(std::string("check_solution fails on ") + text);
      auto back = apply_p(ge, it.U);
      for (std::size_t i = 0; i < back.size(); ++i)
        if (!trace_equal(G1, back[i], sol[i])) o.fail(std::string("P(U) != W on ") + text);
      if (lift_solution(G1, s, ge, it.U) != back) o.fail(std::string("lift differs on ") + text);
      auto gx = with_variables(G1, {"t"});
      if (lift_solution(gx, s, ge, it.U) != back) o.fail(std::string("lift over G[t] differs on ") + text);
      ++count;
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " solutions";
  return o;
}

Outcome merzlyakov_layer() {
  Outcome o;
  auto [a, b] = base_elements(G1);
  if (!consecutive_noncommuting(G1, a) || !consecutive_noncommuting(G1, b)) o.fail("base elements have commuting neighbours");
  auto expect_condition = [&](const MerzlyakovParams& p, std::size_t i, const std::vector<Word>& h, const std::string& which) {
    try {
      merzlyakov_word(G1, i, p, h);
      o.fail(which + " not enforced");
    } catch (const DomainError& e) {
      if (std::string(e.what()).find(which) == std::string::npos) o.fail(which + ": wrong message " + e.what());
    }
  };
  MerzlyakovParams dup{2, {{2, 2}}, 0};
  expect_condition(dup, 0, {}, "condition 1");
  MerzlyakovParams small{2, {{1, 2}}, 2};
  expect_condition(small, 0, {}, "condition 2");
  auto d = default_params(3, 3, 2);
  std::vector<Word> hist;
  for (std::size_t i = 0; i < 3; ++i) hist.push_back(merzlyakov_word(G1, i, d, hist));
  auto stale = d;
  stale.exponents[1] = stale.exponents[0];
  expect_condition(stale, 1, {hist[0]}, "condition 3");

  auto sys = parse_system("?x1 ?y1 ?x1^-1 ?y1^-1", G1);
  auto q = parse_skolem("?x1 ?y1 := ?x1", G1);
  bool lifted = skolem_check(G1, sys, q);
  if (!lifted) o.fail("skolem check false");
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    Word x = oracle::random_word(rng, 3, 1 + static_cast<int>(rng() % 6));
    if (system_holds(G1, sys, {x, x}) != lifted) o.fail("specialisation disagrees at " + S(x));
  }
  if (o.pass) o.detail = "b=" + S(b) + " a=" + S(a) + "; 100 specialisations";
  return o;
}

Outcome feferman_vaught() {
  Outcome o;
  auto PG = parse_graph(fv_corpus::kProductGraph);
  auto F2 = free2();
  auto s1 = BallStructure::ball(G1, 1), s2 = BallStructure::ball(F2, 1);
  int r = G1.rank();
  int corpus = 0;
  for (auto& text : fv_corpus::fixed_corpus()) {
    auto phi = parse_formula(text, PG);
    if (quantifier_depth(phi) > 2) o.fail("corpus formula deeper than 2");
    if (!fv_check(phi, s1, s2).agree) o.fail("corpus: " + text);
    ++corpus;
  }
  fv_corpus::Generator gen(2024, false);
  int checked = 0, guarded = 0;
  while (checked < 100) {
    auto phi = parse_formula(gen.formula(3, checked % 4 == 0 ? std::vector<std::string>{"?x"} : std::vector<std::string>{}), PG);
    try {
      if (!fv_check(phi, s1, s2).agree) o.fail("random: " + print_formula(phi, PG));
      ++checked;
    } catch (const LimitExceeded&) {
      ++guarded;
    }
  }
  // positive rules: syntax scan plus equivalence with the plain split on every factor assignment
  fv_corpus::Generator pgen(99, true);
  int positive = 0;
  std::function<bool(const Formula&)> negative = [&](const Formula& f) {
    if (f.kind == Formula::Kind::Not || f.kind == Formula::Kind::Implies || f.kind == Formula::Kind::Neq) return true;
    for (auto& a : f.args)
      if (negative(a)) return true;
    return false;
  };
  for (int n = 0; n < 60; ++n) {
    auto phi = parse_formula(pgen.formula(n % 3, {"?x"}), PG);
    auto pos = fv_split_positive(phi, r);
    auto plain = fv_split(phi, r);
    for (auto& [a, b] : pos.pairs)
      if (negative(a) || negative(b)) o.fail("negation in positive output of " + print_formula(phi, PG));
    auto vars = free_vars(phi);
    if (vars.size() > 1) continue;
    std::vector<Word> none;
    for (auto& u : vars.empty() ? std::vector<Word>{Word{}} : s1.domain)
      for (auto& v : vars.empty() ? std::vector<Word>{Word{}} : s2.domain) {
        std::vector<Word> uu = vars.empty() ? none : std::vector<Word>{u}, vv = vars.empty() ? none : std::vector<Word>{v};
        if (eval_family(s1, s2, pos, vars, uu, vv) != eval_family(s1, s2, plain, vars, uu, vv))
          o.fail("positive split differs on " + print_formula(phi, PG));
      }
    ++positive;
  }
  if (o.pass)
    o.detail = std::to_string(corpus) + " corpus + " + std::to_string(checked) + " random (" + std::to_string(guarded) +
               " draws over the index guard redrawn), " + std::to_string(positive) + " positive";
  return o;
}

std::pair<int, std::string> run(const std::string& args) {
  std::string cmd = std::string(PCG_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  Outcome o;
  std::string d = PCG_DATA_DIR;
  std::string g = " --graph " + d + "/g1.pcg";
  std::vector<std::string> calls = {
      "normalize" + g + " --word 'c a b a^-1 b^-1 c^-1'",
      "centralizer --json" + g + " --word 'a c a c'",
      "conjugate --json" + g + " --word 'a c b' --other 'b c a'",
      "decompose --graph " + d + "/zsq.pcg",
      "domain-check --json" + g + " --radius 1",
      "axioms --json" + g + " --radius 1",
      "encode-disj" + g + " --system '?x;?y'",
      "ge-enum --json" + g + " --system " + d + "/comm.sys --limit 20",
      "ge-induce --json" + g + " --system " + d + "/comm.sys --values 'b a'",
      "cancel-scheme" + g + " --words 'c a; b a^-1; b^-1 c^-1'",
      "merzlyakov-gen --json" + g + " --system " + d + "/comm.sys",
      "solve" + g + " --system " + d + "/comm2.sys --radius 1",
      "separate --json" + g + " --word '?x a ?x^-1 a^-1'",
      "fv-split --json --positive --g1 " + d + "/g1.pcg --g2 " + d + "/f2.pcg --formula '(forall z (or (= z ?x) (= z a2)))'",
      "fv-check --json --g1 " + d + "/g1.pcg --g2 " + d + "/f2.pcg --radius 1 --formula '(= (comm ?x ?y) 1)' --sample 50 --seed 17",
  };
  for (auto& c : calls) {
    auto a = run(c), b = run(c);
    if (a != b) o.fail("differs: " + c);
    if (a.first != 0) o.fail("exit " + std::to_string(a.first) + ": " + c);
  }
  if (o.pass) o.detail = std::to_string(calls.size()) + " invocations run twice";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> fn;
  };
  std::vector<Criterion> all = {
      {1, "word kernel vs rewrite oracle", 60, words_vs_rewriting},
      {2, "six-letter trivial word and its pairing", 1, figure_word},
      {3, "product scheme invariants", 30, product_schemes},
      {4, "centraliser generators and coverage", 120, centralisers},
      {5, "conjugacy vs brute force", 120, conjugacy},
      {6, "axioms I-IV and x2y2z2=1", 120, axioms},
      {7, "conjunction encoder", 300, malcev},
      {8, "disjunction encoder", 300, disjunction},
      {9, "generalised equations round trip", 60, generalised_equations},
      {10, "Merzlyakov layer", 30, merzlyakov_layer},
      {11, "direct product splitting", 600, feferman_vaught},
      {12, "CLI determinism", 600, determinism},
  };
  int failures = 0;
  for (auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) o.fail("over time budget: " + std::to_string(secs) + "s > " + std::to_string(c.budget) + "s");
    failures += !o.pass;
    std::printf("%s %2d %-42s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
