#include "pcg/structure.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "pcg/errors.h"
#include "pcg/merzlyakov.h"
#include "pcg/trace.h"

namespace pcg {

CentraliserDescription centraliser(const CommutationGraph& g, const Word& w) {
  if (is_trivial(g, w)) throw DomainError("centraliser: trivial input");
  auto cd = cyclic_reduce(g, w);
  CentraliserDescription out;
  out.conjugator = cd.conjugator;
  for (auto& b : block_decomposition(g, cd.core).blocks) out.cyclic_parts.push_back(root(g, b).root);
  out.abelian_part = a_set(g, cd.core);
  auto back = [&](const Word& x) { return normalize(g, concat({cd.conjugator, x, inverse(cd.conjugator)})); };
  for (auto& r : out.cyclic_parts) out.generators.push_back(back(r));
  for (Gen x : out.abelian_part) out.generators.push_back(back(letter_word(x)));
  return out;
}

bool has_cyclic_centraliser(const CommutationGraph& g, const Word& w) {
  if (is_trivial(g, w)) throw DomainError("has_cyclic_centraliser: trivial input");
  auto core = cyclic_reduce(g, w).core;
  return block_decomposition(g, core).blocks.size() == 1 && a_set(g, core).empty();
}

namespace {

// c with c u c^-1 = v for cyclically reduced blocks, closing under cyclic permutation.
std::optional<Word> block_conjugator(const CommutationGraph& g, const Word& u, const Word& v) {
  Word nu = normalize(g, u), nv = normalize(g, v);
  std::map<Word, Word> seen{{nu, Word{}}};
  std::deque<Word> todo{nu};
  while (!todo.empty()) {
    Word cur = todo.front();
    todo.pop_front();
    Word c = seen[cur];
    if (cur == nv) return normalize(g, c);
    for (auto& d : left_divisors(g, cur)) {
      Word next = normalize(g, concat({inverse(d), cur, d}));
      if (seen.count(next)) continue;
      seen[next] = normalize(g, concat(inverse(d), c));
      todo.push_back(next);
    }
    if (seen.size() > 200000) throw LimitExceeded("cyclic permutation closure too large");
  }
  return std::nullopt;
}

}  // namespace

ConjugacyResult conjugate(const CommutationGraph& g, const Word& u, const Word& v) {
  auto cu = cyclic_reduce(g, u), cv = cyclic_reduce(g, v);
  auto bu = block_decomposition(g, cu.core).blocks, bv = block_decomposition(g, cv.core).blocks;
  ConjugacyResult res;
  if (bu.size() != bv.size()) return res;
  auto key = [&](const Word& b) { return alpha(g, b); };
  // blocks have pairwise disjoint alphabets; match by alphabet
  std::map<std::vector<Gen>, Word> vmap;
  for (auto& b : bv) vmap[key(b)] = b;
  Word c;
  for (auto& b : bu) {
    auto it = vmap.find(key(b));
    if (it == vmap.end()) return res;
    if (b.size() != it->second.size()) return res;
    auto cb = block_conjugator(g, b, it->second);
    if (!cb) return res;
    c = concat(c, *cb);
  }
  Word total = normalize(g, concat({cv.conjugator, c, inverse(cu.conjugator)}));
  if (!equals(g, concat({total, u, inverse(total)}), v)) throw std::logic_error("conjugate: conjugator check failed");
  res.conjugate = true;
  res.conjugator = total;
  return res;
}

void validate_witness(const CommutationGraph& g, const DomainWitness& w) {
  if (is_trivial(g, w.a) || is_trivial(g, w.b)) throw DomainError("witness: trivial element");
  if (!has_cyclic_centraliser(g, w.a)) throw DomainError("witness: centraliser of a is not cyclic");
  if (!has_cyclic_centraliser(g, w.b)) throw DomainError("witness: centraliser of b is not cyclic");
  if (is_trivial(g, commutator(w.a, w.b))) throw DomainError("witness: a and b commute");
  Word ra = root(g, w.a).root, rb = root(g, w.b).root;
  if (equals(g, ra, rb) || equals(g, ra, inverse(rb))) throw DomainError("witness: a and b share a root");
  if (w.N < 0) throw DomainError("witness: negative exponent");
}

DomainWitness domain_witnesses(const CommutationGraph& g, std::optional<int> N) {
  if (is_abelian(g)) throw DomainError("graph is abelian: not a domain");
  if (!is_indecomposable(g)) throw DomainError("graph is directly decomposable: not a domain");
  auto [a, b] = base_elements(g);
  DomainWitness w{a, b, N ? *N : 3 * cdim_estimate(g).chosen + 4};
  validate_witness(g, w);
  return w;
}

std::vector<Formula> domain_system(const DomainWitness& w, const Term& x, const Term& y) {
  Term aN = Term::constant(power(w.a, w.N)), bN = Term::constant(power(w.b, w.N));
  return {Formula::eq(comm(x, y), Term::one()), Formula::eq(comm(x, conjugate_term(y, aN)), Term::one()),
          Formula::eq(comm(x, conjugate_term(y, bN)), Term::one())};
}

std::vector<Formula> domain_system(const DomainWitness& w) {
  return domain_system(w, Term::variable("x"), Term::variable("y"));
}

bool power_conjugate_split(const CommutationGraph& g, const Word& z, const Word& h, int N) {
  if (!is_block(g, h) || !is_cyclically_reduced(g, h)) throw DomainError("power_conjugate_split: g is not a cyclically reduced block");
  if (is_trivial(g, z)) return true;
  Word gn = reduce(g, h);
  Word n = normalize(g, concat({power(gn, N), z, power(gn, -N)}));
  if (n.size() < 2 * gn.size()) return false;
  Word mid = normalize(g, concat({inverse(gn), n, gn}));
  if (mid.size() + 2 * gn.size() != n.size()) return false;
  return is_geodesic_concat(g, gn, mid) && is_geodesic_concat(g, concat(gn, mid), inverse(gn));
}

Separation separate_in_gx(const CommutationGraph& gx, int base_rank, const Word& w, int cdim_override,
                          const SolverOptions& opt) {
  if (is_trivial(gx, w)) throw DomainError("separate: word is trivial in G[X]");
  std::vector<Gen> base(base_rank);
  for (int i = 0; i < base_rank; ++i) base[i] = i;
  CommutationGraph g = gx.induced(base);
  const int nvars = gx.rank() - base_rank;
  Row row = row_from_gx(w, base_rank);
  Separation out;
  bool domain = !is_abelian(g) && is_indecomposable(g) && g.rank() >= 2;
  if (domain) {
    Word a = base_elements(g).first;
    int cd = cdim_override > 0 ? cdim_override : cdim_estimate(g).chosen;
    int E = 6 * cd + 8;
    for (int i = 0; i < nvars; ++i) out.assignment.push_back(power(a, static_cast<long>(E) * (i + 1)));
    if (!is_trivial(g, substitute(row, out.assignment))) return out;
  }
  System s;
  for (int i = 0; i < nvars; ++i) s.vars.push_back(gx.name(base_rank + i));
  row.equation = false;
  s.rows.push_back(row);
  for (int radius = 1; radius <= 2; ++radius) {
    if (tuple_count(enumerate_geodesics(g, radius).size(), nvars) > opt.max_checks) break;
    if (auto hit = search_assignment(g, s, radius, {}, opt)) {
      out.assignment = *hit;
      out.by_power_map = false;
      return out;
    }
  }
  throw DomainError("separate: no separating assignment found");
}

}  // namespace pcg
