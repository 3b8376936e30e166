#include "pcg/encode.h"

#include <functional>

#include "pcg/errors.h"

namespace pcg {

Term equation_term(const Formula& atom) {
  if (atom.kind != Formula::Kind::Eq && atom.kind != Formula::Kind::Neq)
    throw DomainError("expected an equation");
  if (atom.terms[1].kind == Term::Kind::One) return atom.terms[0];
  return Term::mul({atom.terms[0], Term::inv(atom.terms[1])});
}

std::size_t term_size(const Term& t) {
  if (t.args.empty()) return 1;
  std::size_t n = 0;
  for (auto& a : t.args) n += term_size(a);
  return n;
}

Term encode_conj_pair(const Term& s1, const Term& s2, const Word& a, const Word& b) {
  Term ta = Term::constant(a), tb = Term::constant(b);
  Term inner = Term::mul({s2, tb, s2, Term::inv(tb)});
  return Term::mul({s1, s1, ta, s1, s1, Term::inv(ta), Term::inv(inner), Term::inv(inner)});
}

Term encode_conj(const std::vector<Term>& eqs, const Word& a, const Word& b) {
  if (eqs.empty()) throw DomainError("encode_conj: empty list");
  Term acc = eqs[0];
  for (std::size_t i = 1; i < eqs.size(); ++i) {
    acc = encode_conj_pair(acc, eqs[i], a, b);
    if (term_size(acc) > 5'000'000) throw LimitExceeded("encode_conj: encoded equation too large");
  }
  return acc;
}

Term encode_disj(const std::vector<Term>& eqs, const DomainWitness& w) {
  if (eqs.empty()) throw DomainError("encode_disj: empty list");
  Term acc = eqs[0];
  for (std::size_t i = 1; i < eqs.size(); ++i) {
    std::vector<Term> triple;
    for (auto& f : domain_system(w, acc, eqs[i])) triple.push_back(equation_term(f));
    acc = encode_conj(triple, w.a, w.b);
    if (term_size(acc) > 5'000'000) throw LimitExceeded("encode_disj: encoded equation too large");
  }
  return acc;
}

Term encode_ineq_conj(const std::vector<Term>& ineqs, const DomainWitness& w) {
  if (ineqs.empty()) throw DomainError("encode_ineq_conj: empty list");
  return encode_disj(ineqs, w);
}

Term encode_ineq_disj(const std::vector<Term>& ineqs, const DomainWitness& w) {
  if (ineqs.empty()) throw DomainError("encode_ineq_disj: empty list");
  return encode_conj(ineqs, w.a, w.b);
}

Formula QFNormalForm::to_formula() const {
  std::vector<Formula> ds;
  for (auto& d : disjuncts)
    ds.push_back(Formula::conj({Formula::eq(d.S, Term::one()), Formula::neq(d.T, Term::one())}));
  return Formula::disj(std::move(ds));
}

namespace {

using Literal = Formula;  // Eq or Neq atom
using Conjunct = std::vector<Literal>;

// DNF of an nnf quantifier-free formula. nullopt entries are dropped (contain false).
std::vector<Conjunct> dnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      return {Conjunct{}};
    case K::False:
      return {};
    case K::Eq:
    case K::Neq:
      return {Conjunct{f}};
    case K::Or: {
      std::vector<Conjunct> out;
      for (auto& a : f.args) {
        auto d = dnf(a);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case K::And: {
      std::vector<Conjunct> acc{Conjunct{}};
      for (auto& a : f.args) {
        auto d = dnf(a);
        std::vector<Conjunct> next;
        for (auto& x : acc)
          for (auto& y : d) {
            Conjunct c = x;
            c.insert(c.end(), y.begin(), y.end());
            next.push_back(std::move(c));
          }
        if (next.size() > 4096) throw LimitExceeded("qf_normal_form: more than 4096 disjuncts");
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw DomainError("qf_normal_form: quantifiers present");
  }
}

Term padding_inequation(const DomainWitness& w) {
  Term a = Term::constant(w.a), b = Term::constant(w.b);
  return Term::mul({a, b, Term::inv(a), Term::inv(b)});
}

}  // namespace

QFNormalForm qf_normal_form(const Formula& f, const DomainWitness& w) {
  if (!is_quantifier_free(f)) throw DomainError("qf_normal_form: quantifiers present");
  QFNormalForm out;
  for (auto& c : dnf(nnf(f))) {
    std::vector<Term> eqs, neqs;
    for (auto& lit : c) (lit.kind == Formula::Kind::Eq ? eqs : neqs).push_back(equation_term(lit));
    QFDisjunct d;
    d.S = eqs.empty() ? Term::one() : encode_conj(eqs, w.a, w.b);
    d.T = neqs.empty() ? padding_inequation(w) : encode_ineq_conj(neqs, w);
    out.disjuncts.push_back(std::move(d));
  }
  return out;
}

namespace {

struct Prefix {
  bool forall;
  std::string var;
};

// Pulls quantifiers of a positive formula (bound names already distinct) to the front.
Formula strip(const Formula& f, std::vector<Prefix>& prefix) {
  using K = Formula::Kind;
  if (f.kind == K::Exists || f.kind == K::Forall) {
    prefix.push_back({f.kind == K::Forall, f.var});
    return strip(f.args[0], prefix);
  }
  if (f.kind == K::And || f.kind == K::Or) {
    Formula out = f;
    for (auto& a : out.args) a = strip(a, prefix);
    return out;
  }
  return f;
}

Term matrix_term(const Formula& f, const DomainWitness& w) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      return Term::one();
    case K::False:
      return padding_inequation(w);  // never 1 when the witnesses do not commute
    case K::Eq:
      return equation_term(f);
    case K::And:
    case K::Or: {
      std::vector<Term> ts;
      for (auto& a : f.args) ts.push_back(matrix_term(a, w));
      if (ts.empty()) return f.kind == K::And ? Term::one() : padding_inequation(w);
      return f.kind == K::And ? encode_conj(ts, w.a, w.b) : encode_disj(ts, w);
    }
    default:
      throw DomainError("prenex_positive: formula is not positive");
  }
}

}  // namespace

Formula prenex_positive(const Formula& f, const DomainWitness& w) {
  if (!is_positive(f)) throw DomainError("prenex_positive: formula is not positive");
  FreshNames fresh;
  fresh.reserve(f);
  bool distinct = true;
  {
    std::set<std::string> seen;
    std::function<void(const Formula&)> scan = [&](const Formula& x) {
      if (x.kind == Formula::Kind::Exists || x.kind == Formula::Kind::Forall)
        if (!seen.insert(x.var).second) distinct = false;
      for (auto& a : x.args) scan(a);
    };
    scan(f);
    for (auto& v : free_vars(f))
      if (seen.count(v)) distinct = false;
  }
  Formula g = distinct ? f : rename_bound(f, fresh);
  std::vector<Prefix> prefix;
  Formula m = strip(g, prefix);
  Formula matrix = (m.kind == Formula::Kind::Eq) ? m : Formula::eq(matrix_term(m, w), Term::one());
  // enforce forall/exists alternation with dummy variables
  std::vector<Prefix> shaped;
  for (auto& p : prefix) {
    bool want_forall = shaped.size() % 2 == 0;
    if (p.forall != want_forall) shaped.push_back({want_forall, fresh.next()});
    shaped.push_back(p);
  }
  if (shaped.size() % 2 == 1) shaped.push_back({false, fresh.next()});
  Formula out = matrix;
  for (auto it = shaped.rbegin(); it != shaped.rend(); ++it)
    out = it->forall ? Formula::forall(it->var, out) : Formula::exists(it->var, out);
  return out;
}

}  // namespace pcg
