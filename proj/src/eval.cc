#include "pcg/eval.h"

#include <optional>

#include "pcg/errors.h"
#include "pcg/trace.h"

namespace pcg {

BallStructure BallStructure::ball(const CommutationGraph& g, int radius) {
  return BallStructure{g, enumerate_geodesics(g, radius), radius};
}

namespace {

const Word* lookup(const Env& env, const std::string& v) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == v) return &it->second;
  return nullptr;
}

void term_into(const CommutationGraph& g, const Term& t, const Env& env, bool inv, Word& out) {
  switch (t.kind) {
    case Term::Kind::One:
      return;
    case Term::Kind::Var: {
      const Word* w = lookup(env, t.var);
      if (!w) throw DomainError("unbound variable '" + t.var + "'");
      if (!inv)
        out.insert(out.end(), w->begin(), w->end());
      else
        for (auto it = w->rbegin(); it != w->rend(); ++it) out.push_back(it->inverse());
      return;
    }
    case Term::Kind::Const:
      check_declared(t.word, g);
      if (!inv)
        out.insert(out.end(), t.word.begin(), t.word.end());
      else
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) out.push_back(it->inverse());
      return;
    case Term::Kind::Inv:
      term_into(g, t.args[0], env, !inv, out);
      return;
    case Term::Kind::Mul:
      if (!inv)
        for (auto& a : t.args) term_into(g, a, env, false, out);
      else
        for (auto it = t.args.rbegin(); it != t.args.rend(); ++it) term_into(g, *it, env, true, out);
      return;
  }
}

bool eval_rec(const BallStructure& s, const Formula& f, Env& env) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Eq:
    case K::Neq:
      return eval_atom(s.graph, f, env);
    case K::Not:
      return !eval_rec(s, f.args[0], env);
    case K::And:
      for (auto& a : f.args)
        if (!eval_rec(s, a, env)) return false;
      return true;
    case K::Or:
      for (auto& a : f.args)
        if (eval_rec(s, a, env)) return true;
      return false;
    case K::Implies:
      return !eval_rec(s, f.args[0], env) || eval_rec(s, f.args[1], env);
    case K::Exists:
    case K::Forall: {
      bool ex = f.kind == K::Exists;
      env.emplace_back(f.var, Word{});
      bool result = !ex;
      for (auto& d : s.domain) {
        env.back().second = d;
        if (eval_rec(s, f.args[0], env) == ex) {
          result = ex;
          break;
        }
      }
      env.pop_back();
      return result;
    }
  }
  return false;
}

}  // namespace

Word eval_term(const CommutationGraph& g, const Term& t, const Env& env) {
  Word out;
  term_into(g, t, env, false, out);
  return out;
}

bool eval_atom(const CommutationGraph& g, const Formula& atom, const Env& env) {
  Word w;
  term_into(g, atom.terms[0], env, false, w);
  term_into(g, atom.terms[1], env, true, w);
  bool trivial = reduce(g, w).empty();
  return atom.kind == Formula::Kind::Eq ? trivial : !trivial;
}

bool eval_ball(const BallStructure& s, const Formula& f, const Env& env) {
  Env e = env;
  return eval_rec(s, f, e);
}

std::optional<std::vector<Word>> universal_counterexample(const BallStructure& s, const Formula& f) {
  std::vector<std::string> vars;
  const Formula* m = &f;
  while (m->kind == Formula::Kind::Forall) {
    vars.push_back(m->var);
    m = &m->args[0];
  }
  if (!is_quantifier_free(*m)) throw DomainError("expected a universal formula");
  Env env;
  for (auto& v : vars) env.emplace_back(v, Word{});
  std::vector<std::size_t> idx(vars.size(), 0);
  if (s.domain.empty()) return std::nullopt;
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[i].second = s.domain[idx[i]];
    if (!eval_ball(s, *m, env)) {
      std::vector<Word> out;
      for (auto& [n, w] : env) out.push_back(w);
      return out;
    }
    std::size_t k = vars.size();
    while (k > 0) {
      if (++idx[k - 1] < s.domain.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) return std::nullopt;
  }
}

}  // namespace pcg
