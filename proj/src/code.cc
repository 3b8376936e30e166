#include "pcg/code.h"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "pcg/errors.h"
#include "pcg/structure.h"
#include "pcg/trace.h"

namespace pcg {

namespace {
Term V(const char* n) { return Term::variable(n); }
}  // namespace

GroupCode identity_code() {
  GroupCode c;
  c.X = {"x"};
  c.Y = {"y"};
  c.Z = {"z"};
  c.U = Formula::truth();
  c.E = Formula::eq(V("x"), V("y"));
  c.Mult = Formula::eq(Term::mul({V("x"), V("y")}), V("z"));
  c.Inv = Formula::eq(Term::inv(V("x")), V("y"));
  return c;
}

GroupCode subgroup_code(const Formula& U, std::vector<std::string> P) {
  GroupCode c = identity_code();
  c.U = U;
  c.P = std::move(P);
  return c;
}

GroupCode quotient_code(const Formula& U, std::vector<std::string> P) {
  GroupCode c = identity_code();
  c.U = Formula::eq(V("x"), V("x"));
  FreshNames fresh;
  fresh.reserve(U);
  for (auto n : {"x", "y", "z", "v"}) fresh.reserve(n);
  Formula Uv = substitute(U, {{"x", V("v")}}, fresh);
  c.E = Formula::exists("v", Formula::conj({Formula::eq(V("x"), Term::mul({V("y"), V("v")})), Uv}));
  c.P = std::move(P);
  return c;
}

Formula centre_formula() {
  return Formula::forall("w", Formula::eq(comm(V("x"), V("w")), Term::one()));
}

void validate_code(const GroupCode& c) {
  if (c.X.empty()) throw DomainError("code: arity must be positive");
  if (c.X.size() != c.Y.size() || c.X.size() != c.Z.size()) throw DomainError("code: |X|, |Y|, |Z| differ");
  auto within = [&](const Formula& f, std::vector<std::vector<std::string>> tuples, const char* what) {
    std::vector<std::string> allowed;
    for (auto& t : tuples) allowed.insert(allowed.end(), t.begin(), t.end());
    allowed.insert(allowed.end(), c.P.begin(), c.P.end());
    for (auto& v : free_vars(f))
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
        throw DomainError(std::string("code: ") + what + " has undeclared free variable ?" + v);
  };
  within(c.U, {c.X}, "U");
  within(c.E, {c.X, c.Y}, "E");
  within(c.Mult, {c.X, c.Y, c.Z}, "Mult");
  within(c.Inv, {c.X, c.Y}, "Inv");
}

GroupCode parse_code_json(std::string_view text, const CommutationGraph& g) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("code JSON: ") + e.what());
  }
  GroupCode c;
  try {
    c.X = j.at("X").get<std::vector<std::string>>();
    c.Y = j.at("Y").get<std::vector<std::string>>();
    c.Z = j.at("Z").get<std::vector<std::string>>();
    c.P = j.value("P", std::vector<std::string>{});
    c.U = parse_formula(j.at("U").get<std::string>(), g);
    c.E = parse_formula(j.at("E").get<std::string>(), g);
    c.Mult = parse_formula(j.at("Mult").get<std::string>(), g);
    c.Inv = parse_formula(j.at("Inv").get<std::string>(), g);
    if (j.contains("arity") && j.at("arity").get<std::size_t>() != c.X.size())
      throw ParseError("code JSON: arity does not match |X|");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("code JSON: ") + e.what());
  }
  validate_code(c);
  return c;
}

std::string code_to_json(const GroupCode& c, const CommutationGraph& g) {
  nlohmann::json j;
  j["arity"] = c.arity();
  j["X"] = c.X;
  j["Y"] = c.Y;
  j["Z"] = c.Z;
  j["P"] = c.P;
  j["U"] = print_formula(c.U, g);
  j["E"] = print_formula(c.E, g);
  j["Mult"] = print_formula(c.Mult, g);
  j["Inv"] = print_formula(c.Inv, g);
  return j.dump(2);
}

namespace {

bool is_var(const Term& t) { return t.kind == Term::Kind::Var; }

enum class Shape { None, Equal, Mult, Inv };

Shape primitive(const Formula& atom) {
  const Term &l = atom.terms[0], &r = atom.terms[1];
  if (!is_var(r)) return Shape::None;
  if (is_var(l)) return Shape::Equal;
  if (l.kind == Term::Kind::Mul && l.args.size() == 2 && is_var(l.args[0]) && is_var(l.args[1])) return Shape::Mult;
  if (l.kind == Term::Kind::Inv && is_var(l.args[0])) return Shape::Inv;
  return Shape::None;
}

struct Flat {
  std::string name;
  std::vector<Formula> defs;
  std::vector<std::string> vars;
};

Flat flatten_term(const Term& t, FreshNames& fresh) {
  switch (t.kind) {
    case Term::Kind::Var:
      return {t.var, {}, {}};
    case Term::Kind::Const:
      throw DomainError("translate_code: constants are not expressible through a group code");
    case Term::Kind::One: {
      std::string e = fresh.next();
      return {e, {Formula::eq(Term::mul({Term::variable(e), Term::variable(e)}), Term::variable(e))}, {e}};
    }
    case Term::Kind::Inv: {
      Flat a = flatten_term(t.args[0], fresh);
      std::string y = fresh.next();
      a.defs.push_back(Formula::eq(Term::inv(Term::variable(a.name)), Term::variable(y)));
      a.vars.push_back(y);
      a.name = y;
      return a;
    }
    case Term::Kind::Mul: {
      Flat acc = flatten_term(t.args[0], fresh);
      for (std::size_t i = 1; i < t.args.size(); ++i) {
        Flat b = flatten_term(t.args[i], fresh);
        std::string z = fresh.next();
        acc.defs.insert(acc.defs.end(), b.defs.begin(), b.defs.end());
        acc.vars.insert(acc.vars.end(), b.vars.begin(), b.vars.end());
        acc.defs.push_back(Formula::eq(Term::mul({Term::variable(acc.name), Term::variable(b.name)}), Term::variable(z)));
        acc.vars.push_back(z);
        acc.name = z;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

Formula flatten_atoms(const Formula& f, FreshNames& fresh) {
  using K = Formula::Kind;
  if (f.kind == K::Eq || f.kind == K::Neq) {
    Formula eq = f;
    eq.kind = K::Eq;
    Formula core;
    if (primitive(eq) != Shape::None) {
      core = eq;
    } else {
      Flat l = flatten_term(f.terms[0], fresh), r = flatten_term(f.terms[1], fresh);
      std::vector<Formula> parts = l.defs;
      parts.insert(parts.end(), r.defs.begin(), r.defs.end());
      parts.push_back(Formula::eq(Term::variable(l.name), Term::variable(r.name)));
      core = parts.size() == 1 ? parts[0] : Formula::conj(parts);
      std::vector<std::string> vs = l.vars;
      vs.insert(vs.end(), r.vars.begin(), r.vars.end());
      for (auto it = vs.rbegin(); it != vs.rend(); ++it) core = Formula::exists(*it, core);
    }
    return f.kind == K::Eq ? core : Formula::negation(core);
  }
  Formula out = f;
  for (auto& a : out.args) a = flatten_atoms(a, fresh);
  return out;
}

namespace {

class Translator {
 public:
  Translator(const GroupCode& c, FreshNames& fresh) : c_(c), fresh_(fresh) {}

  std::vector<std::string> tuple(const std::string& x) const {
    if (c_.arity() == 1) return {x};
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= c_.arity(); ++i) out.push_back(x + "_" + std::to_string(i));
    return out;
  }

  Formula instantiate(const Formula& code_formula, std::vector<std::pair<const std::vector<std::string>*, std::string>> binds) {
    std::map<std::string, Term> sub;
    for (auto& [names, var] : binds) {
      auto t = tuple(var);
      for (std::size_t i = 0; i < names->size(); ++i) sub[(*names)[i]] = Term::variable(t[i]);
    }
    // rename the code's own bound variables so nothing is captured
    return substitute(rename_bound(code_formula, fresh_), sub, fresh_);
  }

  Formula run(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True:
      case K::False:
        return f;
      case K::Eq: {
        const Term &l = f.terms[0], &r = f.terms[1];
        switch (primitive(f)) {
          case Shape::Equal:
            return instantiate(c_.E, {{&c_.X, l.var}, {&c_.Y, r.var}});
          case Shape::Mult:
            return instantiate(c_.Mult, {{&c_.X, l.args[0].var}, {&c_.Y, l.args[1].var}, {&c_.Z, r.var}});
          case Shape::Inv:
            return instantiate(c_.Inv, {{&c_.X, l.args[0].var}, {&c_.Y, r.var}});
          case Shape::None:
            break;
        }
        throw DomainError("translate_code: atom is not one of x=y, xy=z, x^-1=y");
      }
      case K::Neq:
        return Formula::negation(run(Formula::eq(f.terms[0], f.terms[1])));
      case K::Not:
      case K::And:
      case K::Or:
      case K::Implies: {
        Formula out = f;
        for (auto& a : out.args) a = run(a);
        return out;
      }
      case K::Exists:
      case K::Forall: {
        Formula body = run(f.args[0]);
        Formula u = instantiate(c_.U, {{&c_.X, f.var}});
        Formula inner;
        if (u.kind == K::True)
          inner = body;
        else
          inner = f.kind == K::Exists ? Formula::conj({u, body}) : Formula::implies(u, body);
        auto t = tuple(f.var);
        for (auto it = t.rbegin(); it != t.rend(); ++it)
          inner = f.kind == K::Exists ? Formula::exists(*it, inner) : Formula::forall(*it, inner);
        return inner;
      }
    }
    return f;
  }

 private:
  const GroupCode& c_;
  FreshNames& fresh_;
};

}  // namespace

Formula translate_code(const GroupCode& c, const Formula& f) {
  validate_code(c);
  FreshNames fresh;
  fresh.reserve(f);
  for (auto* fm : {&c.U, &c.E, &c.Mult, &c.Inv}) fresh.reserve(*fm);
  for (auto* vs : {&c.X, &c.Y, &c.Z, &c.P})
    for (auto& v : *vs) fresh.reserve(v);
  Formula g = rename_bound(f, fresh);
  g = flatten_atoms(g, fresh);
  Translator t(c, fresh);
  if (c.arity() > 1) {
    std::set<std::string> all;
    collect_names(g, all);
    for (auto& n : all)
      for (auto& x : t.tuple(n)) fresh.reserve(x);
  }
  return t.run(g);
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

std::vector<Formula> axiom_formulas(const Word& a, const Word& b) {
  Term x = V("x"), y = V("y"), z = V("z"), ta = Term::constant(a), tb = Term::constant(b), one = Term::one();
  auto is1 = [&](Term t) { return Formula::eq(std::move(t), one); };
  Formula I = Formula::forall("x", Formula::implies(Formula::conj({is1(comm(x, ta)), is1(comm(x, tb))}), is1(x)));
  Formula II = Formula::forall(
      "x", Formula::forall("y", Formula::forall("z", Formula::implies(is1(Term::mul({x, x, y, y, z, z})),
                                                                      Formula::conj({is1(comm(x, y)), is1(comm(x, z)),
                                                                                     is1(comm(y, z))})))));
  Formula III = Formula::forall(
      "x", Formula::forall("y", Formula::implies(Formula::eq(Term::mul({x, x}), Term::mul({y, y})), Formula::eq(x, y))));
  Formula IV = Formula::forall("x", Formula::implies(is1(comm(Term::mul({x, x}), ta)), is1(comm(x, ta))));
  return {I, II, III, IV};
}

AxiomReport check_axioms(const CommutationGraph& g, int radius) {
  if (g.rank() == 0) throw DomainError("check_axioms: empty graph");
  AxiomReport rep;
  try {
    auto w = domain_witnesses(g);
    rep.a = w.a;
    rep.b = w.b;
    rep.witnesses_valid = true;
  } catch (const DomainError&) {
    rep.a = letter_word(0);
    rep.b = letter_word(g.rank() - 1);
  }
  auto s = BallStructure::ball(g, radius);
  const char* names[] = {"I", "II", "III", "IV"};
  auto axioms = axiom_formulas(rep.a, rep.b);
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    AxiomResult r{names[i], true, {}};
    if (auto cx = universal_counterexample(s, axioms[i])) {
      r.passed = false;
      r.counterexample = *cx;
    }
    rep.results.push_back(r);
  }
  return rep;
}

}  // namespace pcg
