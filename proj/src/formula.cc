#include "pcg/formula.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "pcg/errors.h"

namespace pcg {

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  return t;
}
Term Term::constant(Word w) {
  Term t;
  t.kind = Kind::Const;
  t.word = std::move(w);
  return t;
}
Term Term::one() { return Term{}; }
Term Term::mul(std::vector<Term> factors) {
  Term t;
  t.kind = Kind::Mul;
  t.args = std::move(factors);
  return t;
}
Term Term::inv(Term x) {
  Term t;
  t.kind = Kind::Inv;
  t.args.push_back(std::move(x));
  return t;
}

Formula Formula::truth() { return Formula{}; }
Formula Formula::falsity() {
  Formula f;
  f.kind = Kind::False;
  return f;
}
Formula Formula::eq(Term l, Term r) {
  Formula f;
  f.kind = Kind::Eq;
  f.terms = {std::move(l), std::move(r)};
  return f;
}
Formula Formula::neq(Term l, Term r) {
  Formula f = eq(std::move(l), std::move(r));
  f.kind = Kind::Neq;
  return f;
}
Formula Formula::negation(Formula x) {
  Formula f;
  f.kind = Kind::Not;
  f.args.push_back(std::move(x));
  return f;
}
Formula Formula::conj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::And;
  f.args = std::move(fs);
  return f;
}
Formula Formula::disj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::Or;
  f.args = std::move(fs);
  return f;
}
Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Implies;
  f.args = {std::move(a), std::move(b)};
  return f;
}
Formula Formula::exists(std::string v, Formula x) {
  Formula f;
  f.kind = Kind::Exists;
  f.var = std::move(v);
  f.args.push_back(std::move(x));
  return f;
}
Formula Formula::forall(std::string v, Formula x) {
  Formula f = exists(std::move(v), std::move(x));
  f.kind = Kind::Forall;
  return f;
}

Term comm(Term t, Term u) { return Term::mul({Term::inv(t), Term::inv(u), t, u}); }
Term conjugate_term(Term t, Term u) { return Term::mul({Term::inv(u), t, u}); }
Term power_term(const Term& t, int k) {
  if (k == 0) return Term::one();
  Term base = k < 0 ? Term::inv(t) : t;
  if (k == 1 || k == -1) return base;
  std::vector<Term> fs(static_cast<std::size_t>(k < 0 ? -k : k), base);
  return Term::mul(std::move(fs));
}

// ---------------------------------------------------------------- reader

namespace {

struct Node {
  enum class Kind { Atom, List, Bracket } kind = Kind::Atom;
  std::string text;
  std::vector<Node> kids;
  std::size_t pos = 0;  // 1-based
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Node read_all() {
    Node n = read();
    skip();
    if (i_ < s_.size()) throw ParseError("trailing input", i_ + 1);
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  Node read() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_ + 1);
    Node n;
    n.pos = i_ + 1;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      n.kind = Node::Kind::List;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_ + 1);
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        n.kids.push_back(read());
      }
      return n;
    }
    if (c == ')') throw ParseError("unexpected ')'", i_ + 1);
    if (c == ']') throw ParseError("unexpected ']'", i_ + 1);
    if (c == '[') {
      ++i_;
      n.kind = Node::Kind::Bracket;
      std::size_t start = i_;
      while (i_ < s_.size() && s_[i_] != ']') {
        if (s_[i_] == '[' || s_[i_] == '(' || s_[i_] == ')') throw ParseError("bad character in word literal", i_ + 1);
        ++i_;
      }
      if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_ + 1);
      n.text = std::string(s_.substr(start, i_ - start));
      n.pos = start + 1;
      ++i_;
      return n;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != '[' && s_[i_] != ']' && s_[i_] != ';')
      ++i_;
    n.text = std::string(s_.substr(start, i_ - start));
    return n;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Builder {
 public:
  explicit Builder(const CommutationGraph& g) : g_(g) {}

  Formula formula(const Node& n) {
    if (n.kind == Node::Kind::Atom) {
      if (n.text == "true") return Formula::truth();
      if (n.text == "false") return Formula::falsity();
      throw ParseError("expected a formula, got '" + n.text + "'", n.pos);
    }
    if (n.kind != Node::Kind::List || n.kids.empty()) throw ParseError("expected a formula", n.pos);
    const Node& head = n.kids[0];
    if (head.kind != Node::Kind::Atom) throw ParseError("expected an operator", head.pos);
    const std::string& op = head.text;
    auto arity = [&](std::size_t k) {
      if (n.kids.size() != k + 1)
        throw ParseError("'" + op + "' expects " + std::to_string(k) + " argument(s)", n.pos);
    };
    if (op == "=" || op == "!=") {
      arity(2);
      Term l = term(n.kids[1]), r = term(n.kids[2]);
      return op == "=" ? Formula::eq(std::move(l), std::move(r)) : Formula::neq(std::move(l), std::move(r));
    }
    if (op == "not") {
      arity(1);
      return Formula::negation(formula(n.kids[1]));
    }
    if (op == "and" || op == "or") {
      std::vector<Formula> fs;
      for (std::size_t i = 1; i < n.kids.size(); ++i) fs.push_back(formula(n.kids[i]));
      return op == "and" ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
    }
    if (op == "implies") {
      arity(2);
      return Formula::implies(formula(n.kids[1]), formula(n.kids[2]));
    }
    if (op == "forall" || op == "exists") {
      arity(2);
      const Node& v = n.kids[1];
      if (v.kind != Node::Kind::Atom || v.text.empty() || v.text == "?")
        throw ParseError("expected a variable after '" + op + "'", v.pos);
      std::string name = v.text[0] == '?' ? v.text.substr(1) : v.text;
      if (!valid_var_name(name)) throw ParseError("bad variable name '" + v.text + "'", v.pos);
      bound_.push_back(name);
      Formula body = formula(n.kids[2]);
      bound_.pop_back();
      return op == "forall" ? Formula::forall(name, std::move(body)) : Formula::exists(name, std::move(body));
    }
    throw ParseError("unknown operator '" + op + "'", head.pos);
  }

  Term term(const Node& n) {
    if (n.kind == Node::Kind::Bracket) {
      try {
        return Term::constant(parse_word(n.text, g_));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), n.pos + (e.position() ? e.position() - 1 : 0));
      }
    }
    if (n.kind == Node::Kind::Atom) {
      const std::string& t = n.text;
      if (t == "1") return Term::one();
      if (t[0] == '?') {
        std::string name = t.substr(1);
        if (!valid_var_name(name)) throw ParseError("bad variable name '" + t + "'", n.pos);
        return Term::variable(name);
      }
      if (std::find(bound_.begin(), bound_.end(), t) != bound_.end()) return Term::variable(t);
      if (t.find('^') != std::string::npos) {
        try {
          return Term::constant(parse_word(t, g_));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), n.pos);
        }
      }
      if (auto gen = g_.find(t)) return Term::constant(letter_word(*gen));
      throw ParseError("unbound variable '" + t + "'", n.pos);
    }
    if (n.kids.empty()) throw ParseError("empty term", n.pos);
    const Node& head = n.kids[0];
    if (head.kind != Node::Kind::Atom) throw ParseError("expected a term operator", head.pos);
    const std::string& op = head.text;
    auto arity = [&](std::size_t k) {
      if (n.kids.size() != k + 1)
        throw ParseError("'" + op + "' expects " + std::to_string(k) + " argument(s)", n.pos);
    };
    if (op == "*") {
      if (n.kids.size() < 2) throw ParseError("'*' expects at least one argument", n.pos);
      std::vector<Term> fs;
      for (std::size_t i = 1; i < n.kids.size(); ++i) fs.push_back(term(n.kids[i]));
      return Term::mul(std::move(fs));
    }
    if (op == "inv") {
      arity(1);
      return Term::inv(term(n.kids[1]));
    }
    if (op == "comm") {
      arity(2);
      return comm(term(n.kids[1]), term(n.kids[2]));
    }
    if (op == "conj") {
      arity(2);
      return conjugate_term(term(n.kids[1]), term(n.kids[2]));
    }
    throw ParseError("unknown term operator '" + op + "'", head.pos);
  }

  static bool valid_var_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == '?' || c == '(' || c == ')' || c == '[' ||
          c == ']')
        return false;
    return true;
  }

 private:
  const CommutationGraph& g_;
  std::vector<std::string> bound_;
};

void print_term_to(std::ostream& os, const Term& t, const CommutationGraph& g) {
  switch (t.kind) {
    case Term::Kind::Var:
      os << '?' << t.var;
      break;
    case Term::Kind::One:
      os << '1';
      break;
    case Term::Kind::Const:
      if (t.word.size() == 1 && !t.word[0].inv)
        os << g.name(t.word[0].gen);
      else
        os << '[' << format_word(t.word, g) << ']';
      break;
    case Term::Kind::Inv:
      os << "(inv ";
      print_term_to(os, t.args[0], g);
      os << ')';
      break;
    case Term::Kind::Mul:
      os << "(*";
      for (auto& a : t.args) {
        os << ' ';
        print_term_to(os, a, g);
      }
      os << ')';
      break;
  }
}

void print_formula_to(std::ostream& os, const Formula& f, const CommutationGraph& g) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
      os << "true";
      return;
    case K::False:
      os << "false";
      return;
    case K::Eq:
    case K::Neq:
      os << (f.kind == K::Eq ? "(= " : "(!= ");
      print_term_to(os, f.terms[0], g);
      os << ' ';
      print_term_to(os, f.terms[1], g);
      os << ')';
      return;
    case K::Not:
    case K::And:
    case K::Or:
    case K::Implies: {
      const char* op = f.kind == K::Not ? "not" : f.kind == K::And ? "and" : f.kind == K::Or ? "or" : "implies";
      os << '(' << op;
      for (auto& a : f.args) {
        os << ' ';
        print_formula_to(os, a, g);
      }
      os << ')';
      return;
    }
    case K::Exists:
    case K::Forall:
      os << (f.kind == K::Exists ? "(exists ?" : "(forall ?") << f.var << ' ';
      print_formula_to(os, f.args[0], g);
      os << ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const CommutationGraph& g) {
  Node n = Reader(text).read_all();
  return Builder(g).formula(n);
}

Term parse_term(std::string_view text, const CommutationGraph& g) {
  Node n = Reader(text).read_all();
  return Builder(g).term(n);
}

std::string print_formula(const Formula& f, const CommutationGraph& g) {
  std::ostringstream os;
  print_formula_to(os, f, g);
  return os.str();
}

std::string print_term(const Term& t, const CommutationGraph& g) {
  std::ostringstream os;
  print_term_to(os, t, g);
  return os.str();
}

// ---------------------------------------------------------------- variables

namespace {

void term_vars_into(const Term& t, std::vector<std::string>& out, const std::vector<std::string>& bound) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(bound.begin(), bound.end(), t.var) == bound.end() &&
        std::find(out.begin(), out.end(), t.var) == out.end())
      out.push_back(t.var);
    return;
  }
  for (auto& a : t.args) term_vars_into(a, out, bound);
}

void free_vars_into(const Formula& f, std::vector<std::string>& out, std::vector<std::string>& bound) {
  for (auto& t : f.terms) term_vars_into(t, out, bound);
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
    bound.push_back(f.var);
    free_vars_into(f.args[0], out, bound);
    bound.pop_back();
    return;
  }
  for (auto& a : f.args) free_vars_into(a, out, bound);
}

void term_names(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.var);
  for (auto& a : t.args) term_names(a, out);
}

}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> out, bound;
  free_vars_into(f, out, bound);
  return out;
}

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> out;
  term_vars_into(t, out, {});
  return out;
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (auto& t : f.terms) term_names(t, out);
  if (!f.var.empty()) out.insert(f.var);
  for (auto& a : f.args) collect_names(a, out);
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) return false;
  return std::all_of(f.args.begin(), f.args.end(), [](const Formula& a) { return is_quantifier_free(a); });
}

bool is_positive(const Formula& f) {
  if (f.kind == Formula::Kind::Not || f.kind == Formula::Kind::Implies || f.kind == Formula::Kind::Neq) return false;
  return std::all_of(f.args.begin(), f.args.end(), [](const Formula& a) { return is_positive(a); });
}

int quantifier_depth(const Formula& f) {
  int d = 0;
  for (auto& a : f.args) d = std::max(d, quantifier_depth(a));
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) ++d;
  return d;
}

std::string FreshNames::next() {
  for (;;) {
    std::string n = prefix_ + std::to_string(++counter_);
    if (used_.insert(n).second) return n;
  }
}

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.kind == Term::Kind::Var) {
    auto it = sub.find(t.var);
    return it == sub.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute(a, sub);
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sub, FreshNames& fresh) {
  Formula out = f;
  for (auto& t : out.terms) t = substitute(t, sub);
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
    // the bound name must not capture a variable of a substituted term, and hides itself
    std::map<std::string, Term> inner = sub;
    inner.erase(f.var);
    bool clash = false;
    for (auto& [k, v] : inner)
      for (auto& n : term_vars(v))
        if (n == f.var) clash = true;
    if (clash) {
      std::string nv = fresh.next();
      inner[f.var] = Term::variable(nv);
      out.var = nv;
    }
    out.args[0] = substitute(f.args[0], inner, fresh);
    return out;
  }
  for (auto& a : out.args) a = substitute(a, sub, fresh);
  return out;
}

Formula rename_bound(const Formula& f, FreshNames& fresh) {
  Formula out = f;
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) {
    std::string nv = fresh.next();
    Formula body = substitute(f.args[0], {{f.var, Term::variable(nv)}}, fresh);
    out.var = nv;
    out.args[0] = rename_bound(body, fresh);
    return out;
  }
  for (auto& a : out.args) a = rename_bound(a, fresh);
  return out;
}

// ---------------------------------------------------------------- rows

namespace {

void term_letters(const Term& t, bool inv, std::vector<SysLetter>& out, std::vector<std::string>& vars) {
  switch (t.kind) {
    case Term::Kind::One:
      return;
    case Term::Kind::Var: {
      auto it = std::find(vars.begin(), vars.end(), t.var);
      int idx = static_cast<int>(it - vars.begin());
      if (it == vars.end()) vars.push_back(t.var);
      out.push_back({true, idx, inv});
      return;
    }
    case Term::Kind::Const:
      if (!inv)
        for (auto l : t.word) out.push_back({false, l.gen, l.inv});
      else
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) out.push_back({false, it->gen, !it->inv});
      return;
    case Term::Kind::Inv:
      term_letters(t.args[0], !inv, out, vars);
      return;
    case Term::Kind::Mul:
      if (!inv)
        for (auto& a : t.args) term_letters(a, false, out, vars);
      else
        for (auto it = t.args.rbegin(); it != t.args.rend(); ++it) term_letters(*it, true, out, vars);
      return;
  }
}

}  // namespace

Row term_to_row(const Term& t, std::vector<std::string>& vars) {
  Row r;
  term_letters(t, false, r.letters, vars);
  return r;
}

Term row_to_term(const Row& r, const std::vector<std::string>& vars) {
  std::vector<Term> fs;
  Word run;
  auto flush = [&] {
    if (!run.empty()) fs.push_back(Term::constant(run));
    run.clear();
  };
  for (auto l : r.letters) {
    if (!l.is_var) {
      run.push_back({l.index, l.inv});
      continue;
    }
    flush();
    Term v = Term::variable(vars.at(l.index));
    fs.push_back(l.inv ? Term::inv(v) : v);
  }
  flush();
  if (fs.empty()) return Term::one();
  if (fs.size() == 1) return fs[0];
  return Term::mul(std::move(fs));
}

Row atom_to_row(const Formula& atom, std::vector<std::string>& vars) {
  if (atom.kind != Formula::Kind::Eq && atom.kind != Formula::Kind::Neq)
    throw DomainError("expected an equation or inequation");
  Row r = term_to_row(Term::mul({atom.terms[0], Term::inv(atom.terms[1])}), vars);
  r.equation = atom.kind == Formula::Kind::Eq;
  return r;
}

System formula_to_system(const Formula& f, std::vector<std::string> vars) {
  System s;
  s.vars = std::move(vars);
  std::function<void(const Formula&)> go = [&](const Formula& x) {
    switch (x.kind) {
      case Formula::Kind::True:
        return;
      case Formula::Kind::And:
        for (auto& a : x.args) go(a);
        return;
      case Formula::Kind::Eq:
      case Formula::Kind::Neq:
        s.rows.push_back(atom_to_row(x, s.vars));
        return;
      case Formula::Kind::Not:
        if (x.args[0].kind == Formula::Kind::Eq || x.args[0].kind == Formula::Kind::Neq) {
          Row r = atom_to_row(x.args[0], s.vars);
          r.equation = !r.equation;
          s.rows.push_back(r);
          return;
        }
        break;
      default:
        break;
    }
    throw DomainError("not a conjunction of equations and inequations");
  };
  go(f);
  return s;
}

Formula nnf(const Formula& f) {
  using K = Formula::Kind;
  std::function<Formula(const Formula&, bool)> go = [&](const Formula& x, bool neg) -> Formula {
    switch (x.kind) {
      case K::True:
        return neg ? Formula::falsity() : Formula::truth();
      case K::False:
        return neg ? Formula::truth() : Formula::falsity();
      case K::Eq:
      case K::Neq: {
        Formula a = x;
        if (neg) a.kind = x.kind == K::Eq ? K::Neq : K::Eq;
        return a;
      }
      case K::Not:
        return go(x.args[0], !neg);
      case K::And:
      case K::Or: {
        std::vector<Formula> fs;
        for (auto& a : x.args) fs.push_back(go(a, neg));
        bool to_and = (x.kind == K::And) != neg;
        return to_and ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
      }
      case K::Implies: {
        std::vector<Formula> fs{go(x.args[0], !neg), go(x.args[1], neg)};
        return neg ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
      }
      case K::Exists:
      case K::Forall: {
        bool ex = (x.kind == K::Exists) != neg;
        Formula body = go(x.args[0], neg);
        return ex ? Formula::exists(x.var, std::move(body)) : Formula::forall(x.var, std::move(body));
      }
    }
    return x;
  };
  return go(f, false);
}

}  // namespace pcg
