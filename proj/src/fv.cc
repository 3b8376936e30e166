#include "pcg/fv.h"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

#include "pcg/errors.h"
#include "pcg/solver.h"

namespace pcg {

namespace {

using Pair = std::pair<Formula, Formula>;
using K = Formula::Kind;

void term_key(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::One:
      out += '1';
      return;
    case Term::Kind::Var:
      out += '?' + t.var + ' ';
      return;
    case Term::Kind::Const:
      out += '[';
      for (auto l : t.word) out += std::to_string(l.inv ? -l.gen - 1 : l.gen) + ',';
      out += ']';
      return;
    case Term::Kind::Inv:
    case Term::Kind::Mul:
      out += t.kind == Term::Kind::Inv ? "(i " : "(* ";
      for (auto& a : t.args) term_key(a, out);
      out += ')';
      return;
  }
}

void formula_key(const Formula& f, std::string& out) {
  out += '(' + std::to_string(static_cast<int>(f.kind)) + f.var + ' ';
  for (auto& t : f.terms) term_key(t, out);
  for (auto& a : f.args) formula_key(a, out);
  out += ')';
}

std::string pair_key(const Pair& p) {
  std::string k;
  formula_key(p.first, k);
  k += '|';
  formula_key(p.second, k);
  return k;
}

bool mentions(const Term& t, const std::string& v) {
  if (t.kind == Term::Kind::Var) return t.var == v;
  for (auto& a : t.args)
    if (mentions(a, v)) return true;
  return false;
}

bool free_in(const Formula& f, const std::string& v) {
  if (f.kind == K::Exists || f.kind == K::Forall) return f.var != v && free_in(f.args[0], v);
  for (auto& t : f.terms)
    if (mentions(t, v)) return true;
  for (auto& a : f.args)
    if (free_in(a, v)) return true;
  return false;
}

class Family {
 public:
  explicit Family(std::size_t cap) : cap_(cap) {}
  void add(Formula a, Formula b) {
    a = simplify(a);
    if (a.kind == K::False) return;
    b = simplify(b);
    if (b.kind == K::False) return;
    Pair p{std::move(a), std::move(b)};
    if (!seen_.insert(pair_key(p)).second) return;
    if (out_.size() >= cap_) throw LimitExceeded("family exceeds " + std::to_string(cap_) + " pairs");
    out_.push_back(std::move(p));
  }
  std::vector<Pair> take() { return std::move(out_); }

 private:
  std::size_t cap_;
  std::unordered_set<std::string> seen_;
  std::vector<Pair> out_;
};

// Component of a term in one factor: constant letters outside the factor are dropped.
Term project(const Term& t, int split, bool second) {
  switch (t.kind) {
    case Term::Kind::Const: {
      Word w;
      for (auto l : t.word) {
        if ((l.gen >= split) != second) continue;
        w.push_back(second ? Letter{l.gen - split, l.inv} : l);
      }
      return w.empty() ? Term::one() : Term::constant(std::move(w));
    }
    case Term::Kind::Inv:
    case Term::Kind::Mul: {
      Term r = t;
      for (auto& a : r.args) a = project(a, split, second);
      return r;
    }
    default:
      return t;
  }
}

Formula project_atom(const Formula& atom, int split, bool second) {
  return Formula::eq(project(atom.terms[0], split, second), project(atom.terms[1], split, second));
}

void check_index(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit)
    throw LimitExceeded(std::string(what) + " over an index set of size " + std::to_string(n) + " (guard " +
                        std::to_string(limit) + ")");
}

std::vector<Pair> negate(const std::vector<Pair>& fam, const FvOptions& opt) {
  check_index(fam.size(), opt.max_index, "negation");
  Family out(opt.max_pairs);
  std::size_t n = fam.size();
  for (unsigned long long J = 0; J < (1ull << n); ++J) {
    std::vector<Formula> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      if (J >> i & 1)
        a.push_back(Formula::negation(fam[i].first));
      else
        b.push_back(Formula::negation(fam[i].second));
    }
    out.add(Formula::conj(std::move(a)), Formula::conj(std::move(b)));
  }
  return out.take();
}

std::vector<Pair> product(const std::vector<Pair>& x, const std::vector<Pair>& y, const FvOptions& opt) {
  Family out(opt.max_pairs);
  for (auto& p : x)
    for (auto& q : y) out.add(Formula::conj({p.first, q.first}), Formula::conj({p.second, q.second}));
  return out.take();
}

std::vector<Pair> quantify(const std::vector<Pair>& fam, K kind, const std::string& v, const FvOptions& opt) {
  Family out(opt.max_pairs);
  auto q = [&](const Formula& f) { return kind == K::Exists ? Formula::exists(v, f) : Formula::forall(v, f); };
  for (auto& p : fam) out.add(q(p.first), q(p.second));
  return out.take();
}

// Double powerset transform. J' runs over the subsets of P(I) that contain I and miss the
// empty set (the others give a false component). wrap is applied to each disjunction.
template <class Wrap>
std::vector<Pair> double_powerset(const std::vector<Pair>& fam, const FvOptions& opt, Wrap wrap) {
  std::size_t n = fam.size();
  check_index(n, opt.max_double_index, "double powerset");
  if (n == 0) return {};
  unsigned long long full = (1ull << n) - 1;
  std::vector<unsigned long long> middle;
  for (unsigned long long J = 1; J < full; ++J) middle.push_back(J);
  if (middle.size() >= 63 || (1ull << middle.size()) > opt.max_pairs)
    throw LimitExceeded("double powerset would produce 2^" + std::to_string(middle.size()) + " pairs");
  auto left = [&](unsigned long long J) {
    std::vector<Formula> d;
    for (std::size_t j = 0; j < n; ++j)
      if (J >> j & 1) d.push_back(fam[j].first);
    return wrap(Formula::disj(std::move(d)));
  };
  auto right = [&](unsigned long long J) {
    std::vector<Formula> d;
    for (std::size_t i = 0; i < n; ++i)
      if (!(J >> i & 1)) d.push_back(fam[i].second);
    return wrap(Formula::disj(std::move(d)));
  };
  Family out(opt.max_pairs);
  for (unsigned long long M = 0; M < (1ull << middle.size()); ++M) {
    std::vector<Formula> a{left(full)}, b{right(0)};
    for (std::size_t k = 0; k < middle.size(); ++k) {
      if (M >> k & 1)
        a.push_back(left(middle[k]));
      else
        b.push_back(right(middle[k]));
    }
    out.add(Formula::conj(std::move(a)), Formula::conj(std::move(b)));
  }
  return out.take();
}

std::vector<Pair> split(const Formula& f, int r, bool positive, const FvOptions& opt) {
  switch (f.kind) {
    case K::True:
      return {{Formula::truth(), Formula::truth()}};
    case K::False:
      return {};
    case K::Eq:
      return {{simplify(project_atom(f, r, false)), simplify(project_atom(f, r, true))}};
    case K::Neq:
      return negate(split(Formula::eq(f.terms[0], f.terms[1]), r, positive, opt), opt);
    case K::Not:
      return negate(split(f.args[0], r, positive, opt), opt);
    case K::Implies:
      return split(Formula::disj({Formula::negation(f.args[0]), f.args[1]}), r, positive, opt);
    case K::Or: {
      Family out(opt.max_pairs);
      for (auto& a : f.args)
        for (auto& p : split(a, r, positive, opt)) out.add(p.first, p.second);
      return out.take();
    }
    case K::And: {
      std::vector<Pair> acc{{Formula::truth(), Formula::truth()}};
      bool first = true;
      for (auto& a : f.args) {
        auto part = split(a, r, positive, opt);
        if (positive) part = double_powerset(part, opt, [](Formula d) { return d; });
        acc = first ? part : product(acc, part, opt);
        first = false;
      }
      return acc;
    }
    case K::Exists:
      return quantify(split(f.args[0], r, positive, opt), K::Exists, f.var, opt);
    case K::Forall: {
      if (positive) {
        auto inner = split(f.args[0], r, true, opt);
        const std::string& v = f.var;
        return double_powerset(inner, opt, [&](Formula d) { return Formula::forall(v, std::move(d)); });
      }
      Formula dual = Formula::negation(Formula::exists(f.var, Formula::negation(f.args[0])));
      return split(dual, r, false, opt);
    }
  }
  return {};
}

}  // namespace

Formula simplify(const Formula& f) {
  switch (f.kind) {
    case K::Eq:
      return f.terms[0] == f.terms[1] ? Formula::truth() : f;
    case K::Neq:
      return f.terms[0] == f.terms[1] ? Formula::falsity() : f;
    case K::Not: {
      Formula a = simplify(f.args[0]);
      switch (a.kind) {
        case K::True: return Formula::falsity();
        case K::False: return Formula::truth();
        case K::Not: return a.args[0];
        case K::Eq: return Formula::neq(a.terms[0], a.terms[1]);
        case K::Neq: return Formula::eq(a.terms[0], a.terms[1]);
        default: return Formula::negation(std::move(a));
      }
    }
    case K::And:
    case K::Or: {
      K absorbing = f.kind == K::And ? K::False : K::True;
      K unit = f.kind == K::And ? K::True : K::False;
      std::vector<Formula> parts;
      std::unordered_set<std::string> seen;
      auto push = [&](Formula g) {
        std::string k;
        formula_key(g, k);
        if (seen.insert(k).second) parts.push_back(std::move(g));
      };
      for (auto& a : f.args) {
        Formula s = simplify(a);
        if (s.kind == absorbing) return s;
        if (s.kind == unit) continue;
        if (s.kind == f.kind)
          for (auto& inner : s.args) push(inner);
        else
          push(std::move(s));
      }
      if (parts.empty()) return f.kind == K::And ? Formula::truth() : Formula::falsity();
      if (parts.size() == 1) return parts[0];
      return f.kind == K::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case K::Implies: {
      Formula a = simplify(f.args[0]), b = simplify(f.args[1]);
      if (a.kind == K::False || b.kind == K::True) return Formula::truth();
      if (a.kind == K::True) return b;
      if (b.kind == K::False) return simplify(Formula::negation(a));
      return Formula::implies(std::move(a), std::move(b));
    }
    case K::Exists:
    case K::Forall: {
      // domains are nonempty, so vacuous quantifiers go
      Formula body = simplify(f.args[0]);
      if (body.kind == K::True || body.kind == K::False || !free_in(body, f.var)) return body;
      return f.kind == K::Exists ? Formula::exists(f.var, std::move(body)) : Formula::forall(f.var, std::move(body));
    }
    default:
      return f;
  }
}

FormulaPairFamily fv_split(const Formula& phi, int split_rank, const FvOptions& opt) {
  return {split(simplify(phi), split_rank, false, opt)};
}

FormulaPairFamily fv_split_positive(const Formula& phi, int split_rank, const FvOptions& opt) {
  if (!is_positive(phi)) throw DomainError("formula is not positive");
  return {split(simplify(phi), split_rank, true, opt)};
}

BallStructure product_structure(const BallStructure& s1, const BallStructure& s2) {
  BallStructure p{direct_product(s1.graph, s2.graph), {}, -1};
  int r = s1.graph.rank();
  for (auto& a : s1.domain)
    for (auto& b : s2.domain) {
      Word w = a;
      for (auto l : b) w.push_back({l.gen + r, l.inv});
      p.domain.push_back(std::move(w));
    }
  return p;
}

bool eval_family(const BallStructure& s1, const BallStructure& s2, const FormulaPairFamily& fam,
                 const std::vector<std::string>& vars, const std::vector<Word>& first, const std::vector<Word>& second) {
  Env e1, e2;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    e1.emplace_back(vars[i], first.at(i));
    e2.emplace_back(vars[i], second.at(i));
  }
  for (auto& [a, b] : fam.pairs)
    if (eval_ball(s1, a, e1) && eval_ball(s2, b, e2)) return true;
  return false;
}

namespace {

// table[pair][assignment index] over one factor, assignments in mixed radix (last variable fastest)
std::vector<std::vector<char>> factor_tables(const BallStructure& s, const std::vector<Formula>& fs,
                                             const std::vector<std::string>& vars, unsigned workers) {
  std::size_t d = s.domain.size(), total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    total *= d;
    if (total > 50'000'000) throw LimitExceeded("factor assignment table too large");
  }
  std::vector<std::vector<char>> out(fs.size(), std::vector<char>(total));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next++) < fs.size();) {
      Env env;
      for (auto& v : vars) env.emplace_back(v, Word{});
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = vars.size(); i-- > 0;) {
          env[i].second = s.domain[rest % d];
          rest /= d;
        }
        out[k][idx] = eval_ball(s, fs[k], env);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

FvCheckResult fv_check(const Formula& phi, const BallStructure& s1, const BallStructure& s2, bool positive,
                       std::size_t sample, unsigned long long seed, const FvOptions& opt) {
  FvCheckResult res;
  int r = s1.graph.rank();
  auto fam = positive ? fv_split_positive(phi, r, opt) : fv_split(phi, r, opt);
  res.family_size = fam.pairs.size();
  auto vars = free_vars(phi);
  std::size_t k = vars.size(), d1 = s1.domain.size(), d2 = s2.domain.size();
  if (d1 == 0 || d2 == 0) throw DomainError("empty factor domain");
  unsigned workers = worker_count(opt.threads);

  std::vector<Formula> left, right;
  for (auto& [a, b] : fam.pairs) {
    left.push_back(a);
    right.push_back(b);
  }
  auto t1 = factor_tables(s1, left, vars, workers);
  auto t2 = factor_tables(s2, right, vars, workers);
  BallStructure prod = product_structure(s1, s2);

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= d1 * d2;
  std::vector<std::size_t> order;
  if (sample > 0 && sample < total) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    std::unordered_set<std::size_t> chosen;
    while (chosen.size() < sample) chosen.insert(pick(rng));
    order.assign(chosen.begin(), chosen.end());
    std::sort(order.begin(), order.end());
  } else {
    order.resize(total);
    std::iota(order.begin(), order.end(), 0);
  }
  res.assignments = order.size();

  std::atomic<std::size_t> next{0};
  std::vector<std::size_t> bad(workers, order.size());
  auto work = [&](unsigned w) {
    Env env;
    for (auto& v : vars) env.emplace_back(v, Word{});
    for (std::size_t n; (n = next++) < order.size();) {
      if (n > bad[w]) break;
      std::size_t rest = order[n], i1 = 0, i2 = 0, m1 = 1, m2 = 1;
      for (std::size_t i = k; i-- > 0;) {
        std::size_t c = rest % (d1 * d2);
        rest /= d1 * d2;
        env[i].second = prod.domain[c];
        i1 += (c / d2) * m1;
        i2 += (c % d2) * m2;
        m1 *= d1;
        m2 *= d2;
      }
      bool direct = eval_ball(prod, phi, env);
      bool split_value = false;
      for (std::size_t p = 0; p < fam.pairs.size() && !split_value; ++p) split_value = t1[p][i1] && t2[p][i2];
      if (direct != split_value) bad[w] = std::min(bad[w], n);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();

  std::size_t first_bad = *std::min_element(bad.begin(), bad.end());
  if (first_bad < order.size()) {
    res.agree = false;
    std::size_t rest = order[first_bad];
    res.counterexample.assign(k, Word{});
    for (std::size_t i = k; i-- > 0;) {
      res.counterexample[i] = prod.domain[rest % (d1 * d2)];
      rest /= d1 * d2;
    }
  }
  return res;
}

}  // namespace pcg
