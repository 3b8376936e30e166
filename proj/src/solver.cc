#include "pcg/solver.h"

#include <algorithm>
#include <functional>
#include <thread>

#include "pcg/errors.h"
#include "pcg/trace.h"

namespace pcg {

long long tuple_count(std::size_t domain, std::size_t n) {
  long double t = 1;
  for (std::size_t i = 0; i < n; ++i) t *= static_cast<long double>(domain);
  return t > 9e18L ? static_cast<long long>(9e18) : static_cast<long long>(t);
}

void check_guard(std::size_t domain, std::size_t n, long long max_checks) {
  if (tuple_count(domain, n) > max_checks)
    throw LimitExceeded("search space " + std::to_string(domain) + "^" + std::to_string(n) +
                        " exceeds the guard of " + std::to_string(max_checks) + " checks");
}

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

namespace {

// Rows bucketed by the largest variable index they mention (-1: constant rows).
struct Staged {
  std::vector<std::vector<const Row*>> at_depth;  // index d+1
  explicit Staged(const System& s, std::size_t nvars) : at_depth(nvars + 1) {
    for (auto& r : s.rows) {
      int d = -1;
      for (auto l : r.letters)
        if (l.is_var) d = std::max(d, l.index);
      at_depth[d + 1].push_back(&r);
    }
  }
  bool ok(const CommutationGraph& g, int depth, const Assignment& a) const {
    for (auto* r : at_depth[depth + 1])
      if (!row_holds(g, *r, a)) return false;
    return true;
  }
};

std::vector<std::vector<Word>> domains_for(const CommutationGraph& g, std::size_t n, int radius,
                                           const Constraint& c) {
  std::vector<Word> ball = enumerate_geodesics(g, radius);
  std::vector<std::vector<Word>> d(n, ball);
  for (std::size_t i = 0; i < n && i < c.size(); ++i)
    if (c[i]) {
      d[i].clear();
      for (auto& w : *c[i]) d[i].push_back(normalize(g, w));
    }
  return d;
}

void check_vars(const System& s) {
  for (auto& r : s.rows)
    for (auto l : r.letters)
      if (l.is_var && (l.index < 0 || l.index >= static_cast<int>(s.vars.size())))
        throw DomainError("row refers to an undeclared variable");
}

// DFS over the tuple space below a fixed first coordinate.
template <class Leaf>
void descend(const CommutationGraph& g, const std::vector<std::vector<Word>>& dom, const Staged& st,
             Assignment& a, std::size_t depth, Leaf& leaf, bool& stop) {
  if (stop) return;
  if (depth == dom.size()) {
    if (!leaf(a)) stop = true;
    return;
  }
  for (auto& v : dom[depth]) {
    a[depth] = v;
    if (!st.ok(g, static_cast<int>(depth), a)) continue;
    descend(g, dom, st, a, depth + 1, leaf, stop);
    if (stop) return;
  }
}

}  // namespace

BoundedVariety solve_bounded(const CommutationGraph& g, const System& s, int radius, const SolverOptions& opt) {
  check_vars(s);
  const std::size_t n = s.vars.size();
  auto dom = domains_for(g, n, radius, {});
  check_guard(dom.empty() ? 1 : dom[0].size(), n, opt.max_checks);
  Staged st(s, n);
  BoundedVariety out{s.vars, radius, {}};
  Assignment empty;
  if (!st.ok(g, -1, empty)) return out;
  if (n == 0) {
    out.solutions.push_back({});
    return out;
  }
  const std::size_t first = dom[0].size();
  std::vector<std::vector<Assignment>> per_first(first);
  unsigned workers = std::min<unsigned>(worker_count(opt.threads), static_cast<unsigned>(first));
  auto work = [&](unsigned id) {
    Assignment a(n);
    for (std::size_t i = id; i < first; i += workers) {
      a[0] = dom[0][i];
      if (!st.ok(g, 0, a)) continue;
      bool stop = false;
      auto leaf = [&](const Assignment& x) {
        per_first[i].push_back(x);
        return true;
      };
      descend(g, dom, st, a, 1, leaf, stop);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& v : per_first)
    for (auto& x : v) out.solutions.push_back(std::move(x));
  return out;
}

VarietyComparison verify_variety_eq(const CommutationGraph& g, const System& s1, const System& s2, int radius,
                                    const SolverOptions& opt) {
  if (s1.vars != s2.vars) throw DomainError("verify_variety_eq: variable lists differ");
  check_vars(s1);
  check_vars(s2);
  const std::size_t n = s1.vars.size();
  auto dom = domains_for(g, n, radius, {});
  check_guard(dom.empty() ? 1 : dom[0].size(), n, opt.max_checks);
  VarietyComparison res;
  if (n == 0) {
    bool a = system_holds(g, s1, {}), b = system_holds(g, s2, {});
    if (a != b) res = {false, Assignment{}, a};
    return res;
  }
  Staged st1(s1, n), st2(s2, n);
  const std::size_t first = dom[0].size();
  std::vector<std::optional<std::pair<Assignment, bool>>> found(first);
  unsigned workers = std::min<unsigned>(worker_count(opt.threads), static_cast<unsigned>(first));
  // explores tuples; prunes once both systems are already refuted
  std::function<bool(Assignment&, std::size_t, bool, bool, std::optional<std::pair<Assignment, bool>>&)> rec =
      [&](Assignment& a, std::size_t depth, bool ok1, bool ok2,
          std::optional<std::pair<Assignment, bool>>& slot) -> bool {
    int d = static_cast<int>(depth) - 1;
    ok1 = ok1 && st1.ok(g, d, a);
    ok2 = ok2 && st2.ok(g, d, a);
    if (!ok1 && !ok2) return true;
    if (depth == n) {
      if (ok1 != ok2) {
        slot = std::make_pair(a, ok1);
        return false;
      }
      return true;
    }
    for (auto& v : dom[depth]) {
      a[depth] = v;
      if (!rec(a, depth + 1, ok1, ok2, slot)) return false;
    }
    return true;
  };
  bool ok1c = st1.ok(g, -1, {}), ok2c = st2.ok(g, -1, {});
  auto work = [&](unsigned id) {
    Assignment a(n);
    for (std::size_t i = id; i < first; i += workers) {
      a[0] = dom[0][i];
      rec(a, 1, ok1c, ok2c, found[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& f : found)
    if (f) {
      res.equal = false;
      res.counterexample = f->first;
      res.counterexample_in_first = f->second;
      break;
    }
  return res;
}

std::optional<Assignment> search_assignment(const CommutationGraph& g, const System& s, int radius,
                                            const Constraint& constraint, const SolverOptions& opt) {
  check_vars(s);
  const std::size_t n = s.vars.size();
  auto dom = domains_for(g, n, radius, constraint);
  long long total = 1;
  for (auto& d : dom) {
    total = tuple_count(static_cast<std::size_t>(total), 1) * static_cast<long long>(d.size());
    if (total > opt.max_checks) throw LimitExceeded("search space exceeds the guard");
  }
  Staged st(s, n);
  Assignment a(n);
  if (!st.ok(g, -1, a)) return std::nullopt;
  std::optional<Assignment> hit;
  bool stop = false;
  auto leaf = [&](const Assignment& x) {
    hit = x;
    return false;
  };
  descend(g, dom, st, a, 0, leaf, stop);
  return hit;
}

}  // namespace pcg
