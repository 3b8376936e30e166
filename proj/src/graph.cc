#include "pcg/graph.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "pcg/errors.h"

namespace pcg {

bool valid_generator_name(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (c > 127 || std::isspace(c) || ch == '^' || ch == '1' || ch == '?' || ch == '(' || ch == ')' ||
        ch == '[' || ch == ']' || ch == '#' || ch == '|' || ch == '=' || ch == ',')
      return false;
    if (!std::isprint(c)) return false;
  }
  return true;
}

CommutationGraph::CommutationGraph(std::vector<std::string> generators,
                                   const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(generators)), adj_(names_.size() * names_.size(), 0) {
  std::set<std::string> seen;
  for (auto& n : names_)
    if (!seen.insert(n).second) throw ParseError("duplicate generator '" + n + "'");
  for (auto& [x, y] : edges) {
    auto i = find(x), j = find(y);
    if (!i) throw ParseError("unknown edge endpoint '" + x + "'");
    if (!j) throw ParseError("unknown edge endpoint '" + y + "'");
    if (*i == *j) throw ParseError("self-loop on '" + x + "'");
    adj_[*i * names_.size() + *j] = adj_[*j * names_.size() + *i] = 1;
  }
}

CommutationGraph::CommutationGraph(std::vector<std::string> generators,
                                   const std::vector<std::pair<Gen, Gen>>& edges)
    : names_(std::move(generators)), adj_(names_.size() * names_.size(), 0) {
  std::set<std::string> seen;
  for (auto& n : names_)
    if (!seen.insert(n).second) throw ParseError("duplicate generator '" + n + "'");
  int n = rank();
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError("edge endpoint out of range");
    if (i == j) throw ParseError("self-loop on '" + names_[i] + "'");
    adj_[i * n + j] = adj_[j * n + i] = 1;
  }
}

std::optional<Gen> CommutationGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Gen>(i);
  return std::nullopt;
}

std::vector<std::pair<Gen, Gen>> CommutationGraph::edges() const {
  std::vector<std::pair<Gen, Gen>> out;
  for (Gen i = 0; i < rank(); ++i)
    for (Gen j = i + 1; j < rank(); ++j)
      if (commute(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<Gen> CommutationGraph::neighbours(Gen g) const {
  std::vector<Gen> out;
  for (Gen j = 0; j < rank(); ++j)
    if (commute(g, j)) out.push_back(j);
  return out;
}

CommutationGraph CommutationGraph::induced(const std::vector<Gen>& vertices) const {
  std::vector<std::string> names;
  std::vector<std::pair<Gen, Gen>> es;
  for (auto v : vertices) names.push_back(names_.at(v));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (commute(vertices[i], vertices[j])) es.emplace_back(Gen(i), Gen(j));
  return CommutationGraph(std::move(names), es);
}

CommutationGraph CommutationGraph::extended(const std::vector<std::string>& names,
                                            const std::vector<std::pair<Gen, Gen>>& extra_edges) const {
  auto all = names_;
  all.insert(all.end(), names.begin(), names.end());
  auto es = edges();
  es.insert(es.end(), extra_edges.begin(), extra_edges.end());
  return CommutationGraph(std::move(all), es);
}

std::string CommutationGraph::to_text() const {
  std::ostringstream os;
  os << "gens:";
  for (auto& n : names_) os << ' ' << n;
  os << '\n';
  for (auto [i, j] : edges()) os << "edge: " << names_[i] << ' ' << names_[j] << '\n';
  return os.str();
}

std::vector<std::pair<Gen, Gen>> NonCommutationGraph::edges() const {
  std::vector<std::pair<Gen, Gen>> out;
  for (Gen i = 0; i < n; ++i)
    for (Gen j : adjacency[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

CommutationGraph parse_graph(std::string_view text) {
  std::vector<std::string> gens;
  std::vector<std::pair<std::string, std::string>> edges;
  bool have_gens = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    std::vector<std::string> rest;
    for (std::string t; ls >> t;) rest.push_back(t);
    // allow "gens:a b" without the space
    if (head.rfind("gens:", 0) == 0 && head.size() > 5) {
      rest.insert(rest.begin(), head.substr(5));
      head = "gens:";
    } else if (head.rfind("edge:", 0) == 0 && head.size() > 5) {
      rest.insert(rest.begin(), head.substr(5));
      head = "edge:";
    }
    if (head == "gens:") {
      if (have_gens) throw ParseError("second gens: line", 0, lineno);
      have_gens = true;
      for (auto& t : rest) {
        if (!valid_generator_name(t)) throw ParseError("invalid generator name '" + t + "'", 0, lineno);
        gens.push_back(t);
      }
    } else if (head == "edge:") {
      if (rest.size() != 2) throw ParseError("edge: needs exactly two endpoints", 0, lineno);
      edges.emplace_back(rest[0], rest[1]);
    } else {
      throw ParseError("unexpected '" + head + "'", 0, lineno);
    }
  }
  if (!have_gens) throw ParseError("missing gens: line");
  return CommutationGraph(std::move(gens), edges);
}

NonCommutationGraph non_commutation(const CommutationGraph& g) {
  NonCommutationGraph d;
  d.n = g.rank();
  d.adjacency.resize(d.n);
  for (Gen i = 0; i < d.n; ++i)
    for (Gen j = 0; j < d.n; ++j)
      if (i != j && !g.commute(i, j)) d.adjacency[i].push_back(j);
  return d;
}

std::vector<std::vector<Gen>> delta_components(const CommutationGraph& g) {
  auto d = non_commutation(g);
  std::vector<int> comp(d.n, -1);
  std::vector<std::vector<Gen>> out;
  for (Gen s = 0; s < d.n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Gen> c;
    std::queue<Gen> q;
    q.push(s);
    comp[s] = static_cast<int>(out.size());
    while (!q.empty()) {
      Gen v = q.front();
      q.pop();
      c.push_back(v);
      for (Gen w : d.adjacency[v])
        if (comp[w] < 0) {
          comp[w] = comp[s];
          q.push(w);
        }
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CommutationGraph> direct_decomposition(const CommutationGraph& g) {
  std::vector<CommutationGraph> out;
  for (auto& c : delta_components(g)) out.push_back(g.induced(c));
  return out;
}

namespace {

std::vector<int> bfs_dist(const NonCommutationGraph& d, Gen s) {
  std::vector<int> dist(d.n, -1);
  std::queue<Gen> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Gen v = q.front();
    q.pop();
    for (Gen w : d.adjacency[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

// Longest strictly descending chain of sets c(Y), where c(Y) is the set of
// generators commuting with (or equal to) every element of Y.
int lattice_height(const CommutationGraph& g) {
  int n = g.rank();
  if (n == 0) return 0;
  if (n > 64) throw LimitExceeded("lattice height limited to 64 generators");
  using Mask = std::uint64_t;
  Mask full = n == 64 ? ~Mask(0) : ((Mask(1) << n) - 1);
  std::vector<Mask> star(n);
  for (int y = 0; y < n; ++y) {
    star[y] = Mask(1) << y;
    for (int x = 0; x < n; ++x)
      if (g.commute(x, y)) star[y] |= Mask(1) << x;
  }
  std::set<Mask> closed{full};
  std::vector<Mask> todo{full};
  while (!todo.empty()) {
    Mask m = todo.back();
    todo.pop_back();
    for (int y = 0; y < n; ++y) {
      Mask k = m & star[y];
      if (closed.insert(k).second) todo.push_back(k);
    }
    if (closed.size() > 200000) throw LimitExceeded("closure lattice too large");
  }
  std::vector<Mask> sets(closed.begin(), closed.end());
  std::sort(sets.begin(), sets.end(),
            [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  std::vector<int> best(sets.size(), 0);  // longest chain ending (from below) at sets[i]
  int height = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (sets[j] != sets[i] && (sets[j] & sets[i]) == sets[j]) best[i] = std::max(best[i], best[j] + 1);
    height = std::max(height, best[i]);
  }
  return height;
}

}  // namespace

std::optional<int> diameter_delta(const CommutationGraph& g) {
  auto d = non_commutation(g);
  int diam = 0;
  for (Gen s = 0; s < d.n; ++s) {
    for (int x : bfs_dist(d, s)) {
      if (x < 0) return std::nullopt;
      diam = std::max(diam, x);
    }
  }
  return diam;
}

std::vector<Gen> center_generators(const CommutationGraph& g) {
  std::vector<Gen> out;
  for (Gen i = 0; i < g.rank(); ++i) {
    bool all = true;
    for (Gen j = 0; j < g.rank() && all; ++j)
      if (j != i && !g.commute(i, j)) all = false;
    if (all) out.push_back(i);
  }
  return out;
}

CdimEstimate cdim_estimate(const CommutationGraph& g) {
  CdimEstimate e;
  if (g.rank() == 0) return e;
  e.lattice_height = lattice_height(g);
  if (auto diam = diameter_delta(g)) {
    e.lower = *diam;
    e.chosen = std::max({e.lower, e.lattice_height, 1});
    return e;
  }
  // Disconnected Δ: add up the non-singleton components and the centre rank.
  int sum = 0, lower = 0;
  for (auto& comp : direct_decomposition(g)) {
    if (comp.rank() == 1) {
      sum += 1;
      continue;
    }
    auto c = cdim_estimate(comp);
    sum += c.chosen;
    lower += c.lower;
  }
  e.lower = lower;
  e.chosen = std::max({sum, e.lattice_height, 1});
  return e;
}

bool is_abelian(const CommutationGraph& g) {
  for (Gen i = 0; i < g.rank(); ++i)
    for (Gen j = i + 1; j < g.rank(); ++j)
      if (!g.commute(i, j)) return false;
  return true;
}

bool is_indecomposable(const CommutationGraph& g) { return delta_components(g).size() <= 1; }

CommutationGraph direct_product(const CommutationGraph& a, const CommutationGraph& b) {
  std::vector<std::string> names = a.generators();
  for (auto n : b.generators()) {
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "2";
    names.push_back(n);
  }
  auto es = a.edges();
  int off = a.rank();
  for (auto [i, j] : b.edges()) es.emplace_back(i + off, j + off);
  for (Gen i = 0; i < a.rank(); ++i)
    for (Gen j = 0; j < b.rank(); ++j) es.emplace_back(i, j + off);
  return CommutationGraph(std::move(names), es);
}

}  // namespace pcg
