#include "pcg/geneq.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "pcg/errors.h"
#include "pcg/trace.h"
#include "pcg/vankampen.h"

namespace pcg {

namespace {

std::vector<std::string> z_names(int p) {
  std::vector<std::string> out;
  for (int i = 1; i <= p; ++i) out.push_back("?z" + std::to_string(i));
  return out;
}

// G with free z letters: the ambient group of the words V_ij.
CommutationGraph free_extension(const CommutationGraph& g, int p) { return g.extended(z_names(p)); }

// Bands of u and v may cross: every letter of u is independent of every letter of v.
bool bands_cross(const CommutationGraph& g, const Word& u, const Word& v) {
  for (auto x : u)
    for (auto y : v)
      if (!independent(g, x, y)) return false;
  return true;
}

void require_equations(const System& s) {
  for (auto& r : s.rows)
    if (!r.equation) throw DomainError("generalised equations: inequations are not allowed");
}

}  // namespace

Word PartitionTable::flattened() const {
  Word out;
  for (auto& row : V)
    for (auto& w : row) out.insert(out.end(), w.begin(), w.end());
  return out;
}

void validate_table(const CommutationGraph& g, const PartitionTable& t) {
  if (t.base_rank != g.rank() || t.gamma.rank() != g.rank() + t.num_z)
    throw DomainError("table: alphabet does not match the graph");
  for (Gen x = 0; x < g.rank(); ++x)
    for (Gen y = 0; y < g.rank(); ++y)
      if (x != y && g.commute(x, y) != t.gamma.commute(x, y)) throw DomainError("table: gamma disagrees with G on A");
  if (t.V.size() != t.system.rows.size()) throw DomainError("table: row count mismatch");
  CommutationGraph gz = free_extension(g, t.num_z);
  std::vector<int> pos(t.num_z, 0), neg(t.num_z, 0);
  for (std::size_t i = 0; i < t.V.size(); ++i) {
    const auto& row = t.system.rows[i];
    if (t.V[i].size() != row.letters.size()) throw DomainError("table: row length mismatch");
    const std::size_t l = row.letters.size();
    for (std::size_t j = 0; j < l; ++j) {
      const Word& v = t.V[i][j];
      for (auto x : v) {
        if (x.gen < 0 || x.gen >= t.gamma.rank()) throw DomainError("table: letter out of range");
        if (x.gen >= t.base_rank) (x.inv ? neg : pos)[x.gen - t.base_rank]++;
      }
      if (!is_geodesic(gz, v)) throw DomainError("table: V_ij is not geodesic in G[Z]");
      if (v.size() >= std::max<std::size_t>(l, 1) && !v.empty()) throw DomainError("condition 2 violated: |V_ij| > l_i - 1");
      if (!row.letters[j].is_var && v.size() != 1) throw DomainError("condition 3 violated: constant with |V_ij| != 1");
    }
  }
  for (int z = 0; z < t.num_z; ++z)
    if (pos[z] != 1 || neg[z] != 1) throw DomainError("condition 0 violated: z" + std::to_string(z + 1) + " does not occur exactly once with each sign");
  for (std::size_t i = 0; i < t.V.size(); ++i) {
    Word r;
    for (auto& v : t.V[i]) r = concat(r, v);
    if (!is_trivial(t.gamma, r)) throw DomainError("condition 1 violated: row " + std::to_string(i + 1) + " is not trivial");
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Item {
  bool z = false;
  int id = 0;  // local pair id inside the row for z items
  bool inv = false;
  Letter a{};
};

using RowFill = std::vector<std::vector<Item>>;  // per letter of the row

class Enumerator {
 public:
  Enumerator(const CommutationGraph& g, const System& s, const TableEnumerationOptions& opt,
             const std::function<bool(const PartitionTable&)>& fn)
      : g_(g), s_(s), opt_(opt), fn_(fn) {}

  bool cap_bound = false;

  bool run() {
    fills_.resize(s_.rows.size());
    return rows(0, 0);
  }

 private:
  const CommutationGraph& g_;
  const System& s_;
  const TableEnumerationOptions& opt_;
  const std::function<bool(const PartitionTable&)>& fn_;
  std::vector<RowFill> fills_;
  long long checks_ = 0;

  // Recursion over rows; z_used counts pairs so far.
  bool rows(std::size_t i, int z_used) {
    if (i == s_.rows.size()) return emit();
    const Row& row = s_.rows[i];
    const std::size_t l = row.letters.size();
    RowFill fill(l);
    std::vector<int> exponent(g_.rank(), 0);
    return letters(i, 0, fill, exponent, z_used);
  }

  bool letters(std::size_t i, std::size_t j, RowFill& fill, std::vector<int>& exponent, int z_used) {
    const Row& row = s_.rows[i];
    const std::size_t l = row.letters.size();
    if (j == l) {
      for (int e : exponent)
        if (e != 0) return true;
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < fill[a].size(); ++b)
          if (fill[a][b].z) slots.push_back({a, b});
      if (slots.size() % 2) return true;
      int pairs = static_cast<int>(slots.size() / 2);
      if (z_used + pairs > opt_.z_cap) {
        cap_bound = true;
        return true;
      }
      if (!variables_consistent(i, fill)) return true;
      std::vector<int> partner(slots.size(), -1);
      return match(i, fill, slots, partner, 0, z_used);
    }
    const SysLetter r = row.letters[j];
    if (!r.is_var) {
      fill[j] = {Item{false, 0, false, Letter{r.index, r.inv}}};
      exponent[r.index] += r.inv ? -1 : 1;
      bool go = letters(i, j + 1, fill, exponent, z_used);
      exponent[r.index] -= r.inv ? -1 : 1;
      return go;
    }
    const std::size_t maxlen = l - 1;
    for (std::size_t len = 0; len <= maxlen; ++len) {
      fill[j].assign(len, Item{});
      if (!slots(i, j, 0, fill, exponent, z_used)) return false;
    }
    fill[j].clear();
    return true;
  }

  bool slots(std::size_t i, std::size_t j, std::size_t k, RowFill& fill, std::vector<int>& exponent, int z_used) {
    if (k == fill[j].size()) return letters(i, j + 1, fill, exponent, z_used);
    fill[j][k] = Item{true, 0, false, {}};
    if (!slots(i, j, k + 1, fill, exponent, z_used)) return false;
    for (Gen x = 0; x < g_.rank(); ++x)
      for (bool inv : {false, true}) {
        fill[j][k] = Item{false, 0, false, Letter{x, inv}};
        exponent[x] += inv ? -1 : 1;
        bool go = slots(i, j, k + 1, fill, exponent, z_used);
        exponent[x] -= inv ? -1 : 1;
        if (!go) return false;
      }
    return true;
  }

  // A variable is either empty at every occurrence or at none (within the rows seen so far).
  bool variables_consistent(std::size_t i, const RowFill& fill) const {
    std::map<int, bool> empty;
    auto visit = [&](std::size_t row, const RowFill& f) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        auto r = s_.rows[row].letters[j];
        if (!r.is_var) continue;
        bool e = f[j].empty();
        auto [it, fresh] = empty.emplace(r.index, e);
        if (!fresh && it->second != e) return false;
      }
      return true;
    };
    for (std::size_t row = 0; row < i; ++row)
      if (!visit(row, fills_[row])) return false;
    return visit(i, fill);
  }

  bool match(std::size_t i, RowFill& fill, const std::vector<std::pair<std::size_t, std::size_t>>& slots,
             std::vector<int>& partner, int next_id, int z_used) {
    std::size_t first = 0;
    while (first < slots.size() && partner[first] != -1) ++first;
    if (first == slots.size()) {
      // geodesic in G[Z] per letter, before spending effort on graphs
      int pairs = next_id;
      CommutationGraph gz = free_extension(g_, pairs);
      for (auto& v : fill) {
        Word w;
        for (auto& it : v) w.push_back(it.z ? Letter{g_.rank() + it.id, it.inv} : it.a);
        if (!is_geodesic(gz, w)) return true;
      }
      fills_[i] = fill;
      return rows(i + 1, z_used + pairs);
    }
    for (std::size_t other = first + 1; other < slots.size(); ++other) {
      if (partner[other] != -1) continue;
      partner[first] = static_cast<int>(other);
      partner[other] = static_cast<int>(first);
      auto [a1, b1] = slots[first];
      auto [a2, b2] = slots[other];
      fill[a1][b1] = Item{true, next_id, false, {}};
      fill[a2][b2] = Item{true, next_id, true, {}};
      bool go = match(i, fill, slots, partner, next_id + 1, z_used);
      partner[first] = partner[other] = -1;
      if (!go) return false;
    }
    return true;
  }

  bool emit() {
    // global z numbering: rows in order, pair ids in order of first occurrence
    PartitionTable t;
    t.system = s_;
    t.base_rank = g_.rank();
    int p = 0;
    std::vector<std::vector<int>> rows_letters;
    for (auto& fill : fills_) {
      std::map<int, int> global;
      std::vector<Word> row;
      for (auto& v : fill) {
        Word w;
        for (auto& it : v) {
          if (it.z) {
            auto [pos, fresh] = global.emplace(it.id, p);
            if (fresh) ++p;
            w.push_back({g_.rank() + pos->second, it.inv});
          } else {
            w.push_back(it.a);
          }
        }
        row.push_back(std::move(w));
      }
      t.V.push_back(std::move(row));
    }
    t.num_z = p;
    const int n = g_.rank() + p;

    // free pairs: z with any other letter
    std::vector<std::pair<Gen, Gen>> free;
    for (Gen a = 0; a < n; ++a)
      for (Gen z = std::max(a + 1, g_.rank()); z < n; ++z) free.push_back({a, z});
    if (static_cast<int>(free.size()) > opt_.max_free_pairs) {
      cap_bound = true;
      std::vector<std::vector<char>> together(n, std::vector<char>(n, 0));
      for (auto& row : t.V) {
        std::vector<Gen> gs;
        for (auto& w : row)
          for (auto x : w) gs.push_back(x.gen);
        for (Gen a : gs)
          for (Gen b : gs) together[a][b] = 1;
      }
      std::erase_if(free, [&](auto& e) { return !together[e.first][e.second]; });
      if (static_cast<int>(free.size()) > opt_.max_free_pairs) return true;
    }
    std::vector<Word> products;
    for (auto& row : t.V) {
      Word r;
      for (auto& w : row) r = concat(r, w);
      products.push_back(std::move(r));
    }
    auto base_edges = g_.edges();
    auto graph_for = [&](unsigned long mask) {
      auto edges = base_edges;
      for (std::size_t b = 0; b < free.size(); ++b)
        if (mask >> b & 1UL) edges.push_back(free[b]);
      return CommutationGraph(g_.extended(z_names(p)).generators(), edges);
    };
    auto all_trivial = [&](const CommutationGraph& gamma) {
      for (auto& r : products) {
        if (++checks_ > opt_.max_checks) throw LimitExceeded("partition tables: check budget exhausted");
        if (!is_trivial(gamma, r)) return false;
      }
      return true;
    };
    const unsigned long full = free.empty() ? 0UL : ((1UL << free.size()) - 1);
    if (!all_trivial(graph_for(full))) return true;  // triviality is monotone in the edge set
    for (unsigned long mask = 0; mask <= full; ++mask) {
      CommutationGraph gamma = graph_for(mask);
      if (!all_trivial(gamma)) continue;
      t.gamma = std::move(gamma);
      if (!fn_(t)) return false;
    }
    return true;
  }
};

}  // namespace

bool for_each_partition_table(const CommutationGraph& g, const System& s, const TableEnumerationOptions& opt,
                              const std::function<bool(const PartitionTable&)>& fn) {
  require_equations(s);
  Enumerator e(g, s, opt, fn);
  e.run();
  return e.cap_bound;
}

TableEnumeration partition_tables(const CommutationGraph& g, const System& s, std::size_t limit,
                                  const TableEnumerationOptions& opt) {
  TableEnumeration out;
  if (limit == 0) return out;
  out.cap_bound = for_each_partition_table(g, s, opt, [&](const PartitionTable& t) {
    out.tables.push_back(t);
    return out.tables.size() < limit;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Generalised equation of a table

GeneralisedEquation build_ge(const PartitionTable& t) {
  GeneralisedEquation ge;
  Word y = t.flattened();
  ge.rho = static_cast<int>(y.size());

  std::vector<std::vector<int>> start(t.V.size());
  int c = 1;
  for (std::size_t i = 0; i < t.V.size(); ++i)
    for (auto& v : t.V[i]) {
      start[i].push_back(c);
      c += static_cast<int>(v.size());
    }

  // z pairs
  std::vector<std::vector<int>> zpos(t.num_z);
  for (int p = 0; p < ge.rho; ++p)
    if (y[p].gen >= t.base_rank) zpos[y[p].gen - t.base_rank].push_back(p + 1);
  for (int z = 0; z < t.num_z; ++z) {
    if (zpos[z].size() != 2) throw DomainError("build_ge: z" + std::to_string(z + 1) + " must occur twice");
    int i = zpos[z][0], j = zpos[z][1];
    int k = static_cast<int>(ge.bases.size());
    std::string label = "z" + std::to_string(z + 1);
    ge.bases.push_back({true, i, i + 1, y[i - 1].inv ? -1 : 1, k + 1, {}, true, label});
    ge.bases.push_back({true, j, j + 1, y[j - 1].inv ? -1 : 1, k, {}, true, label});
  }

  // variable occurrences, left-lexicographic
  ge.variables.resize(t.system.vars.size());
  for (std::size_t v = 0; v < t.system.vars.size(); ++v) ge.variables[v].name = t.system.vars[v];
  for (std::size_t i = 0; i < t.V.size(); ++i)
    for (std::size_t j = 0; j < t.V[i].size(); ++j) {
      auto r = t.system.rows[i].letters[j];
      if (!r.is_var) continue;
      int a = start[i][j];
      ge.variables[r.index].occurrences.push_back({a, a + static_cast<int>(t.V[i][j].size()), r.inv ? -1 : 1});
    }
  for (auto& var : ge.variables) {
    auto& occ = var.occurrences;
    for (std::size_t p = 0; p < occ.size(); ++p)
      for (std::size_t q = p + 1; q < occ.size(); ++q) {
        if (occ[p].alpha == occ[p].beta || occ[q].alpha == occ[q].beta) continue;  // x = 1 here, no base
        int k = static_cast<int>(ge.bases.size());
        bool unit = occ[p].beta == occ[p].alpha + 1 && occ[q].beta == occ[q].alpha + 1;
        ge.bases.push_back({true, occ[p].alpha, occ[p].beta, occ[p].eps, k + 1, {}, unit, var.name});
        ge.bases.push_back({true, occ[q].alpha, occ[q].beta, occ[q].eps, k, {}, unit, var.name});
      }
  }

  // constants, wherever they sit
  for (int p = 0; p < ge.rho; ++p)
    if (y[p].gen < t.base_rank) ge.bases.push_back({false, p + 1, p + 2, 1, -1, y[p], false, ""});

  // commutation pairs involving at least one z occurrence
  for (int i = 0; i < ge.rho; ++i) {
    if (y[i].gen < t.base_rank) continue;
    for (int j = 0; j < ge.rho; ++j) {
      if (j == i || y[j].gen == y[i].gen) continue;
      if (y[j].gen >= t.base_rank && j < i) continue;
      if (t.gamma.commute(y[i].gen, y[j].gen)) ge.commutations.push_back({i + 1, j + 1});
    }
  }
  std::sort(ge.commutations.begin(), ge.commutations.end());
  validate_ge(ge);
  return ge;
}

void validate_ge(const GeneralisedEquation& ge) {
  const int nb = static_cast<int>(ge.bases.size());
  for (int k = 0; k < nb; ++k) {
    const auto& b = ge.bases[k];
    if (b.alpha < 1 || b.beta > ge.rho + 1 || b.alpha >= b.beta) throw DomainError("GE: base with bad boundaries");
    if (b.variable) {
      if (b.dual < 0 || b.dual >= nb || b.dual == k || ge.bases[b.dual].dual != k || !ge.bases[b.dual].variable)
        throw DomainError("GE: dual map is not an involution");
      if (b.eps != 1 && b.eps != -1) throw DomainError("GE: eps must be +1 or -1");
    } else if (b.beta != b.alpha + 1) {
      throw DomainError("GE: constant base of width other than one");
    }
  }
  for (auto [i, j] : ge.commutations)
    if (i < 1 || j < 1 || i > ge.rho || j > ge.rho) throw DomainError("GE: commutation refers to a missing item");
  for (auto& v : ge.variables)
    for (auto& o : v.occurrences)
      if (o.alpha < 1 || o.beta > ge.rho + 1 || o.alpha > o.beta) throw DomainError("GE: bad occurrence of " + v.name);
}

// ---------------------------------------------------------------------------
// JSON

std::string ge_to_json(const GeneralisedEquation& ge, const CommutationGraph& g) {
  nlohmann::ordered_json j;
  j["boundaries"] = ge.rho + 1;
  j["bases"] = nlohmann::ordered_json::array();
  for (auto& b : ge.bases) {
    nlohmann::ordered_json e;
    e["type"] = b.variable ? "variable" : "constant";
    e["alpha"] = b.alpha;
    e["beta"] = b.beta;
    if (b.variable) {
      e["eps"] = b.eps;
      e["dual"] = b.dual;
      e["graphical"] = b.graphical;
      e["label"] = b.label;
    } else {
      e["letter"] = format_word(Word{b.letter}, g);
    }
    j["bases"].push_back(e);
  }
  j["commutations"] = nlohmann::ordered_json::array();
  for (auto [a, b] : ge.commutations) j["commutations"].push_back({a, b});
  j["variables"] = nlohmann::ordered_json::array();
  for (auto& v : ge.variables) {
    nlohmann::ordered_json e;
    e["name"] = v.name;
    e["occurrences"] = nlohmann::ordered_json::array();
    for (auto& o : v.occurrences) e["occurrences"].push_back({o.alpha, o.beta, o.eps});
    j["variables"].push_back(e);
  }
  return j.dump(2);
}

GeneralisedEquation parse_ge_json(std::string_view text, const CommutationGraph& g) {
  GeneralisedEquation ge;
  try {
    auto j = nlohmann::json::parse(text);
    ge.rho = j.at("boundaries").get<int>() - 1;
    for (auto& e : j.at("bases")) {
      GEBase b;
      auto type = e.at("type").get<std::string>();
      if (type != "variable" && type != "constant") throw ParseError("GE JSON: unknown base type " + type);
      b.variable = type == "variable";
      b.alpha = e.at("alpha").get<int>();
      b.beta = e.at("beta").get<int>();
      if (b.variable) {
        b.eps = e.at("eps").get<int>();
        b.dual = e.at("dual").get<int>();
        b.graphical = e.value("graphical", false);
        b.label = e.value("label", std::string{});
      } else {
        Word w = parse_word(e.at("letter").get<std::string>(), g);
        if (w.size() != 1) throw ParseError("GE JSON: constant base needs a single letter");
        b.letter = w[0];
      }
      ge.bases.push_back(b);
    }
    for (auto& c : j.at("commutations")) ge.commutations.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    if (j.contains("variables"))
      for (auto& e : j.at("variables")) {
        GEVariable v;
        v.name = e.at("name").get<std::string>();
        for (auto& o : e.at("occurrences")) v.occurrences.push_back({o.at(0).get<int>(), o.at(1).get<int>(), o.at(2).get<int>()});
        ge.variables.push_back(v);
      }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("GE JSON: ") + e.what());
  }
  validate_ge(ge);
  return ge;
}

std::string table_to_json(const PartitionTable& t, const CommutationGraph& g) {
  (void)g;
  nlohmann::ordered_json j;
  j["Z"] = t.num_z;
  j["rows"] = nlohmann::ordered_json::array();
  for (auto& row : t.V) {
    auto r = nlohmann::ordered_json::array();
    for (auto& w : row) r.push_back(format_word(w, t.gamma));
    j["rows"].push_back(r);
  }
  j["gamma_edges"] = nlohmann::ordered_json::array();
  for (auto [a, b] : t.gamma.edges())
    if (b >= t.base_rank) j["gamma_edges"].push_back({t.gamma.name(a), t.gamma.name(b)});
  return j.dump();
}

// ---------------------------------------------------------------------------
// Solutions

namespace {

Word range(const std::vector<Word>& U, int alpha, int beta, int eps) {
  Word w;
  for (int i = alpha; i < beta; ++i) w = concat(w, U[i - 1]);
  return eps < 0 ? inverse(w) : w;
}

}  // namespace

std::vector<Word> apply_p(const GeneralisedEquation& ge, const std::vector<Word>& U) {
  if (static_cast<int>(U.size()) != ge.rho) throw DomainError("arity mismatch: expected " + std::to_string(ge.rho) + " items");
  std::vector<Word> out;
  for (auto& v : ge.variables) {
    if (v.occurrences.empty()) throw DomainError("variable ?" + v.name + " has no occurrence");
    auto& o = v.occurrences.front();
    out.push_back(range(U, o.alpha, o.beta, o.eps));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> p_map(const GeneralisedEquation& ge) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& v : ge.variables) {
    if (v.occurrences.empty()) throw DomainError("variable ?" + v.name + " has no occurrence");
    auto& o = v.occurrences.front();
    std::string s;
    for (int i = o.alpha; i < o.beta; ++i) s += (s.empty() ? "h" : " h") + std::to_string(i);
    if (s.empty())
      s = "1";
    else if (o.eps < 0)
      s = (o.beta - o.alpha == 1 ? s : "(" + s + ")") + "^-1";
    out.push_back({v.name, s});
  }
  return out;
}

bool check_solution(const CommutationGraph& g, const GeneralisedEquation& ge, const std::vector<Word>& U) {
  return check_solution(g, ge, U, nullptr);
}

bool check_solution(const CommutationGraph& g, const GeneralisedEquation& ge, const std::vector<Word>& U,
                    std::string* why) {
  if (static_cast<int>(U.size()) != ge.rho) throw DomainError("arity mismatch: expected " + std::to_string(ge.rho) + " items");
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  for (int i = 0; i < ge.rho; ++i) {
    check_declared(U[i], g);
    if (U[i].empty()) return fail("h" + std::to_string(i + 1) + " is empty");
    if (!is_geodesic(g, U[i])) return fail("h" + std::to_string(i + 1) + " is not geodesic");
  }
  for (std::size_t k = 0; k < ge.bases.size(); ++k) {
    const auto& b = ge.bases[k];
    if (!b.variable) {
      if (U[b.alpha - 1] != Word{b.letter}) return fail("coefficient equation at h" + std::to_string(b.alpha));
      continue;
    }
    if (static_cast<int>(k) > b.dual) continue;
    const auto& d = ge.bases[b.dual];
    Word L = range(U, b.alpha, b.beta, b.eps), R = range(U, d.alpha, d.beta, d.eps);
    std::string name = "basic equation of bases " + std::to_string(k) + "/" + std::to_string(b.dual);
    if (!is_geodesic(g, L) || !is_geodesic(g, R)) return fail(name + ": side not geodesic");
    if (b.graphical ? L != R : !trace_equal(g, L, R)) return fail(name);
  }
  for (auto [i, j] : ge.commutations) {
    Word L = concat(U[i - 1], U[j - 1]), R = concat(U[j - 1], U[i - 1]);
    std::string name = "commutation [h" + std::to_string(i) + ",h" + std::to_string(j) + "]";
    if (!is_geodesic(g, L) || !is_geodesic(g, R)) return fail(name + ": side not geodesic");
    if (!trace_equal(g, L, R)) return fail(name);
  }
  return true;
}

InducedTable induced_table(const CommutationGraph& g, const System& s, const std::vector<Word>& W) {
  require_equations(s);
  if (W.size() != s.vars.size()) throw DomainError("arity mismatch: expected " + std::to_string(s.vars.size()) + " values");
  for (auto& w : W) check_declared(w, g);
  if (!system_holds(g, s, W)) throw DomainError("not a solution");

  std::vector<Word> nw;
  for (auto& w : W) nw.push_back(normalize(g, w));

  struct Slot {
    bool z;
    int pair;  // global pair index (before renumbering)
    bool inv;
    Letter a;
  };
  std::vector<std::vector<std::vector<Slot>>> rows;
  std::vector<Word> pair_value;  // value of the + side
  for (auto& row : s.rows) {
    const int k = static_cast<int>(row.letters.size());
    std::vector<Word> factors;
    for (auto r : row.letters) {
      if (r.is_var)
        factors.push_back(r.inv ? inverse(nw[r.index]) : nw[r.index]);
      else
        factors.push_back(letter_word(r.index, r.inv));
    }
    ProductScheme sch = product_scheme(g, factors);
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::vector<Slot>> vrow(k);
    for (int l = 0; l < k; ++l) {
      std::vector<int> order;
      for (int i = l - 1; i >= 0; --i) order.push_back(i);
      for (int i = k - 1; i > l; --i) order.push_back(i);
      for (int i : order) {
        const Word& piece = sch.pieces[l][i];
        if (piece.empty()) continue;
        bool lvar = row.letters[l].is_var, ivar = row.letters[i].is_var;
        if (!lvar || !ivar) {
          // against a constant the piece is a single letter
          if (piece.size() != 1) throw std::logic_error("induced table: constant piece longer than one letter");
          vrow[l].push_back({false, -1, false, piece[0]});
          continue;
        }
        auto key = std::minmax(l, i);
        auto [it, fresh] = ids.emplace(key, static_cast<int>(pair_value.size()));
        if (fresh) pair_value.push_back(sch.pieces[key.first][key.second]);
        vrow[l].push_back({true, it->second, l > i, {}});
      }
    }
    rows.push_back(std::move(vrow));
  }

  // number z letters by first occurrence
  std::map<int, int> renum;
  for (auto& vrow : rows)
    for (auto& v : vrow)
      for (auto& sl : v)
        if (sl.z && !renum.count(sl.pair)) renum.emplace(sl.pair, static_cast<int>(renum.size()));
  const int p = static_cast<int>(renum.size());
  const int n = g.rank();

  InducedTable out;
  out.z_values.resize(p);
  for (auto [old, neu] : renum) out.z_values[neu] = pair_value[old];

  PartitionTable& t = out.table;
  t.system = s;
  t.base_rank = n;
  t.num_z = p;
  for (auto& vrow : rows) {
    std::vector<Word> r;
    for (auto& v : vrow) {
      Word w;
      for (auto& sl : v) w.push_back(sl.z ? Letter{n + renum[sl.pair], sl.inv} : sl.a);
      r.push_back(std::move(w));
    }
    t.V.push_back(std::move(r));
  }
  auto edges = g.edges();
  for (int z = 0; z < p; ++z) {
    for (Gen a = 0; a < n; ++a)
      if (bands_cross(g, letter_word(a), out.z_values[z])) edges.push_back({a, n + z});
    for (int z2 = z + 1; z2 < p; ++z2)
      if (bands_cross(g, out.z_values[z], out.z_values[z2])) edges.push_back({n + z, n + z2});
  }
  t.gamma = CommutationGraph(free_extension(g, p).generators(), edges);
  try {
    validate_table(g, t);
  } catch (const DomainError& e) {
    throw std::logic_error(std::string("induced table is not a partition table: ") + e.what());
  }

  // items of the generalised equation
  Word y = t.flattened();
  out.U.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].gen < n)
      out.U[i] = Word{y[i]};
    else
      out.U[i] = y[i].inv ? inverse(out.z_values[y[i].gen - n]) : out.z_values[y[i].gen - n];
  }
  // graphical basic equations: propagate along them so that they hold letter for letter
  GeneralisedEquation ge = build_ge(t);
  std::vector<std::vector<std::pair<int, int>>> link(y.size());  // item -> (item, relative sign)
  for (std::size_t k = 0; k < ge.bases.size(); ++k) {
    auto& b = ge.bases[k];
    if (!b.variable || !b.graphical) continue;
    auto& d = ge.bases[b.dual];
    int sign = b.eps * d.eps;
    link[b.alpha - 1].push_back({d.alpha - 1, sign});
  }
  std::vector<char> seen(y.size(), 0);
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::vector<int> stack{static_cast<int>(r)};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (auto [nx, sign] : link[cur]) {
        if (seen[nx]) continue;
        seen[nx] = 1;
        out.U[nx] = sign > 0 ? out.U[cur] : inverse(out.U[cur]);
        stack.push_back(nx);
      }
    }
  }
  for (int z = 0; z < p; ++z) {
    auto it = std::find(y.begin(), y.end(), Letter{n + z, false});
    out.z_values[z] = out.U[it - y.begin()];
  }
  std::string why;
  if (!check_solution(g, ge, out.U, &why)) throw std::logic_error("induced solution fails: " + why);
  auto back = apply_p(ge, out.U);
  for (std::size_t v = 0; v < back.size(); ++v)
    if (!trace_equal(g, back[v], nw[v])) throw std::logic_error("induced solution: P(U) differs from W");
  return out;
}

std::vector<Word> lift_solution(const CommutationGraph& ext, const System& s, const GeneralisedEquation& ge,
                                const std::vector<Word>& U) {
  if (static_cast<int>(U.size()) != ge.rho) throw DomainError("arity mismatch: expected " + std::to_string(ge.rho) + " items");
  std::string why;
  if (!check_solution(ext, ge, U, &why)) throw DomainError("not a solution of the generalised equation: " + why);
  auto X = apply_p(ge, U);
  if (X.size() != s.vars.size()) throw DomainError("lift: variable count differs from the system");
  if (!system_holds(ext, s, X)) throw std::logic_error("lift: P(U) does not solve the system");
  return X;
}

}  // namespace pcg
