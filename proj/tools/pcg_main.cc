// Command-line front end. Exit codes: 0 ok, 1 domain error or failed check, 2 usage/parse error.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcg/code.h"
#include "pcg/encode.h"
#include "pcg/errors.h"
#include "pcg/eval.h"
#include "pcg/formula.h"
#include "pcg/fv.h"
#include "pcg/geneq.h"
#include "pcg/graph.h"
#include "pcg/merzlyakov.h"
#include "pcg/solver.h"
#include "pcg/structure.h"
#include "pcg/system.h"
#include "pcg/trace.h"
#include "pcg/vankampen.h"

using namespace pcg;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string graph, g1, g2, word, other, words, rem, system, formula, code, ge, values, q;
  bool json_out = false, positive = false;
  unsigned long long seed = 0;
  int radius = 1, index = 0, limit = 200, m = 0, k = 0, n = 0, N = 0, cdim = 0;
  long long max_checks = 10'000'000;
  std::size_t sample = 0;
  unsigned threads = 0;
};

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "-" is stdin, an existing path is read, anything else is taken literally.
std::string text_arg(const std::string& v, bool must_be_file = false) {
  if (v == "-") return slurp(std::cin);
  std::error_code ec;
  if (std::filesystem::is_regular_file(v, ec)) {
    std::ifstream f(v);
    if (!f) throw UsageError("cannot read " + v);
    return slurp(f);
  }
  if (must_be_file) throw UsageError("no such file: " + v);
  return v;
}

CommutationGraph load_graph(const std::string& v) {
  if (v.empty()) throw UsageError("--graph is required");
  return parse_graph(text_arg(v, v.find("gens:") == std::string::npos));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<Word> word_list(const std::string& s, const CommutationGraph& g) {
  std::vector<Word> out;
  for (auto& part : split_list(s)) out.push_back(parse_word(part, g));
  return out;
}

json words_json(const std::vector<Word>& ws, const CommutationGraph& g) {
  json a = json::array();
  for (auto& w : ws) a.push_back(format_word(w, g));
  return a;
}

std::string join(const std::vector<Word>& ws, const CommutationGraph& g, const char* sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? sep : "") + format_word(ws[i], g);
  return out;
}

std::vector<std::string> names_of(const CommutationGraph& g, const std::vector<Gen>& gs) {
  std::vector<std::string> out;
  for (auto x : gs) out.push_back(g.name(x));
  return out;
}

System load_system(const Args& a, const CommutationGraph& g) {
  if (a.system.empty()) throw UsageError("--system is required");
  std::string t = text_arg(a.system);
  std::replace(t.begin(), t.end(), ';', '\n');  // inline rows may be ;-separated
  return parse_system(t, g);
}

Formula load_formula(const Args& a, const CommutationGraph& g) {
  if (a.formula.empty()) throw UsageError("--formula is required");
  return parse_formula(text_arg(a.formula), g);
}

std::vector<Term> system_terms(const System& s) {
  std::vector<Term> out;
  for (auto& r : s.rows) {
    if (!r.equation) throw DomainError("inequations are not allowed here");
    out.push_back(row_to_term(r, s.vars));
  }
  return out;
}

struct Out {
  bool as_json;
  json j = json::object();
  std::ostringstream text;
  int code = 0;
};

using Handler = std::function<void(const Args&, Out&)>;

void cmd_normalize(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  Word w = normalize(g, parse_word(a.word, g));
  o.j["word"] = format_word(w, g);
  o.j["length"] = w.size();
  o.text << format_word(w, g) << "\n";
}

void cmd_eq(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  bool r = equals(g, parse_word(a.word, g), parse_word(a.other, g));
  o.j["equal"] = r;
  o.text << (r ? "true" : "false") << "\n";
}

void cmd_geodesic(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  Word w = parse_word(a.word, g);
  bool r = is_geodesic(g, w);
  o.j["geodesic"] = r;
  o.j["normal_form"] = format_word(normalize(g, w), g);
  o.text << (r ? "true" : "false") << "\n";
}

void cmd_blocks(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto b = block_decomposition(g, normalize(g, parse_word(a.word, g)));
  o.j["blocks"] = words_json(b.blocks, g);
  for (auto& w : b.blocks) o.text << format_word(w, g) << "\n";
}

void cmd_root(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto r = root(g, normalize(g, parse_word(a.word, g)));
  o.j["root"] = format_word(r.root, g);
  o.j["exponent"] = r.exponent;
  o.text << format_word(r.root, g) << " ^ " << r.exponent << "\n";
}

void cmd_cyclic(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto c = cyclic_reduce(g, normalize(g, parse_word(a.word, g)));
  o.j["conjugator"] = format_word(c.conjugator, g);
  o.j["core"] = format_word(c.core, g);
  o.text << "conjugator: " << format_word(c.conjugator, g) << "\ncore: " << format_word(c.core, g) << "\n";
}

void cmd_centralizer(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto c = centraliser(g, parse_word(a.word, g));
  o.j["conjugator"] = format_word(c.conjugator, g);
  o.j["cyclic_parts"] = words_json(c.cyclic_parts, g);
  o.j["abelian_part"] = names_of(g, c.abelian_part);
  o.j["generators"] = words_json(c.generators, g);
  o.text << "cyclic: " << (has_cyclic_centraliser(g, parse_word(a.word, g)) ? "yes" : "no") << "\n";
  for (auto& w : c.generators) o.text << format_word(w, g) << "\n";
}

void cmd_conjugate(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto r = conjugate(g, parse_word(a.word, g), parse_word(a.other, g));
  o.j["conjugate"] = r.conjugate;
  o.j["conjugator"] = r.conjugator ? json(format_word(*r.conjugator, g)) : json(nullptr);
  if (r.conjugate)
    o.text << "conjugate by " << format_word(*r.conjugator, g) << "\n";
  else
    o.text << "not conjugate\n";
}

void cmd_decompose(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  json comps = json::array();
  for (auto& c : delta_components(g)) {
    comps.push_back(names_of(g, c));
    for (std::size_t i = 0; i < c.size(); ++i) o.text << (i ? " " : "") << g.name(c[i]);
    o.text << "\n";
  }
  o.j["components"] = comps;
  o.j["indecomposable"] = is_indecomposable(g);
}

void cmd_diameter(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto d = diameter_delta(g);
  o.j["diameter"] = d ? json(*d) : json("infinite");
  o.text << (d ? std::to_string(*d) : "infinite") << "\n";
}

void cmd_cdim(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto c = cdim_estimate(g);
  o.j["lower"] = c.lower;
  o.j["lattice_height"] = c.lattice_height;
  o.j["chosen"] = c.chosen;
  o.text << "lower " << c.lower << "\nlattice_height " << c.lattice_height << "\nchosen " << c.chosen << "\n";
}

DomainWitness witnesses(const Args& a, const CommutationGraph& g) {
  return domain_witnesses(g, a.N > 0 ? std::optional<int>(a.N) : (a.cdim > 0 ? std::optional<int>(3 * a.cdim + 4) : std::nullopt));
}

void cmd_domain_check(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto w = witnesses(a, g);
  validate_witness(g, w);
  auto sys = formula_to_system(Formula::conj(domain_system(w)), {"x", "y"});
  SolverOptions so{a.max_checks, a.threads};
  auto v = solve_bounded(g, sys, a.radius, so);
  std::vector<Assignment> bad;
  for (auto& s : v.solutions)
    if (!s[0].empty() && !s[1].empty()) bad.push_back(s);
  o.j["a"] = format_word(w.a, g);
  o.j["b"] = format_word(w.b, g);
  o.j["N"] = w.N;
  o.j["radius"] = a.radius;
  o.j["solutions"] = v.solutions.size();
  o.j["criterion"] = bad.empty();
  o.j["counterexample"] = bad.empty() ? json(nullptr) : words_json(bad[0], g);
  o.text << "a " << format_word(w.a, g) << "\nb " << format_word(w.b, g) << "\nN " << w.N << "\n";
  o.text << "ball solutions " << v.solutions.size() << ", criterion " << (bad.empty() ? "holds" : "fails") << "\n";
  if (!bad.empty()) o.code = 1;
}

void cmd_axioms(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto r = check_axioms(g, a.radius);
  o.j["a"] = format_word(r.a, g);
  o.j["b"] = format_word(r.b, g);
  o.j["witnesses_valid"] = r.witnesses_valid;
  json res = json::array();
  for (auto& x : r.results) {
    res.push_back({{"axiom", x.name}, {"passed", x.passed}, {"counterexample", words_json(x.counterexample, g)}});
    o.text << x.name << " " << (x.passed ? "ok" : "fails");
    if (!x.passed) o.text << " at " << join(x.counterexample, g);
    o.text << "\n";
  }
  o.j["results"] = res;
  o.j["all_passed"] = r.all_passed();
  if (!r.all_passed()) o.code = 1;
}

void term_out(Out& o, const Term& t, const CommutationGraph& g) {
  o.j["term"] = print_term(t, g);
  o.j["size"] = term_size(t);
  o.text << print_term(t, g) << "\n";
}

void cmd_encode_conj(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto w = witnesses(a, g);
  term_out(o, encode_conj(system_terms(load_system(a, g)), w.a, w.b), g);
}

void cmd_encode_disj(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  term_out(o, encode_disj(system_terms(load_system(a, g)), witnesses(a, g)), g);
}

void cmd_qf(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto w = witnesses(a, g);
  auto f = load_formula(a, g);
  Formula r = is_quantifier_free(f) ? qf_normal_form(f, w).to_formula() : prenex_positive(f, w);
  o.j["formula"] = print_formula(r, g);
  o.text << print_formula(r, g) << "\n";
}

void cmd_translate(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  if (a.code.empty()) throw UsageError("--code is required");
  auto c = parse_code_json(text_arg(a.code), g);
  auto r = translate_code(c, load_formula(a, g));
  o.j["formula"] = print_formula(r, g);
  o.text << print_formula(r, g) << "\n";
}

TableEnumerationOptions table_opts(const Args&) { return {}; }

void cmd_ge_enum(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto s = load_system(a, g);
  auto e = partition_tables(g, s, static_cast<std::size_t>(a.limit), table_opts(a));
  json ts = json::array();
  for (auto& t : e.tables) ts.push_back(json::parse(table_to_json(t, g)));
  o.j["count"] = e.tables.size();
  o.j["cap_bound"] = e.cap_bound;
  o.j["tables"] = ts;
  o.text << e.tables.size() << " tables" << (e.cap_bound ? " (caps hit)" : "") << "\n";
  for (std::size_t i = 0; i < e.tables.size(); ++i) {
    auto& t = e.tables[i];
    o.text << "#" << i << " z=" << t.num_z << ":";
    for (auto& row : t.V) o.text << " [" << join(row, t.gamma, " | ") << "]";
    o.text << "\n";
  }
}

PartitionTable pick_table(const Args& a, const CommutationGraph& g, const System& s) {
  std::optional<PartitionTable> found;
  int seen = 0;
  for_each_partition_table(g, s, table_opts(a), [&](const PartitionTable& t) {
    if (seen++ == a.index) {
      found = t;
      return false;
    }
    return true;
  });
  if (!found) throw DomainError("no partition table with index " + std::to_string(a.index));
  return *found;
}

void cmd_ge_build(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto s = load_system(a, g);
  auto t = pick_table(a, g, s);
  auto ge = build_ge(t);
  validate_ge(ge);
  auto text = ge_to_json(ge, t.gamma);
  o.j = json::parse(text);
  o.text << text << "\n";
}

void cmd_ge_check(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  if (a.ge.empty()) throw UsageError("--ge is required");
  auto ge = parse_ge_json(text_arg(a.ge), g);
  auto U = word_list(a.values, g);
  std::string why;
  bool ok = check_solution(g, ge, U, &why);
  o.j["solution"] = ok;
  o.j["reason"] = why;
  o.text << (ok ? "solution" : "not a solution: " + why) << "\n";
  if (!ok) o.code = 1;
}

void cmd_ge_induce(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto s = load_system(a, g);
  auto W = word_list(a.values, g);
  if (!system_holds(g, s, W)) throw DomainError("not a solution of the system");
  auto it = induced_table(g, s, W);
  auto ge = build_ge(it.table);
  auto& gam = it.table.gamma;
  o.j["table"] = json::parse(table_to_json(it.table, g));
  o.j["ge"] = json::parse(ge_to_json(ge, gam));
  o.j["U"] = words_json(it.U, gam);
  o.j["z_values"] = words_json(it.z_values, g);
  bool ok = check_solution(gam, ge, it.U);
  o.j["check"] = ok;
  o.text << "U = " << join(it.U, gam) << "\nz = " << join(it.z_values, g) << "\ncheck " << (ok ? "ok" : "fails") << "\n";
  if (!ok) o.code = 1;
}

void cmd_cancel(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto ws = word_list(a.words.empty() ? a.word : a.words, g);
  ProductScheme ps;
  if (ws.size() == 1 && a.rem.empty()) {
    auto p = cancellation_pairing(g, ws[0]);
    ps.pairing = p;
    ps.k = 1;
    ps.pieces.assign(1, std::vector<Word>(1));
  } else {
    ps = a.rem.empty() ? product_scheme(g, ws) : product_scheme_rem(g, ws, parse_word(a.rem, g));
  }
  json pairs = json::array();
  for (auto [i, j] : ps.pairing.pairs) pairs.push_back({i, j});
  json pieces = json::object();
  for (int l = 0; l < ps.k; ++l)
    for (int i = 0; i < ps.k; ++i)
      if (l != i && !ps.pieces[l][i].empty())
        pieces[std::to_string(l + 1) + "," + std::to_string(i + 1)] = format_word(ps.pieces[l][i], g);
  o.j["pairs"] = pairs;
  o.j["pieces"] = pieces;
  o.j["complete"] = ps.pairing.complete;
  if (ps.has_remainder) o.j["remainder"] = words_json(ps.remainder, g);
  o.as_json = true;  // this one is JSON only
}

void cmd_merzlyakov(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto [b, aw] = base_elements(g);
  int m = a.m;
  int k = a.k;
  if (!a.system.empty()) {
    auto s = load_system(a, g);
    if (k == 0) k = static_cast<int>(s.vars.size());
    if (m == 0) {
      int rho = 0;
      for (auto& t : partition_tables(g, s, static_cast<std::size_t>(a.limit)).tables) rho = std::max(rho, build_ge(t).rho);
      m = rho + 1;
    }
  }
  if (m == 0) m = 1;
  if (k == 0) k = 1;
  int n = a.n > 0 ? a.n : m + 1;
  auto p = default_params(k, n, m);
  std::vector<Word> hist;
  json gs = json::array();
  o.text << "b " << format_word(b, g) << "\na " << format_word(aw, g) << "\nm " << m << "\n";
  for (int i = 0; i < k; ++i) {
    Word w = merzlyakov_word(g, static_cast<std::size_t>(i), p, hist);
    hist.push_back(w);
    gs.push_back(format_word(w, g));
    o.text << "g" << i << " " << format_word(w, g) << "\n";
  }
  o.j["a_word"] = format_word(aw, g);
  o.j["b_word"] = format_word(b, g);
  o.j["m"] = m;
  o.j["n"] = n;
  o.j["g"] = gs;
}

SkolemCandidate load_q(const Args& a, const CommutationGraph& g) {
  if (a.q.empty()) throw UsageError("--q is required");
  return parse_skolem(text_arg(a.q), g);
}

void verdict(Out& o, const char* key, bool ok) {
  o.j[key] = ok;
  o.text << (ok ? "true" : "false") << "\n";
  if (!ok) o.code = 1;
}

void cmd_skolem(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  verdict(o, "holds", skolem_check(g, load_system(a, g), load_q(a, g)));
}

void cmd_lift(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  verdict(o, "holds", lift_check(g, load_formula(a, g), load_q(a, g)));
}

std::pair<CommutationGraph, CommutationGraph> factors(const Args& a) {
  if (a.g1.empty() || a.g2.empty()) throw UsageError("--g1 and --g2 are required");
  return {load_graph(a.g1), load_graph(a.g2)};
}

void cmd_fv_split(const Args& a, Out& o) {
  auto [g1, g2] = factors(a);
  auto pg = direct_product(g1, g2);
  auto f = load_formula(a, pg);
  auto fam = a.positive ? fv_split_positive(f, g1.rank()) : fv_split(f, g1.rank());
  json pairs = json::array();
  for (auto& [x, y] : fam.pairs) {
    pairs.push_back({print_formula(x, g1), print_formula(y, g2)});
    o.text << print_formula(x, g1) << "  |  " << print_formula(y, g2) << "\n";
  }
  o.j["size"] = fam.pairs.size();
  o.j["pairs"] = pairs;
}

void cmd_fv_check(const Args& a, Out& o) {
  auto [g1, g2] = factors(a);
  auto pg = direct_product(g1, g2);
  auto f = load_formula(a, pg);
  FvOptions opt;
  opt.threads = a.threads;
  auto r = fv_check(f, BallStructure::ball(g1, a.radius), BallStructure::ball(g2, a.radius), a.positive, a.sample,
                    a.seed, opt);
  o.j["agree"] = r.agree;
  o.j["assignments"] = r.assignments;
  o.j["family_size"] = r.family_size;
  o.j["seed"] = a.seed;
  o.j["counterexample"] = r.agree ? json(nullptr) : words_json(r.counterexample, pg);
  o.text << "seed " << a.seed << "\nfamily " << r.family_size << " pairs, " << r.assignments << " assignments\n"
         << (r.agree ? "agree" : "disagree at " + join(r.counterexample, pg)) << "\n";
  if (!r.agree) o.code = 1;
}

void cmd_solve(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  auto s = load_system(a, g);
  SolverOptions so{a.max_checks, a.threads};
  auto v = solve_bounded(g, s, a.radius, so);
  json sols = json::array();
  for (auto& x : v.solutions) {
    json row = json::object();
    for (std::size_t i = 0; i < v.vars.size(); ++i) row[v.vars[i]] = format_word(x[i], g);
    sols.push_back(row);
    o.text << join(x, g) << "\n";
  }
  o.j["vars"] = v.vars;
  o.j["radius"] = v.radius;
  o.j["count"] = v.solutions.size();
  o.j["solutions"] = sols;
  o.as_json = true;  // solution lists are JSON
}

void cmd_separate(const Args& a, Out& o) {
  auto g = load_graph(a.graph);
  std::vector<std::string> vars;
  Row r = parse_row(a.word, g, vars);
  auto gx = with_variables(g, vars);
  SolverOptions so{a.max_checks, a.threads};
  auto sep = separate_in_gx(gx, g.rank(), row_in_gx(r, g.rank()), a.cdim, so);
  json as = json::object();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    as[vars[i]] = format_word(sep.assignment[i], g);
    o.text << "?" << vars[i] << " := " << format_word(sep.assignment[i], g) << "\n";
  }
  o.j["assignment"] = as;
  o.j["by_power_map"] = sep.by_power_map;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations in right-angled Artin groups"};
  app.require_subcommand(1);
  Args a;
  std::map<CLI::App*, Handler> handlers;

  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--graph", a.graph, "graph file, '-' for stdin");
    s->add_flag("--json", a.json_out, "JSON output");
    s->add_option("--seed", a.seed, "seed for sampled checks");
    s->add_option("--threads", a.threads, "worker threads (0: all cores)");
    handlers[s] = std::move(h);
    return s;
  };
  auto word = [&](CLI::App* s) { s->add_option("--word", a.word, "word")->required(); };
  auto other = [&](CLI::App* s) { s->add_option("--other", a.other, "second word")->required(); };
  auto system = [&](CLI::App* s) { s->add_option("--system", a.system, "system file or inline rows"); };
  auto formula = [&](CLI::App* s) { s->add_option("--formula", a.formula, "formula file or inline text"); };
  auto radius = [&](CLI::App* s) { s->add_option("--radius", a.radius, "ball radius"); };
  auto checks = [&](CLI::App* s) { s->add_option("--max-checks", a.max_checks, "search guard"); };
  auto wit = [&](CLI::App* s) {
    s->add_option("--N", a.N, "repetition exponent override");
    s->add_option("--cdim", a.cdim, "cdim override (N = 3 cdim + 4)");
  };

  word(sub("normalize", "normal form of a word", cmd_normalize));
  auto* eq = sub("eq", "word equality", cmd_eq);
  word(eq);
  other(eq);
  word(sub("geodesic", "geodesic test", cmd_geodesic));
  word(sub("blocks", "block decomposition", cmd_blocks));
  word(sub("root", "least root", cmd_root));
  word(sub("cyclic", "cyclic reduction", cmd_cyclic));
  word(sub("centralizer", "centraliser generators", cmd_centralizer));
  auto* cj = sub("conjugate", "conjugacy with witness", cmd_conjugate);
  word(cj);
  other(cj);
  sub("decompose", "components of the non-commutation graph", cmd_decompose);
  sub("diameter", "diameter of the non-commutation graph", cmd_diameter);
  sub("cdim-bound", "centraliser dimension estimate", cmd_cdim);
  auto* dc = sub("domain-check", "witnesses and the domain criterion on a ball", cmd_domain_check);
  wit(dc);
  radius(dc);
  checks(dc);
  radius(sub("axioms", "axioms I-IV on a ball", cmd_axioms));
  auto* ec = sub("encode-conj", "conjunction of equations as one equation", cmd_encode_conj);
  system(ec);
  wit(ec);
  auto* ed = sub("encode-disj", "disjunction of equations as a system", cmd_encode_disj);
  system(ed);
  wit(ed);
  auto* qf = sub("qf-normalize", "quantifier-free or prenex positive normal form", cmd_qf);
  formula(qf);
  wit(qf);
  auto* tc = sub("translate-code", "translate a formula through a group code", cmd_translate);
  formula(tc);
  tc->add_option("--code", a.code, "code JSON file")->required();
  auto* ge = sub("ge-enum", "partition tables of a system", cmd_ge_enum);
  system(ge);
  ge->add_option("--limit", a.limit, "maximum number of tables");
  auto* gb = sub("ge-build", "generalised equation of a partition table", cmd_ge_build);
  system(gb);
  gb->add_option("--index", a.index, "table index in enumeration order");
  auto* gc = sub("ge-check", "check a solution of a generalised equation", cmd_ge_check);
  gc->add_option("--ge", a.ge, "generalised equation JSON")->required();
  gc->add_option("--values", a.values, "items h1; h2; ...")->required();
  auto* gi = sub("ge-induce", "partition table induced by a solution", cmd_ge_induce);
  system(gi);
  gi->add_option("--values", a.values, "solution values in variable order")->required();
  auto* cs = sub("cancel-scheme", "cancellation pairing and product pieces", cmd_cancel);
  cs->add_option("--words", a.words, "factors w1; w2; ...");
  cs->add_option("--word", a.word, "single word");
  cs->add_option("--rem", a.rem, "right-hand side v");
  auto* mg = sub("merzlyakov-gen", "base elements and words g_i", cmd_merzlyakov);
  system(mg);
  mg->add_option("--m", a.m, "constant m");
  mg->add_option("--k", a.k, "number of words");
  mg->add_option("--n", a.n, "exponents per word");
  mg->add_option("--limit", a.limit, "tables examined for the default m");
  auto* sk = sub("skolem-check", "check Skolem terms against a system", cmd_skolem);
  system(sk);
  sk->add_option("--q", a.q, "Skolem file")->required();
  auto* lc = sub("lift-check", "check Skolem terms against a formula", cmd_lift);
  formula(lc);
  lc->add_option("--q", a.q, "Skolem file")->required();
  auto* fs = sub("fv-split", "formula pairs over a direct product", cmd_fv_split);
  formula(fs);
  fs->add_option("--g1", a.g1, "first factor graph")->required();
  fs->add_option("--g2", a.g2, "second factor graph")->required();
  fs->add_flag("--positive", a.positive, "negation-free rules");
  auto* fc = sub("fv-check", "compare the split against direct evaluation", cmd_fv_check);
  formula(fc);
  fc->add_option("--g1", a.g1, "first factor graph")->required();
  fc->add_option("--g2", a.g2, "second factor graph")->required();
  fc->add_flag("--positive", a.positive, "negation-free rules");
  fc->add_option("--sample", a.sample, "check this many random assignments");
  radius(fc);
  auto* so = sub("solve", "all solutions in a ball", cmd_solve);
  system(so);
  radius(so);
  checks(so);
  auto* sp = sub("separate", "assignment making a word of G[X] nontrivial", cmd_separate);
  sp->add_option("--word", a.word, "word with ?variables")->required();
  sp->add_option("--cdim", a.cdim, "cdim override");
  checks(sp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Out o{a.json_out};
  try {
    for (auto& [s, h] : handlers)
      if (s->parsed()) h(a, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  if (o.as_json)
    std::cout << o.j.dump(2) << "\n";
  else
    std::cout << o.text.str();
  return o.code;
}
