#include "pcg/system.h"

#include <cctype>
#include <charconv>
#include <sstream>

#include "pcg/errors.h"
#include "pcg/trace.h"

namespace pcg {

int System::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

void append_token(std::vector<SysLetter>& out, std::string_view tok, std::size_t col, const CommutationGraph& g,
                  std::vector<std::string>& vars) {
  if (tok == "1") return;
  std::string_view name = tok;
  long k = 1;
  if (auto caret = tok.find('^'); caret != std::string_view::npos) {
    name = tok.substr(0, caret);
    auto ex = tok.substr(caret + 1);
    auto [p, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), k);
    if (ec != std::errc() || p != ex.data() + ex.size() || k == 0)
      throw ParseError("bad exponent in '" + std::string(tok) + "'", col + caret + 1);
    if (k > 1000000 || k < -1000000) throw ParseError("exponent too large", col + caret + 1);
  }
  SysLetter l;
  if (!name.empty() && name[0] == '?') {
    std::string v(name.substr(1));
    if (v.empty()) throw ParseError("empty variable name", col);
    l.is_var = true;
    l.index = -1;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) l.index = static_cast<int>(i);
    if (l.index < 0) {
      l.index = static_cast<int>(vars.size());
      vars.push_back(v);
    }
  } else {
    auto gen = g.find(name);
    if (!gen) throw ParseError("undeclared generator '" + std::string(name) + "'", col);
    l.index = *gen;
  }
  l.inv = k < 0;
  for (long r = 0; r < (k < 0 ? -k : k); ++r) out.push_back(l);
}

std::vector<SysLetter> parse_letters(std::string_view text, std::size_t offset, const CommutationGraph& g,
                                     std::vector<std::string>& vars) {
  std::vector<SysLetter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t s = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    append_token(out, text.substr(s, i - s), offset + s + 1, g, vars);
  }
  return out;
}

}  // namespace

Row parse_row(std::string_view text, const CommutationGraph& g, std::vector<std::string>& vars) {
  Row r;
  std::size_t off = 0;
  while (off < text.size() && std::isspace(static_cast<unsigned char>(text[off]))) ++off;
  if (off < text.size() && text[off] == '!') {
    r.equation = false;
    ++off;
  }
  auto body = text.substr(off);
  auto eq = body.find('=');
  if (eq == std::string_view::npos) {
    r.letters = parse_letters(body, off, g, vars);
  } else {
    if (body.find('=', eq + 1) != std::string_view::npos) throw ParseError("more than one '='", off + eq + 1);
    Row lhs{parse_letters(body.substr(0, eq), off, g, vars), true};
    Row rhs{parse_letters(body.substr(eq + 1), off + eq + 1, g, vars), true};
    r.letters = concat(lhs, inverse(rhs)).letters;
  }
  return r;
}

System parse_system(std::string_view text, const CommutationGraph& g, std::vector<std::string> vars) {
  System s;
  s.vars = std::move(vars);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    try {
      s.rows.push_back(parse_row(line, g, s.vars));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, lineno);
    }
  }
  return s;
}

std::string format_row(const Row& r, const CommutationGraph& g, const std::vector<std::string>& vars) {
  std::ostringstream os;
  if (!r.equation) os << "! ";
  if (r.letters.empty()) os << "1";
  for (std::size_t i = 0; i < r.letters.size();) {
    std::size_t j = i;
    while (j < r.letters.size() && r.letters[j] == r.letters[i]) ++j;
    long k = static_cast<long>(j - i);
    if (r.letters[i].inv) k = -k;
    if (i) os << ' ';
    if (r.letters[i].is_var)
      os << '?' << vars.at(r.letters[i].index);
    else
      os << g.name(r.letters[i].index);
    if (k != 1) os << '^' << k;
    i = j;
  }
  return os.str();
}

std::string format_system(const System& s, const CommutationGraph& g) {
  std::string out;
  for (auto& r : s.rows) out += format_row(r, g, s.vars) + "\n";
  return out;
}

Row inverse(const Row& r) {
  Row out;
  out.equation = r.equation;
  for (auto it = r.letters.rbegin(); it != r.letters.rend(); ++it) out.letters.push_back(it->inverse());
  return out;
}

Row concat(const Row& a, const Row& b) {
  Row out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

Row constant_row(const Word& w) {
  Row r;
  for (auto l : w) r.letters.push_back({false, l.gen, l.inv});
  return r;
}

Word substitute(const Row& r, const std::vector<Word>& values) {
  Word out;
  for (auto l : r.letters) {
    if (!l.is_var) {
      out.push_back({l.index, l.inv});
      continue;
    }
    if (l.index < 0 || l.index >= static_cast<int>(values.size())) throw DomainError("unassigned variable");
    const Word& v = values[l.index];
    if (!l.inv)
      out.insert(out.end(), v.begin(), v.end());
    else
      for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(it->inverse());
  }
  return out;
}

bool row_holds(const CommutationGraph& g, const Row& r, const std::vector<Word>& values) {
  bool trivial = is_trivial(g, substitute(r, values));
  return r.equation ? trivial : !trivial;
}

bool system_holds(const CommutationGraph& g, const System& s, const std::vector<Word>& values) {
  for (auto& r : s.rows)
    if (!row_holds(g, r, values)) return false;
  return true;
}

CommutationGraph with_variables(const CommutationGraph& g, const std::vector<std::string>& vars) {
  std::vector<std::string> names;
  for (auto& v : vars) names.push_back("?" + v);
  return g.extended(names);
}

Word row_in_gx(const Row& r, int base_rank) {
  Word w;
  for (auto l : r.letters) w.push_back({l.is_var ? base_rank + l.index : l.index, l.inv});
  return w;
}

Row row_from_gx(const Word& w, int base_rank) {
  Row r;
  for (auto l : w)
    r.letters.push_back(l.gen >= base_rank ? SysLetter{true, l.gen - base_rank, l.inv} : SysLetter{false, l.gen, l.inv});
  return r;
}

}  // namespace pcg
