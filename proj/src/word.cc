#include "pcg/word.h"

#include <cctype>
#include <charconv>
#include <sstream>

#include "pcg/errors.h"

namespace pcg {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word power(const Word& w, long k) {
  const Word base = k < 0 ? inverse(w) : w;
  Word out;
  long n = k < 0 ? -k : k;
  out.reserve(base.size() * static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word letter_word(Gen g, bool inv) { return Word{Letter{g, inv}}; }

Word commutator(const Word& u, const Word& v) { return concat({inverse(u), inverse(v), u, v}); }

Word parse_word(std::string_view text, const CommutationGraph& g) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view tok = text.substr(start, i - start);
    if (tok == "1") continue;
    std::string_view name = tok;
    long k = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      auto ex = tok.substr(caret + 1);
      auto [p, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), k);
      if (ec != std::errc() || p != ex.data() + ex.size() || k == 0)
        throw ParseError("bad exponent in '" + std::string(tok) + "'", start + caret + 2);
      if (k > 1000000 || k < -1000000) throw ParseError("exponent too large", start + caret + 2);
    }
    auto gen = g.find(name);
    if (!gen) throw ParseError("undeclared generator '" + std::string(name) + "'", start + 1);
    for (long r = 0; r < (k < 0 ? -k : k); ++r) out.push_back(Letter{*gen, k < 0});
  }
  return out;
}

std::string format_word(const Word& w, const CommutationGraph& g) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    long k = static_cast<long>(j - i);
    if (i) os << ' ';
    os << g.name(w[i].gen);
    if (w[i].inv) k = -k;
    if (k != 1) os << '^' << k;
    i = j;
  }
  return os.str();
}

void check_declared(const Word& w, const CommutationGraph& g) {
  for (auto l : w)
    if (l.gen < 0 || l.gen >= g.rank()) throw DomainError("undeclared generator index " + std::to_string(l.gen));
}

}  // namespace pcg
