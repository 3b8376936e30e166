#include "pcg/vankampen.h"

#include <algorithm>

#include "pcg/errors.h"
#include "pcg/trace.h"

namespace pcg {

CancellationPairing cancellation_pairing(const CommutationGraph& g, const Word& w) {
  CancellationPairing p;
  Word rest = reduce_with_pairs(g, w, &p.pairs);
  std::sort(p.pairs.begin(), p.pairs.end());
  p.complete = rest.empty();
  return p;
}

namespace {

ProductScheme scheme_impl(const CommutationGraph& g, std::vector<Word> ws, bool with_rem) {
  for (auto& w : ws)
    if (!is_geodesic(g, w)) throw DomainError("product scheme: factor " + format_word(w, g) + " is not geodesic");
  const int n = static_cast<int>(ws.size());
  Word all;
  std::vector<int> owner;
  for (int l = 0; l < n; ++l)
    for (auto x : ws[l]) {
      all.push_back(x);
      owner.push_back(l);
    }
  ProductScheme s;
  s.pairing = cancellation_pairing(g, all);
  if (!s.pairing.complete)
    throw DomainError(with_rem ? "product does not equal the given element" : "product is not trivial");
  std::vector<int> partner_factor(all.size(), -1);
  for (auto [i, j] : s.pairing.pairs) {
    if (owner[i] == owner[j]) throw std::logic_error("pairing inside a geodesic factor");
    partner_factor[i] = owner[j];
    partner_factor[j] = owner[i];
  }
  s.pieces.assign(n, std::vector<Word>(n));
  for (std::size_t p = 0; p < all.size(); ++p) s.pieces[owner[p]][partner_factor[p]].push_back(all[p]);
  s.k = n;
  if (with_rem) {
    s.k = n - 1;
    s.has_remainder = true;
    for (int l = 0; l < s.k; ++l) s.remainder.push_back(s.pieces[l][n - 1]);
  }
  for (int l = 0; l < n; ++l) {
    Word r;
    for (int i = l - 1; i >= 0; --i) r = concat(r, s.pieces[l][i]);
    for (int i = n - 1; i > l; --i) r = concat(r, s.pieces[l][i]);
    if (!trace_equal(g, r, ws[l])) throw std::logic_error("product scheme: reassembly failed");
    for (int i = 0; i < n; ++i) {
      if (i == l) continue;
      if (!is_geodesic(g, s.pieces[l][i])) throw std::logic_error("product scheme: non-geodesic piece");
      if (!equals(g, concat(s.pieces[l][i], s.pieces[i][l]), Word{}))
        throw std::logic_error("product scheme: pieces are not mutually inverse");
    }
  }
  if (with_rem) {
    // keep only the k x k block; the appended factor is recoverable from remainder
    for (auto& row : s.pieces) row.resize(s.k);
    s.pieces.resize(s.k);
  }
  return s;
}

}  // namespace

ProductScheme product_scheme(const CommutationGraph& g, const std::vector<Word>& ws) {
  return scheme_impl(g, ws, false);
}

ProductScheme product_scheme_rem(const CommutationGraph& g, const std::vector<Word>& ws, const Word& v) {
  if (!is_geodesic(g, v)) throw DomainError("product scheme: remainder is not geodesic");
  auto all = ws;
  all.push_back(inverse(v));
  auto s = scheme_impl(g, all, true);
  Word prod;
  for (auto& r : s.remainder) {
    if (!is_geodesic_concat(g, prod, r)) throw std::logic_error("remainder pieces do not multiply geodesically");
    prod = concat(prod, r);
  }
  if (!equals(g, prod, v)) throw std::logic_error("remainder pieces do not multiply to v");
  return s;
}

Word reassemble(const ProductScheme& s, int l) {
  Word r;
  for (int i = l - 1; i >= 0; --i) r = concat(r, s.pieces[l][i]);
  if (s.has_remainder) r = concat(r, s.remainder[l]);
  for (int i = s.k - 1; i > l; --i) r = concat(r, s.pieces[l][i]);
  return r;
}

}  // namespace pcg
