#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "nat/action/action_pair.hpp"
#include "nat/fp/presentation.hpp"

namespace nat {

// Generator numbering for eta presentations: element g of G is generator g,
// element h of H^phi is generator |G| + h.

/// g^-1 (h^phi)^-1 g h^phi
inline Word tensor_word(std::size_t g_order, Elem g, Elem h) {
  auto hg = static_cast<std::uint32_t>(g_order + h);
  return Word::gen(g, -1) * Word::gen(hg, -1) * Word::gen(g) * Word::gen(hg);
}

/// One generator per element of G and of H^phi; Cayley relators of both
/// groups; both conjugation relator families over all triples.
inline Presentation eta_presentation(const ActionPair& p) {
  const auto& G = p.g();
  const auto& H = p.h();
  const std::size_t ng = G.size(), nh = H.size();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < ng; ++i)
    labels.push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < nh; ++j)
    labels.push_back("h" + std::to_string(j));

  Presentation pres(ng + nh, {}, labels);
  for (Elem a = 0; a < ng; ++a)
    for (Elem b = 0; b < ng; ++b)
      pres.add_relator(Word::gen(a) * Word::gen(b) * Word::gen(G.mul(a, b), -1));
  for (Elem a = 0; a < nh; ++a)
    for (Elem b = 0; b < nh; ++b) {
      auto A = static_cast<std::uint32_t>(ng + a), B = static_cast<std::uint32_t>(ng + b);
      auto AB = static_cast<std::uint32_t>(ng + H.mul(a, b));
      pres.add_relator(Word::gen(A) * Word::gen(B) * Word::gen(AB, -1));
    }
  // [g,h^phi]^g1 = [g^g1, (h^g1)^phi]
  for (Elem g = 0; g < ng; ++g)
    for (Elem h = 0; h < nh; ++h)
      for (Elem g1 = 0; g1 < ng; ++g1) {
        Word lhs = Word::gen(g1, -1) * tensor_word(ng, g, h) * Word::gen(g1);
        Word rhs = tensor_word(ng, G.conj(g, g1), p.act_on_h(h, g1));
        pres.add_relator(lhs * rhs.inverse());
      }
  // [g,h^phi]^(h1^phi) = [g^h1, (h^h1)^phi]
  for (Elem g = 0; g < ng; ++g)
    for (Elem h = 0; h < nh; ++h)
      for (Elem h1 = 0; h1 < nh; ++h1) {
        auto H1 = static_cast<std::uint32_t>(ng + h1);
        Word lhs = Word::gen(H1, -1) * tensor_word(ng, g, h) * Word::gen(H1);
        Word rhs = tensor_word(ng, p.act_on_g(g, h1), H.conj(h, h1));
        pres.add_relator(lhs * rhs.inverse());
      }
  return pres;
}

/// eta_presentation of the conjugation setup on `t`.
inline Presentation nu_presentation(const GroupTable& t) {
  return eta_presentation(nu_pair(t));
}

namespace detail {

// Least rotation of a cyclically reduced word or of its inverse.
inline Word cyclic_canonical(const Word& w) {
  Word best = w;
  for (const Word& v : {w, w.inverse()}) {
    const auto& ls = v.letters();
    for (std::size_t r = 0; r < ls.size(); ++r) {
      std::vector<Letter> rot(ls.begin() + static_cast<std::ptrdiff_t>(r), ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(r));
      Word c(std::move(rot));
      if (c < best)
        best = std::move(c);
    }
  }
  return best;
}

} // namespace detail

/// Equivalent presentation for enumeration: generators listed in `trivial`
/// are deleted from every relator (each keeps a one-letter relator), then
/// relators are cyclically reduced and duplicates up to rotation and
/// inversion removed. Sound whenever each listed generator is trivial in
/// the group.
inline Presentation simplify_for_enumeration(const Presentation& p,
                                             const std::vector<std::uint32_t>& trivial) {
  std::vector<bool> drop(p.generator_count(), false);
  for (auto g : trivial)
    drop.at(g) = true;
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto g : trivial) {
    out.push_back(Word::gen(g));
    seen.insert(Word::gen(g));
  }
  for (const auto& r : p.relators()) {
    std::vector<Letter> kept;
    for (const auto& l : r.letters())
      if (!drop[l.gen])
        kept.push_back(l);
    Word w = cyclic_reduce(free_reduce(Word(std::move(kept))));
    if (w.empty())
      continue;
    Word c = detail::cyclic_canonical(w);
    if (seen.insert(c).second)
      out.push_back(std::move(c));
  }
  return Presentation(p.generator_count(), std::move(out), p.labels());
}

} // namespace nat
