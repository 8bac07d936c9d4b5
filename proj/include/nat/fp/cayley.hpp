#pragma once

#include "nat/core/group_table.hpp"
#include "nat/fp/presentation.hpp"

namespace nat {

/// One generator per element, one relator a b (ab)^-1 per table entry.
inline Presentation cayley_presentation(const GroupTable& t) {
  std::vector<Word> rels;
  for (Elem a = 0; a < t.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b)
      rels.push_back(Word::gen(a) * Word::gen(b) * Word::gen(t.mul(a, b), -1));
  return Presentation(t.size(), rels);
}

} // namespace nat
