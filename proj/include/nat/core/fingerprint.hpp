#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nat/abelian/abelian_group.hpp"
#include "nat/core/group_table.hpp"

namespace nat {

/// Isomorphism-invariant summary used wherever two groups are compared:
/// order, exponent, sorted class sizes, and invariant factors if abelian.
struct Fingerprint {
  std::size_t order = 1;
  std::size_t exponent = 1;
  std::vector<std::size_t> class_sizes{1};
  std::optional<AbelianGroup> abelian;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << "order=" << order << " exp=" << exponent << " classes=[";
    for (std::size_t i = 0; i < class_sizes.size(); ++i)
      os << (i ? "," : "") << class_sizes[i];
    os << ']';
    if (abelian)
      os << " abelian=" << abelian->to_string();
    return os.str();
  }
};

inline Fingerprint fingerprint(const GroupTable& t) {
  Fingerprint f;
  f.order = t.size();
  f.exponent = exponent(t);
  f.class_sizes = conjugacy_class_sizes(t);
  if (t.is_abelian())
    f.abelian = abelian_structure(t);
  return f;
}

} // namespace nat
