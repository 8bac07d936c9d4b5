#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nat/core/group_table.hpp"
#include "nat/core/permutation.hpp"
#include "nat/errors.hpp"

namespace nat {

/// Base and strong generating set with explicit transversals.
///
/// Level i stabilises base[0..i-1]; its transversal maps each point of the
/// basic orbit of base[i] to a group element carrying base[i] there.
class Bsgs {
public:
  struct Level {
    Point base;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;
  };

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_)
      b.push_back(l.base);
    return b;
  }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& l : levels_) {
      if (n > std::numeric_limits<std::uint64_t>::max() / l.orbit.size())
        throw ResourceLimit("group order overflows 64 bits",
                            std::numeric_limits<std::uint64_t>::max(), 0);
      n *= l.orbit.size();
    }
    return n;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_)
      throw InputError("membership query degree mismatch");
    auto [residue, depth] = strip(p, 0);
    return depth == levels_.size() && residue.is_identity();
  }

private:
  friend Bsgs schreier_sims(std::size_t, const std::vector<Permutation>&);

  /// Sifts `g` through levels starting at `from`. Returns the residue and the
  /// level at which sifting stopped (levels_.size() if it went through).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      Point beta = g[levels_[i].base];
      const auto& u = levels_[i].transversal[beta];
      if (!u)
        return {std::move(g), i};
      g = g * u->inverse();
    }
    return {std::move(g), levels_.size()};
  }

  void rebuild_orbit(std::size_t i) {
    Level& l = levels_[i];
    l.orbit.assign(1, l.base);
    l.transversal.assign(degree_, std::nullopt);
    l.transversal[l.base] = Permutation(degree_);
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      Point x = l.orbit[k];
      for (const auto& s : l.generators) {
        Point y = s[x];
        if (!l.transversal[y]) {
          l.transversal[y] = *l.transversal[x] * s;
          l.orbit.push_back(y);
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

inline std::optional<Point> first_moved_point(const Permutation& p) {
  for (Point i = 0; i < p.degree(); ++i)
    if (p[i] != i)
      return i;
  return std::nullopt;
}

/// Deterministic Schreier-Sims. New base points are always the smallest
/// point moved by the element that forced the extension.
inline Bsgs schreier_sims(std::size_t degree, const std::vector<Permutation>& gens) {
  Bsgs b;
  b.degree_ = degree;
  for (const auto& g : gens) {
    if (g.degree() != degree)
      throw InputError("generator degree mismatch");
    if (g.is_identity())
      continue;
    bool fixes_base = std::all_of(b.levels_.begin(), b.levels_.end(),
                                  [&](const auto& l) { return g[l.base] == l.base; });
    if (fixes_base)
      b.levels_.push_back({*first_moved_point(g), {}, {}, {}});
  }
  // Level i gets every generator fixing base[0..i-1].
  for (const auto& g : gens) {
    if (g.is_identity())
      continue;
    for (std::size_t i = 0; i < b.levels_.size(); ++i) {
      b.levels_[i].generators.push_back(g);
      if (g[b.levels_[i].base] != b.levels_[i].base)
        break;
    }
  }
  for (std::size_t i = 0; i < b.levels_.size(); ++i)
    b.rebuild_orbit(i);

  std::size_t i = b.levels_.size();
  while (i > 0) {
    std::size_t lvl = i - 1;
    bool extended = false;
    const auto& L = b.levels_[lvl];
    for (std::size_t k = 0; !extended && k < L.orbit.size(); ++k) {
      Point beta = L.orbit[k];
      for (std::size_t s = 0; !extended && s < L.generators.size(); ++s) {
        const auto& gen = L.generators[s];
        Permutation h = *L.transversal[beta] * gen *
                        L.transversal[gen[beta]]->inverse();
        auto [residue, depth] = b.strip(std::move(h), lvl + 1);
        if (depth == b.levels_.size() && residue.is_identity())
          continue;
        if (depth == b.levels_.size())
          b.levels_.push_back({*first_moved_point(residue), {}, {}, {}});
        for (std::size_t l = lvl + 1; l <= depth; ++l) {
          b.levels_[l].generators.push_back(residue);
          b.rebuild_orbit(l);
        }
        i = depth + 1;
        extended = true;
      }
    }
    if (!extended)
      --i;
  }
  return b;
}

/// Generators acting on {0, ..., degree-1} with an optional cached BSGS.
class PermutationGroup {
public:
  explicit PermutationGroup(std::size_t degree, std::vector<Permutation> gens = {})
      : degree_(degree), generators_(std::move(gens)) {
    if (degree_ == 0)
      throw InputError("permutation group degree must be at least 1");
    for (const auto& g : generators_)
      if (g.degree() != degree_)
        throw InputError("generator degree mismatch");
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  bool has_bsgs() const noexcept { return bsgs_ != nullptr; }

  /// Returns the cached BSGS, computing it if this instance has none.
  /// Computation does not mutate `*this`; use `with_bsgs()` to keep it.
  std::shared_ptr<const Bsgs> bsgs() const {
    if (bsgs_)
      return bsgs_;
    return std::make_shared<const Bsgs>(schreier_sims(degree_, generators_));
  }

  PermutationGroup with_bsgs() const {
    PermutationGroup r = *this;
    r.bsgs_ = bsgs();
    return r;
  }

  std::uint64_t order() const { return bsgs()->order(); }
  bool contains(const Permutation& p) const { return bsgs()->contains(p); }

  /// Every element reachable from the identity, in BFS order. Throws if more
  /// than `limit` elements turn up.
  std::vector<Permutation> elements(std::size_t limit) const {
    std::vector<Permutation> out{Permutation(degree_)};
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen{{out[0], 0}};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : generators_) {
        Permutation y = out[i] * g;
        if (seen.emplace(y, out.size()).second) {
          if (out.size() >= limit)
            throw ResourceLimit("permutation group exceeds enumeration limit",
                                limit, out.size() + 1);
          out.push_back(std::move(y));
        }
      }
    return out;
  }

private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const Bsgs> bsgs_;
};

struct SchreierSimsResult {
  std::uint64_t order;
  std::shared_ptr<const Bsgs> oracle;
  bool contains(const Permutation& p) const { return oracle->contains(p); }
};

inline SchreierSimsResult schreier_sims(const PermutationGroup& g) {
  auto b = g.bsgs();
  return {b->order(), b};
}

inline PermutationGroup subgroup_generated(std::size_t degree,
                                           std::vector<Permutation> seeds) {
  return PermutationGroup(degree, std::move(seeds));
}

/// p_x(y) = mult[y][x]; the right regular representation.
inline PermutationGroup regular_representation(const GroupTable& t) {
  std::vector<Permutation> gens;
  gens.reserve(t.size());
  for (Elem x = 0; x < t.size(); ++x) {
    std::vector<Point> img(t.size());
    for (Elem y = 0; y < t.size(); ++y)
      img[y] = t.mul(y, x);
    gens.emplace_back(std::move(img));
  }
  return PermutationGroup(t.size(), std::move(gens));
}

struct TabulatedGroup {
  GroupTable table;
  std::vector<Permutation> elements; ///< elements[i] is table element i
};

/// Enumerates the group into a table. Identity is element 0; the rest follow
/// in lexicographic order of their image sequences.
inline TabulatedGroup table_from_perm_group(const PermutationGroup& g,
                                            std::size_t limit) {
  std::uint64_t order = g.order();
  if (order > limit)
    throw ResourceLimit("group order exceeds tabulation limit", limit,
                        static_cast<std::size_t>(order));
  auto elems = g.elements(limit);
  if (elems.size() != order)
    throw InvariantViolation("closure size disagrees with Schreier-Sims order");
  std::sort(elems.begin() + 1, elems.end());
  std::map<Permutation, Elem> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<Elem>(i));
  const std::size_t n = elems.size();
  std::vector<Elem> mult(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mult[i * n + j] = index.at(elems[i] * elems[j]);
  return {GroupTable(n, std::move(mult)), std::move(elems)};
}

} // namespace nat
