#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "nat/action/action_pair.hpp"
#include "nat/core/group_table.hpp"
#include "nat/errors.hpp"

namespace nat {

/// Greedy generating set: walk the elements in index order and keep each one
/// that the previous picks do not already generate.
inline std::vector<Elem> greedy_generators(const GroupTable& t) {
  std::vector<Elem> gens;
  std::vector<Elem> closure{0};
  for (Elem x = 1; x < t.size(); ++x) {
    if (std::binary_search(closure.begin(), closure.end(), x))
      continue;
    gens.push_back(x);
    closure = subgroup_closure(t, gens);
  }
  return gens;
}

namespace detail {

// Spanning tree of the Cayley graph on `gens`: each non-identity element is
// parent * gens[via].
struct CayleyTree {
  std::vector<Elem> order; // BFS order, identity first
  std::vector<Elem> parent;
  std::vector<std::size_t> via;
};

inline CayleyTree cayley_tree(const GroupTable& t, const std::vector<Elem>& gens) {
  CayleyTree c;
  c.parent.assign(t.size(), 0);
  c.via.assign(t.size(), 0);
  std::vector<bool> seen(t.size(), false);
  seen[0] = true;
  c.order.push_back(0);
  for (std::size_t i = 0; i < c.order.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = t.mul(c.order[i], gens[k]);
      if (!seen[y]) {
        seen[y] = true;
        c.parent[y] = c.order[i];
        c.via[y] = k;
        c.order.push_back(y);
      }
    }
  return c;
}

// Calls `visit(images)` for every map gens -> candidates (product order, last
// generator fastest) until it returns false.
template <typename Visit>
void for_each_assignment(std::size_t ngens, std::size_t ncandidates, Visit visit) {
  std::vector<std::size_t> idx(ngens, 0);
  if (ngens > 0 && ncandidates == 0)
    return;
  while (true) {
    if (!visit(idx))
      return;
    std::size_t k = ngens;
    while (k > 0) {
      --k;
      if (++idx[k] < ncandidates)
        break;
      idx[k] = 0;
      if (k == 0)
        return;
    }
    if (ngens == 0)
      return;
  }
}

} // namespace detail

/// All automorphisms of `t` as image arrays, sorted (identity first).
/// Brute force over generator images of matching element order.
inline std::vector<std::vector<Elem>> automorphisms(const GroupTable& t) {
  auto gens = greedy_generators(t);
  auto tree = detail::cayley_tree(t, gens);
  std::vector<std::vector<Elem>> by_gen(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Elem x = 0; x < t.size(); ++x)
      if (t.element_order(x) == t.element_order(gens[k]))
        by_gen[k].push_back(x);

  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<Elem> img(t.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      img[0] = 0;
      for (std::size_t i = 1; i < tree.order.size(); ++i) {
        Elem y = tree.order[i];
        img[y] = t.mul(img[tree.parent[y]], by_gen[tree.via[y]][idx[tree.via[y]]]);
      }
      std::vector<bool> hit(t.size(), false);
      for (Elem y : img) {
        if (hit[y])
          return;
        hit[y] = true;
      }
      for (Elem a = 0; a < t.size(); ++a)
        for (std::size_t g = 0; g < gens.size(); ++g)
          if (img[t.mul(a, gens[g])] != t.mul(img[a], img[gens[g]]))
            return;
      out.push_back(img);
      return;
    }
    for (idx[k] = 0; idx[k] < by_gen[k].size(); ++idx[k])
      rec(k + 1);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// All right actions of `actor` on `target` by automorphisms, as action
/// tables. `autos` is Aut(target). Stops with ResourceLimit once more than
/// `budget` candidate generator assignments have been tried.
inline std::vector<ActionTable> actions_by_automorphisms(
    const GroupTable& actor, const GroupTable& target,
    const std::vector<std::vector<Elem>>& autos, std::uint64_t budget) {
  auto gens = greedy_generators(actor);
  auto tree = detail::cayley_tree(actor, gens);
  std::vector<ActionTable> out;
  std::uint64_t tried = 0;
  bool over = false;
  detail::for_each_assignment(gens.size(), autos.size(), [&](const std::vector<std::size_t>& idx) {
    if (tried++ >= budget) {
      over = true;
      return false;
    }
    ActionTable act(actor.size(), std::vector<Elem>(target.size()));
    for (Elem x = 0; x < target.size(); ++x)
      act[0][x] = x;
    for (std::size_t i = 1; i < tree.order.size(); ++i) {
      Elem a = tree.order[i];
      const auto& parent = act[tree.parent[a]];
      const auto& step = autos[idx[tree.via[a]]];
      for (Elem x = 0; x < target.size(); ++x)
        act[a][x] = step[parent[x]];
    }
    // Every Cayley edge must agree: x^(a s) = (x^a)^s.
    for (Elem a = 0; a < actor.size(); ++a)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto& next = act[actor.mul(a, gens[k])];
        const auto& step = autos[idx[k]];
        for (Elem x = 0; x < target.size(); ++x)
          if (next[x] != step[act[a][x]])
            return true;
      }
    out.push_back(std::move(act));
    return true;
  });
  if (over)
    throw ResourceLimit("action enumeration budget exhausted", budget, tried);
  return out;
}

struct IncompatibleExample {
  ActionPair pair; ///< built unchecked
  CompatibilityWitness witness;
};

struct ActionCensus {
  std::uint64_t total = 0;
  std::uint64_t compatible = 0;
  std::uint64_t incompatible = 0;
  bool partial = false;
  std::vector<IncompatibleExample> witnesses;
};

struct SearchLimits {
  std::uint64_t budget = 1'000'000; ///< action pairs examined, plus candidate assignments
  std::size_t max_witnesses = 4;
};

/// Enumerates every pair (H -> Aut(G), G -> Aut(H)) of actions, keeps the
/// compatible ones and hands each to `on_compatible` exactly once.
/// When the budget runs out the census is marked partial.
inline ActionCensus enumerate_compatible_actions(
    const GroupTable& g, const GroupTable& h, const SearchLimits& limits,
    const std::function<void(const ActionPair&)>& on_compatible = {}) {
  ActionCensus census;
  auto G = std::make_shared<const GroupTable>(g);
  auto H = std::make_shared<const GroupTable>(h);
  std::uint64_t budget = limits.budget;
  std::vector<ActionTable> h_on_g, g_on_h;
  try {
    h_on_g = actions_by_automorphisms(h, g, automorphisms(g), budget);
    budget -= std::min<std::uint64_t>(budget, h_on_g.size());
    g_on_h = actions_by_automorphisms(g, h, automorphisms(h), budget);
    budget -= std::min<std::uint64_t>(budget, g_on_h.size());
  } catch (const ResourceLimit&) {
    census.partial = true;
    return census;
  }
  for (const auto& a : h_on_g)
    for (const auto& b : g_on_h) {
      if (census.total >= budget) {
        census.partial = true;
        return census;
      }
      ++census.total;
      auto p = ActionPair::make(G, H, a, b, {}, /*unchecked=*/true);
      if (auto w = check_compatibility(p)) {
        ++census.incompatible;
        if (census.witnesses.size() < limits.max_witnesses)
          census.witnesses.push_back({std::move(p), *w});
      } else {
        ++census.compatible;
        if (on_compatible)
          on_compatible(ActionPair::make(G, H, a, b));
      }
    }
  return census;
}

} // namespace nat
