#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nat/action/action_pair.hpp"
#include "nat/core/fingerprint.hpp"
#include "nat/harness/builtin_groups.hpp"

namespace nat {

/// Conjugacy classes as sorted element lists, ordered by least element.
inline std::vector<std::vector<Elem>> conjugacy_classes(const GroupTable& t) {
  std::vector<bool> seen(t.size(), false);
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < t.size(); ++x) {
    if (seen[x])
      continue;
    std::vector<Elem> cls;
    for (Elem g = 0; g < t.size(); ++g) {
      Elem y = t.conj(x, g);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

/// Every normal subgroup, as sorted element lists: the unions of classes
/// that contain the identity and are closed under multiplication.
inline std::vector<std::vector<Elem>> normal_subgroups(const GroupTable& t) {
  auto classes = conjugacy_classes(t);
  if (classes.size() > 20)
    throw ResourceLimit("too many conjugacy classes to list normal subgroups", 20,
                        classes.size());
  std::vector<std::vector<Elem>> out;
  const std::size_t rest = classes.size() - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << rest); ++mask) {
    std::vector<Elem> s{0};
    for (std::size_t i = 0; i < rest; ++i)
      if (mask >> i & 1)
        s.insert(s.end(), classes[i + 1].begin(), classes[i + 1].end());
    std::sort(s.begin(), s.end());
    if (subgroup_closure(t, s) == s)
      out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// A normal subgroup of K named by a token: "K", "derived", "center",
/// "trivial", or a builtin group name meaning the unique normal subgroup of
/// K with that group's fingerprint.
inline std::vector<Elem> normal_subgroup_by_token(const GroupTable& k, std::string_view token) {
  if (token == "K") {
    std::vector<Elem> all(k.size());
    std::iota(all.begin(), all.end(), Elem{0});
    return all;
  }
  if (token == "derived")
    return derived_subgroup(k);
  if (token == "center")
    return center(k);
  if (token == "trivial")
    return {0};
  auto want = fingerprint(builtin_group(token));
  std::vector<std::vector<Elem>> hits;
  for (auto& s : normal_subgroups(k))
    if (s.size() == want.order && fingerprint(subgroup_table(k, s)) == want)
      hits.push_back(std::move(s));
  if (hits.empty())
    throw InputError("no normal subgroup of " + k.name() + " looks like " + std::string(token));
  if (hits.size() > 1)
    throw InputError("several normal subgroups of " + k.name() + " look like " +
                     std::string(token));
  return hits.front();
}

/// trivial(G,H), nu(G) or normal_pair(K; A, B).
inline ActionPair builtin_pair(std::string_view raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      name += c;
  auto inner = [&](std::string_view fn) -> std::optional<std::string> {
    if (name.size() > fn.size() + 2 && name.starts_with(fn) && name[fn.size()] == '(' &&
        name.back() == ')')
      return name.substr(fn.size() + 1, name.size() - fn.size() - 2);
    return std::nullopt;
  };
  if (auto a = inner("trivial")) {
    auto parts = detail::split_top_level(*a, ',');
    if (parts.size() != 2)
      throw InputError("trivial(G,H) takes two groups");
    return trivial_pair(builtin_group(parts[0]), builtin_group(parts[1]), name);
  }
  if (auto a = inner("nu")) {
    auto g = builtin_group(*a);
    return nu_pair(g, name);
  }
  if (auto a = inner("normal_pair")) {
    auto semi = detail::split_top_level(*a, ';');
    if (semi.size() != 2)
      throw InputError("normal_pair(K; A, B) needs one ';'");
    auto subs = detail::split_top_level(semi[1], ',');
    if (subs.size() != 2)
      throw InputError("normal_pair(K; A, B) needs two subgroups");
    auto k = builtin_group(semi[0]);
    auto A = normal_subgroup_by_token(k, subs[0]);
    auto B = normal_subgroup_by_token(k, subs[1]);
    return conjugation_pair(k, A, B, name);
  }
  throw InputError("unknown builtin pair '" + std::string(raw) + "'");
}

} // namespace nat
