#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "nat/core/group_table_json.hpp"
#include "nat/harness/builtin_pairs.hpp"

namespace nat {

// {"G": <table or builtin name>, "H": ..., "act_h_on_g": [[...]],
//  "act_g_on_h": [[...]], "unchecked": bool, "name": optional}
// act_h_on_g[h][g] = g^h and act_g_on_h[g][h] = h^g.

namespace detail {

inline GroupTable group_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw InputError(std::string("pair JSON: missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (v.is_string())
    return builtin_group(v.get<std::string>());
  return table_from_json(v);
}

} // namespace detail

inline ActionPair pair_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw InputError("pair JSON must be an object");
  auto G = std::make_shared<const GroupTable>(detail::group_from_json(j, "G"));
  auto H = std::make_shared<const GroupTable>(detail::group_from_json(j, "H"));
  ActionTable h_on_g, g_on_h;
  bool unchecked = false;
  std::string name;
  try {
    h_on_g = j.at("act_h_on_g").get<ActionTable>();
    g_on_h = j.at("act_g_on_h").get<ActionTable>();
    if (j.contains("unchecked"))
      unchecked = j.at("unchecked").get<bool>();
    if (j.contains("name"))
      name = j.at("name").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("pair JSON: ") + e.what());
  }
  return ActionPair::make(G, H, std::move(h_on_g), std::move(g_on_h), std::move(name), unchecked);
}

inline nlohmann::ordered_json pair_to_json(const ActionPair& p) {
  nlohmann::ordered_json j;
  if (!p.name().empty())
    j["name"] = p.name();
  j["G"] = table_to_json(p.g());
  j["H"] = table_to_json(p.h());
  j["act_h_on_g"] = p.h_on_g();
  j["act_g_on_h"] = p.g_on_h();
  j["unchecked"] = !p.compatibility_checked();
  return j;
}

/// A path to a pair file, or else a builtin pair name.
inline ActionPair load_pair(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(spec + ": " + e.what());
    }
    auto p = pair_from_json(j);
    if (p.name().empty())
      p.set_name(std::filesystem::path(spec).stem().string());
    return p;
  }
  return builtin_pair(spec);
}

} // namespace nat
