#pragma once

#include <nlohmann/json.hpp>

#include "nat/core/group_table.hpp"

namespace nat {

// {"size": n, "mult": [[...]], "name": "..."}; inverses are rebuilt on load.

inline nlohmann::ordered_json table_to_json(const GroupTable& t) {
  nlohmann::ordered_json j;
  j["size"] = t.size();
  auto rows = nlohmann::ordered_json::array();
  for (Elem a = 0; a < t.size(); ++a) {
    auto r = t.row(a);
    rows.push_back(std::vector<Elem>(r.begin(), r.end()));
  }
  j["mult"] = std::move(rows);
  if (!t.name().empty())
    j["name"] = t.name();
  return j;
}

template <typename Json>
GroupTable table_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("mult"))
    throw InputError("group table JSON needs \"size\" and \"mult\"");
  try {
    auto n = j.at("size").template get<std::size_t>();
    auto rows = j.at("mult").template get<std::vector<std::vector<Elem>>>();
    if (rows.size() != n)
      throw InputError("group table JSON: row count differs from size");
    std::string name;
    if (j.contains("name"))
      name = j.at("name").template get<std::string>();
    return GroupTable::from_rows(rows, std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("group table JSON: ") + e.what());
  }
}

} // namespace nat
