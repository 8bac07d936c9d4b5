#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nat/harness/builtin_pairs.hpp"

namespace nat {

struct CatalogEntry {
  std::string id;                 ///< also the builtin pair name
  std::vector<std::string> tags;  ///< "nu", "trivial-action", "conjugation-pair", "large"
  bool allow_large_groups = false;

  ActionPair make_pair() const { return builtin_pair(id); }
  bool has_tag(std::string_view t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
  }
};

/// Every group of order <= 8 under nu, a spread of trivial-action pairs,
/// and conjugation pairs from normal subgroups.
inline std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> c;
  for (const char* g : {"trivial", "C2", "C3", "C4", "klein4", "C5", "C6", "sym(3)", "C7", "C8",
                        "direct(C2,C4)", "dihedral(8)", "quaternion8", "elem_abelian(2,3)"})
    c.push_back({"nu(" + std::string(g) + ")", {"nu"}});
  for (const char* p : {"trivial(C2,C3)", "trivial(C4,C6)", "trivial(klein4,C2)", "trivial(C6,C6)",
                        "trivial(sym(3),C4)", "trivial(quaternion8,C2)", "trivial(dihedral(8),klein4)"})
    c.push_back({p, {"trivial-action"}});
  for (const char* p : {"normal_pair(sym(3); C3, K)", "normal_pair(dihedral(8); derived, K)",
                        "normal_pair(quaternion8; center, K)"})
    c.push_back({p, {"conjugation-pair"}});
  c.push_back({"normal_pair(sym(4); klein4, alt(4))", {"conjugation-pair", "large"}, true});
  return c;
}

/// Lookup by id, ignoring whitespace.
inline const CatalogEntry* find_entry(const std::vector<CatalogEntry>& c, std::string_view id) {
  auto squeeze = [](std::string_view s) {
    std::string out;
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch)))
        out += ch;
    return out;
  };
  const auto want = squeeze(id);
  for (const auto& e : c)
    if (squeeze(e.id) == want)
      return &e;
  return nullptr;
}

/// FNV-1a over the serialized report; names fixture content.
inline std::string content_digest(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Pinned reports keyed by entry id.
// {"entries": {"<id>": {"digest": "<hex>", "report": {...}}}}
class FixtureSet {
public:
  static FixtureSet load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
      throw InputError("cannot read fixtures " + file.string());
    nlohmann::ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(file.string() + ": " + e.what());
    }
    FixtureSet f;
    if (!j.contains("entries") || !j["entries"].is_object())
      throw InputError(file.string() + ": missing \"entries\" object");
    for (const auto& [id, v] : j["entries"].items()) {
      auto report = v.at("report");
      if (v.at("digest").get<std::string>() != content_digest(report.dump()))
        throw InputError("fixture " + id + ": digest does not match its report");
      f.reports_[id] = report;
    }
    return f;
  }

  void save(const std::filesystem::path& file) const {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::object();
    for (const auto& [id, r] : reports_)
      j["entries"][id] = {{"digest", content_digest(r.dump())}, {"report", r}};
    if (file.has_parent_path())
      std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out)
      throw InputError("cannot write fixtures " + file.string());
    out << j.dump(2) << '\n';
  }

  const nlohmann::ordered_json* find(const std::string& id) const {
    auto it = reports_.find(id);
    return it == reports_.end() ? nullptr : &it->second;
  }
  void pin(const std::string& id, nlohmann::ordered_json report) { reports_[id] = std::move(report); }
  std::size_t size() const noexcept { return reports_.size(); }

private:
  std::map<std::string, nlohmann::ordered_json> reports_;
};

/// Top-level fields where two reports disagree.
inline std::vector<std::string> report_diff(const nlohmann::ordered_json& pinned,
                                            const nlohmann::ordered_json& got) {
  std::vector<std::string> out;
  for (const auto& [k, v] : pinned.items())
    if (!got.contains(k))
      out.push_back(k + ": missing (pinned " + v.dump() + ")");
    else if (got[k] != v)
      out.push_back(k + ": pinned " + v.dump() + ", got " + got[k].dump());
  for (const auto& [k, v] : got.items())
    if (!pinned.contains(k))
      out.push_back(k + ": unexpected " + v.dump());
  return out;
}

} // namespace nat
