#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nat/action/search.hpp"
#include "nat/harness/builtin_groups.hpp"

namespace nat {

/// Builtin groups used by the search, one per isomorphism type, by order.
inline std::vector<std::string> search_group_names(std::size_t max_order) {
  std::vector<std::string> all{"trivial", "C2", "C3", "C4", "klein4", "C5", "C6", "sym(3)", "C7",
                               "C8", "direct(C2,C4)", "dihedral(8)", "quaternion8",
                               "elem_abelian(2,3)"};
  std::vector<std::string> out;
  for (auto& n : all)
    if (builtin_group(n).size() <= max_order)
      out.push_back(n);
  return out;
}

struct ExtremalRow {
  std::size_t m = 0;
  std::size_t max_derivative_order = 0;
  std::size_t pairs = 0;
  std::string example; ///< first (G,H) reaching the maximum
};

struct PairCensus {
  std::string g, h;
  ActionCensus census;
};

struct ExtremalCensus {
  std::size_t max_order = 0;
  std::uint64_t budget = 0;
  bool partial = false;
  std::map<std::size_t, ExtremalRow> rows; ///< by m
  std::vector<PairCensus> pairs;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["max_order"] = max_order;
    j["budget"] = budget;
    j["partial"] = partial;
    auto rs = nlohmann::ordered_json::array();
    for (const auto& [m, r] : rows)
      rs.push_back({{"m", m}, {"max_derivative_order", r.max_derivative_order},
                    {"pairs", r.pairs}, {"example", r.example}});
    j["rows"] = rs;
    auto ps = nlohmann::ordered_json::array();
    for (const auto& p : pairs) {
      auto ws = nlohmann::ordered_json::array();
      for (const auto& w : p.census.witnesses)
        ws.push_back({{"identity", w.witness.identity}, {"triple", w.witness.triple},
                      {"act_h_on_g", w.pair.h_on_g()}, {"act_g_on_h", w.pair.g_on_h()}});
      ps.push_back({{"G", p.g}, {"H", p.h}, {"total", p.census.total},
                    {"compatible", p.census.compatible}, {"incompatible", p.census.incompatible},
                    {"partial", p.census.partial}, {"witnesses", ws}});
    }
    j["pairs"] = ps;
    return j;
  }

  void write_text(std::ostream& os) const {
    os << "m  max|[G,H]|  pairs  example\n";
    for (const auto& [m, r] : rows)
      os << m << "  " << r.max_derivative_order << "  " << r.pairs << "  " << r.example << '\n';
    std::uint64_t total = 0, comp = 0, inc = 0;
    for (const auto& p : pairs) {
      total += p.census.total;
      comp += p.census.compatible;
      inc += p.census.incompatible;
    }
    os << pairs.size() << " group pairs, " << total << " action pairs, " << comp << " compatible, "
       << inc << " incompatible" << (partial ? ", PARTIAL" : "") << '\n';
  }
};

/// Every compatible action pair between groups of order <= max_order,
/// tabulating the largest |[G,H]| seen for each m = |{g^-1 g^h}|. The
/// budget applies to each group pair separately.
inline ExtremalCensus search_extremal(std::size_t max_order, std::uint64_t budget,
                                      std::size_t max_witnesses = 2) {
  ExtremalCensus out;
  out.max_order = max_order;
  out.budget = budget;
  auto names = search_group_names(max_order);
  std::vector<GroupTable> groups;
  for (auto& n : names)
    groups.push_back(builtin_group(n));
  SearchLimits lim{budget, max_witnesses};
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = 0; j < groups.size(); ++j) {
      PairCensus pc{names[i], names[j], {}};
      pc.census = enumerate_compatible_actions(groups[i], groups[j], lim, [&](const ActionPair& p) {
        auto d = derivative(p, Side::g_under_h);
        auto& row = out.rows[d.m];
        row.m = d.m;
        ++row.pairs;
        if (d.subgroup.size() > row.max_derivative_order || row.example.empty()) {
          row.max_derivative_order = std::max(row.max_derivative_order, d.subgroup.size());
          row.example = "(" + names[i] + ", " + names[j] + ")";
        }
      });
      out.partial = out.partial || pc.census.partial;
      out.pairs.push_back(std::move(pc));
    }
  return out;
}

} // namespace nat
