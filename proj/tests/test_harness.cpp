#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nat/harness/extremal.hpp"
#include "nat/harness/pair_json.hpp"
#include "nat/harness/suite.hpp"
#include "support/brown_loday.hpp"

using namespace nat;
namespace fs = std::filesystem;

namespace {

const fs::path kSamples = fs::path(NAT_SOURCE_DIR) / "samples";

fs::path temp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "nat_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST(BuiltinGroup, Examples) {
  EXPECT_EQ(builtin_group("cyclic(1)").size(), 1u);

  auto s3 = builtin_group("sym(3)");
  EXPECT_EQ(s3.size(), 6u);
  EXPECT_EQ(conjugacy_class_sizes(s3), (std::vector<std::size_t>{1, 2, 3}));

  auto q8 = builtin_group("quaternion8");
  EXPECT_EQ(q8.size(), 8u);
  EXPECT_EQ(exponent(q8), 4u);
  EXPECT_EQ(derived_subgroup(q8).size(), 2u);

  auto c2c4 = builtin_group("direct(C2, cyclic(4))");
  EXPECT_EQ(c2c4.size(), 8u);
  EXPECT_EQ(abelian_structure(c2c4), AbelianGroup::from_cyclic_orders({2, 4}));
  EXPECT_THROW(builtin_group("direct(C2)"), InputError);
  EXPECT_THROW(builtin_group("nope"), InputError);
}

TEST(BuiltinGroup, EveryListedNameResolves) {
  for (const auto& n : builtin_group_names())
    EXPECT_NO_THROW(builtin_group(n)) << n;
}

TEST(NormalSubgroups, S4HasFour) {
  auto s4 = symmetric_group(4);
  auto ns = normal_subgroups(s4);
  std::vector<std::size_t> sizes;
  for (const auto& n : ns)
    sizes.push_back(n.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 4, 12, 24}));
  for (const auto& n : ns)
    EXPECT_TRUE(is_normal_subset(s4, n));
}

TEST(BuiltinPair, Examples) {
  auto a = builtin_pair("trivial(cyclic(2), cyclic(3))");
  EXPECT_TRUE(a.compatibility_checked());
  EXPECT_TRUE(a.trivial_actions());

  auto b = builtin_pair("nu(sym(3))");
  EXPECT_TRUE(b.is_nu_setup());
  EXPECT_FALSE(check_compatibility(b));

  auto c = builtin_pair("normal_pair(sym(4); klein4, alt(4))");
  EXPECT_EQ(c.g().size(), 4u);
  EXPECT_EQ(c.h().size(), 12u);
  EXPECT_FALSE(check_compatibility(c));
  EXPECT_FALSE(c.trivial_actions());
}

TEST(BuiltinPair, Errors) {
  EXPECT_THROW(builtin_pair("mystery(C2)"), InputError);
  EXPECT_THROW(builtin_pair("trivial(C2)"), InputError);
  // S3 has no normal subgroup of order 2.
  EXPECT_THROW(builtin_pair("normal_pair(sym(3); C2, K)"), InputError);
  // D8 has two normal Klein four-groups.
  EXPECT_THROW(builtin_pair("normal_pair(dihedral(8); klein4, K)"), InputError);
  EXPECT_THROW(builtin_pair("normal_pair(sym(3), C3, K)"), InputError);
}

TEST(PairJson, RoundTrip) {
  auto p = builtin_pair("normal_pair(sym(3); C3, K)");
  auto q = pair_from_json(nlohmann::json::parse(pair_to_json(p).dump()));
  EXPECT_EQ(q.g(), p.g());
  EXPECT_EQ(q.h(), p.h());
  EXPECT_EQ(q.h_on_g(), p.h_on_g());
  EXPECT_EQ(q.g_on_h(), p.g_on_h());
  EXPECT_TRUE(q.compatibility_checked());
}

TEST(PairJson, Errors) {
  using nlohmann::json;
  EXPECT_THROW(pair_from_json(json::array()), InputError);
  EXPECT_THROW(pair_from_json(json{{"G", "C2"}}), InputError);
  // Not an automorphism of C3.
  EXPECT_THROW(pair_from_json(json{{"G", "C3"}, {"H", "C2"},
                                   {"act_h_on_g", {{0, 1, 2}, {1, 0, 2}}},
                                   {"act_g_on_h", {{0, 1}, {0, 1}, {0, 1}}}}),
               InputError);
  EXPECT_THROW(pair_from_json(json{{"G", "C3"}, {"H", "C2"}, {"act_h_on_g", "x"},
                                   {"act_g_on_h", {{0, 1}}}}),
               InputError);
}

TEST(Samples, LoadAndRealize) {
  auto inv = load_pair((kSamples / "c4_c2_inversion.json").string());
  EXPECT_EQ(inv.name(), "c4_c2_inversion");
  auto e = realize(inv);
  EXPECT_EQ(e.tensor_order(), oracle::tensor_product_order(inv));
  EXPECT_EQ(e.order(), 8u * e.tensor_order());

  auto s3 = load_pair((kSamples / "nu_s3_tables.json").string());
  EXPECT_TRUE(s3.is_nu_setup());
  EXPECT_EQ(realize(s3).tensor_order(), 6u);

  auto bad = load_pair((kSamples / "v4_c3_incompatible.json").string());
  EXPECT_FALSE(bad.compatibility_checked());
  auto w = check_compatibility(bad);
  ASSERT_TRUE(w);
  EXPECT_TRUE(witness_violates(bad, *w));
  EXPECT_THROW(realize(bad), DomainError);

  EXPECT_TRUE(load_pair("nu(C2)").is_nu_setup());
}

TEST(Catalog, IdsUniqueAndResolvable) {
  auto cat = default_catalog();
  std::set<std::string> ids;
  for (const auto& e : cat) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    auto p = e.make_pair();
    EXPECT_TRUE(p.compatibility_checked()) << e.id;
    EXPECT_EQ(e.allow_large_groups, std::max(p.g().size(), p.h().size()) > 10) << e.id;
  }
  EXPECT_TRUE(find_entry(cat, "nu(quaternion8)"));
  EXPECT_FALSE(find_entry(cat, "nu(C9)"));
  const auto* s4 = find_entry(cat, "normal_pair(sym(4);klein4,alt(4))");
  ASSERT_TRUE(s4);
  EXPECT_TRUE(s4->allow_large_groups);
}

TEST(Suite, CoprimeTrivialPairs) {
  std::vector<CatalogEntry> sel{{"trivial(C2,C3)"}, {"trivial(C3,C4)"}, {"trivial(C4,C5)"}};
  auto rep = run_suite(sel, {});
  EXPECT_EQ(rep.exit_code(), 0);
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.status, EntryStatus::pass) << e.id;
    ASSERT_TRUE(e.report);
    EXPECT_EQ(e.report->tensor_order, 1u);
  }
  EXPECT_THROW(run_suite({}, {}), InputError);
}

TEST(Suite, ErrorsBecomeStatuses) {
  std::vector<CatalogEntry> sel{{"nu(sym(3))"}, {"bogus(C2)"}, {"nu(C12)"}};
  SuiteOptions opt;
  opt.limits.max_cosets = 100;
  auto rep = run_suite(sel, opt);
  EXPECT_EQ(rep.entries[0].status, EntryStatus::limit_exceeded);
  EXPECT_EQ(rep.entries[1].status, EntryStatus::input_error);
  EXPECT_EQ(rep.entries[2].status, EntryStatus::limit_exceeded);
  EXPECT_EQ(rep.exit_code(), 2);

  auto only_limits = run_suite({{"nu(sym(3))"}}, opt);
  EXPECT_EQ(only_limits.exit_code(), 0);
  opt.strict = true;
  EXPECT_EQ(run_suite({{"nu(sym(3))"}}, opt).exit_code(), 3);
}

TEST(Suite, FixturesMatchAndCorruptionIsCaught) {
  std::vector<CatalogEntry> sel{{"nu(C2)", {"nu"}}, {"trivial(C4,C6)", {"trivial-action"}}};
  auto first = run_suite(sel, {});
  FixtureSet fx;
  for (const auto& e : first.entries)
    fx.pin(e.id, e.report->to_json());
  auto file = temp_file("fixtures.json");
  fx.save(file);
  auto loaded = FixtureSet::load(file);

  SuiteOptions opt;
  opt.fixtures = &loaded;
  auto again = run_suite(sel, opt);
  EXPECT_EQ(again.exit_code(), 0);
  for (const auto& e : again.entries)
    EXPECT_EQ(e.fixture, "match");

  const auto* report = fx.find("nu(C2)");
  ASSERT_TRUE(report);
  auto corrupted = *report;
  corrupted["tensor_order"] = 3;
  FixtureSet bad;
  bad.pin("nu(C2)", corrupted);
  opt.fixtures = &bad;
  auto drift = run_suite(sel, opt);
  EXPECT_EQ(drift.entries[0].status, EntryStatus::fixture_mismatch);
  EXPECT_EQ(drift.entries[0].fixture_diff,
            std::vector<std::string>{"tensor_order: pinned 3, got 2"});
  EXPECT_EQ(drift.entries[1].fixture, "unpinned");
  EXPECT_EQ(drift.exit_code(), 1);

  // A hand-edited report no longer matches its digest.
  {
    std::ifstream in(file);
    auto j = nlohmann::ordered_json::parse(in);
    j["entries"]["nu(C2)"]["report"]["m"] = 5;
    std::ofstream(file) << j.dump();
  }
  EXPECT_THROW(FixtureSet::load(file), InputError);
}

TEST(Suite, JobsDoNotChangeOutput) {
  std::vector<CatalogEntry> sel{{"nu(C3)"}, {"nu(klein4)"}, {"trivial(C4,C6)"}, {"nu(sym(3))"}};
  SuiteOptions one, three;
  three.jobs = 3;
  std::ostringstream a, b, ta, tb;
  auto ra = run_suite(sel, one);
  auto rb = run_suite(sel, three);
  write_jsonl(a, ra);
  write_jsonl(b, rb);
  write_text(ta, ra);
  write_text(tb, rb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_NE(ta.str().find("4 entries: 4 pass"), std::string::npos);
}

TEST(Suite, EnvironmentCeiling) {
  ::setenv("ETA_MAX_COSETS", "1234", 1);
  EXPECT_EQ(limits_from_env().max_cosets, 1234u);
  ::setenv("ETA_MAX_COSETS", "12x", 1);
  EXPECT_THROW(limits_from_env(), InputError);
  ::unsetenv("ETA_MAX_COSETS");
  EXPECT_EQ(limits_from_env().max_cosets, kDefaultMaxCosets);
}

TEST(SearchExtremal, Examples) {
  auto two = search_extremal(2, 1'000'000);
  ASSERT_EQ(two.rows.size(), 1u);
  EXPECT_EQ(two.rows.begin()->first, 1u);
  EXPECT_EQ(two.rows.begin()->second.max_derivative_order, 1u);
  EXPECT_FALSE(two.partial);

  auto zero = search_extremal(3, 0);
  EXPECT_TRUE(zero.partial);
  EXPECT_TRUE(zero.rows.empty());
}

TEST(SearchExtremal, OrderFourCensus) {
  // Frozen from the first exhaustive run.
  auto c = search_extremal(4, 1'000'000);
  EXPECT_FALSE(c.partial);
  std::vector<std::array<std::size_t, 3>> rows;
  for (const auto& [m, r] : c.rows)
    rows.push_back({m, r.max_derivative_order, r.pairs});
  EXPECT_EQ(rows, (std::vector<std::array<std::size_t, 3>>{{1, 1, 52}, {2, 2, 36}, {3, 3, 5}, {4, 4, 2}}));
  std::uint64_t total = 0, comp = 0;
  for (const auto& p : c.pairs) {
    total += p.census.total;
    comp += p.census.compatible;
    for (const auto& w : p.census.witnesses)
      EXPECT_TRUE(witness_violates(w.pair, w.witness));
  }
  EXPECT_EQ(total, 191u);
  EXPECT_EQ(comp, 95u);
  // The derivative of a compatible pair never exceeds m.
  for (const auto& [m, r] : c.rows)
    EXPECT_LE(r.max_derivative_order, m);
}
