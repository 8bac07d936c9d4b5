#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "nat/core/fingerprint.hpp"
#include "nat/core/group_table.hpp"
#include "nat/core/group_table_json.hpp"
#include "nat/core/homomorphism.hpp"
#include "nat/core/perm_group.hpp"
#include "nat/harness/builtin_groups.hpp"
#include "support/oracles.hpp"

using namespace nat;

namespace {

std::vector<GroupTable> all_builtins() {
  std::vector<GroupTable> v;
  for (std::size_t n = 1; n <= 12; ++n)
    v.push_back(cyclic_group(n));
  for (std::size_t n = 2; n <= 12; n += 2)
    v.push_back(dihedral_group(n));
  v.push_back(klein_four_group());
  v.push_back(quaternion_group());
  v.push_back(symmetric_group(3));
  v.push_back(symmetric_group(4));
  v.push_back(alternating_group(4));
  v.push_back(elementary_abelian_group(2, 3));
  v.push_back(elementary_abelian_group(3, 2));
  return v;
}

oracle::Perm images(const Permutation& p) {
  return {p.images().begin(), p.images().end()};
}

} // namespace

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), InputError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3}), InputError);
}

TEST(Permutation, ComposesLeftToRight) {
  auto a = Permutation::from_cycles(3, {{0, 1}});
  auto b = Permutation::from_cycles(3, {{1, 2}});
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(SchreierSims, SymmetricGroupOnThreePoints) {
  PermutationGroup g(3, {Permutation::from_cycles(3, {{0, 1}}),
                         Permutation::from_cycles(3, {{0, 1, 2}})});
  auto r = schreier_sims(g);
  EXPECT_EQ(r.order, 6u);
  EXPECT_TRUE(r.contains(Permutation::from_cycles(3, {{0, 2}})));
}

TEST(SchreierSims, EmptyGeneratingSet) {
  PermutationGroup g(5);
  auto r = schreier_sims(g);
  EXPECT_EQ(r.order, 1u);
  EXPECT_TRUE(r.contains(Permutation(5)));
  EXPECT_FALSE(r.contains(Permutation::from_cycles(5, {{3, 4}})));
}

TEST(SchreierSims, QuaternionRegularRepresentationMatchesClosure) {
  auto reg = regular_representation(quaternion_group());
  std::vector<oracle::Perm> gens;
  for (const auto& p : reg.generators())
    gens.push_back(images(p));
  EXPECT_EQ(oracle::closure(8, gens).size(), 8u);
  EXPECT_EQ(reg.order(), 8u);
}

TEST(SchreierSims, MembershipDegreeMismatchThrows) {
  PermutationGroup g(3, {Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_THROW(g.contains(Permutation(4)), InputError);
}

TEST(SchreierSims, BaseIsAscendingAndDeterministic) {
  PermutationGroup g(6, {Permutation::from_cycles(6, {{3, 4, 5}}),
                         Permutation::from_cycles(6, {{0, 1}, {4, 5}})});
  auto a = g.bsgs()->base();
  auto b = g.bsgs()->base();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.front(), 3u);
}

// Random small permutation groups: Schreier-Sims order == brute-force closure,
// and membership agrees with the closure on random permutations.
TEST(SchreierSims, PropertyOrderMatchesClosure) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t degree = 2 + rng() % 6;
    std::size_t ngens = rng() % 4;
    std::vector<Permutation> gens;
    std::vector<oracle::Perm> raw;
    for (std::size_t i = 0; i < ngens; ++i) {
      std::vector<Point> img(degree);
      std::iota(img.begin(), img.end(), 0u);
      // Sparse generators keep many of the groups proper subgroups.
      for (int s = 0; s < 2; ++s)
        std::swap(img[rng() % degree], img[rng() % degree]);
      gens.emplace_back(img);
      raw.push_back(img);
    }
    PermutationGroup g(degree, gens);
    auto closure = oracle::closure(degree, raw);
    ASSERT_EQ(g.order(), closure.size()) << "trial " << trial;

    auto bsgs = g.bsgs();
    for (int q = 0; q < 20; ++q) {
      std::vector<Point> img(degree);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      EXPECT_EQ(bsgs->contains(Permutation(img)), closure.count(img) == 1);
    }
  }
}

TEST(SubgroupGenerated, Examples) {
  EXPECT_EQ(subgroup_generated(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}})}).order(), 2u);
  EXPECT_EQ(subgroup_generated(4, {}).order(), 1u);
  auto t1 = Permutation::from_cycles(3, {{0, 1}});
  auto t2 = Permutation::from_cycles(3, {{1, 2}});
  EXPECT_EQ(oracle::closure(3, {images(t1), images(t2)}).size(), 6u);
  EXPECT_EQ(subgroup_generated(3, {t1, t2}).order(), 6u);
  EXPECT_THROW(subgroup_generated(3, {Permutation(4)}), InputError);
}

TEST(TableFromPermGroup, Examples) {
  auto triv = table_from_perm_group(PermutationGroup(3), 10);
  EXPECT_EQ(triv.table.size(), 1u);

  auto c2 = table_from_perm_group(PermutationGroup(2, {Permutation::from_cycles(2, {{0, 1}})}), 10);
  EXPECT_EQ(c2.table.size(), 2u);
  EXPECT_EQ(c2.table.mul(1, 1), 0u);

  PermutationGroup d8(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}}),
                          Permutation::from_cycles(4, {{1, 3}})});
  auto t = table_from_perm_group(d8, 100);
  ASSERT_EQ(t.table.size(), 8u);
  EXPECT_FALSE(t.table.associativity_witness());
  EXPECT_TRUE(t.elements[0].is_identity());
  EXPECT_TRUE(std::is_sorted(t.elements.begin() + 1, t.elements.end()));
  for (Elem a = 0; a < 8; ++a) {
    EXPECT_EQ(t.table.mul(a, t.table.inv(a)), 0u);
    for (Elem b = 0; b < 8; ++b)
      EXPECT_EQ(t.elements[t.table.mul(a, b)], t.elements[a] * t.elements[b]);
  }
}

TEST(TableFromPermGroup, LimitCarriesOrder) {
  PermutationGroup s4(4, {Permutation::from_cycles(4, {{0, 1}}),
                          Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  try {
    table_from_perm_group(s4, 10);
    FAIL() << "expected ResourceLimit";
  } catch (const ResourceLimit& e) {
    EXPECT_EQ(e.observed(), 24u);
    EXPECT_EQ(e.limit(), 10u);
  }
}

TEST(RegularRepresentation, Examples) {
  auto c3 = regular_representation(cyclic_group(3));
  EXPECT_EQ(c3.degree(), 3u);
  EXPECT_EQ(c3.order(), 3u);

  auto v4 = regular_representation(klein_four_group());
  EXPECT_EQ(v4.order(), 4u);
  for (std::size_t i = 1; i < 4; ++i) {
    const auto& p = v4.generators()[i];
    EXPECT_TRUE((p * p).is_identity());
    for (Point x = 0; x < 4; ++x)
      EXPECT_NE(p[x], x);
  }

  auto q8 = table_from_perm_group(regular_representation(quaternion_group()), 100);
  EXPECT_EQ(q8.table.size(), 8u);
  std::size_t e = 1;
  for (Elem a = 0; a < 8; ++a)
    e = std::lcm(e, q8.table.element_order(a));
  EXPECT_EQ(e, 4u);
}

TEST(RegularRepresentation, OrderAndTransitivityForAllBuiltins) {
  for (const auto& t : all_builtins()) {
    auto g = regular_representation(t);
    EXPECT_EQ(g.order(), t.size()) << t.name();
    std::set<Point> orbit;
    for (const auto& p : g.generators())
      orbit.insert(p[0]);
    EXPECT_EQ(orbit.size(), t.size()) << t.name();
  }
}

TEST(GroupTable, RejectsBadTables) {
  EXPECT_THROW(GroupTable::from_rows({{0, 1}, {1, 1}}), InputError);
  EXPECT_THROW(GroupTable::from_rows({{1, 0}, {0, 1}}), InputError);
  EXPECT_THROW(GroupTable::from_rows({{0, 1, 2}, {1, 2}, {2, 0, 1}}), InputError);
  // Latin square with identity that is not associative (a loop of order 5).
  EXPECT_THROW(GroupTable::from_rows({{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}}),
               InputError);
}

TEST(GroupTable, InvariantsForAllBuiltins) {
  for (const auto& t : all_builtins()) {
    for (Elem x = 0; x < t.size(); ++x) {
      EXPECT_EQ(t.mul(0, x), x);
      EXPECT_EQ(t.mul(x, t.inv(x)), 0u);
    }
    EXPECT_FALSE(t.associativity_witness()) << t.name();
  }
}

TEST(GroupTable, JsonRoundTripRecomputesInverses) {
  auto q = quaternion_group();
  auto j = table_to_json(q);
  EXPECT_FALSE(j.contains("inv"));
  auto back = table_from_json(j);
  EXPECT_EQ(back, q);
  EXPECT_EQ(back.name(), "Q8");
  nlohmann::json bad = {{"size", 2}, {"mult", {{1, 0}, {0, 1}}}};
  EXPECT_THROW(table_from_json(bad), InputError);
}

TEST(DerivedSubgroup, Examples) {
  EXPECT_EQ(derived_subgroup(cyclic_group(6)), std::vector<Elem>{0});
  EXPECT_EQ(derived_subgroup(klein_four_group()), std::vector<Elem>{0});
  EXPECT_EQ(derived_subgroup(symmetric_group(3)).size(), 3u);

  auto d8 = dihedral_group(8);
  auto comm = [&](Elem a, Elem b) { return d8.comm(a, b); };
  std::set<std::uint32_t> seeds;
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b)
      seeds.insert(comm(a, b));
  auto brute = oracle::generated(8, [&](auto a, auto b) { return d8.mul(a, b); }, seeds);
  EXPECT_EQ(brute.size(), 2u);
  EXPECT_EQ(derived_subgroup(d8).size(), 2u);
}

TEST(DerivedSubgroup, IsNormalForAllBuiltins) {
  for (const auto& t : all_builtins())
    EXPECT_TRUE(is_normal_subset(t, derived_subgroup(t))) << t.name();
}

TEST(Exponent, Examples) {
  EXPECT_EQ(exponent(cyclic_group(6)), 6u);
  EXPECT_EQ(exponent(klein_four_group()), 2u);
  auto s3 = symmetric_group(3);
  std::size_t e = 1;
  for (Elem a = 0; a < 6; ++a) {
    std::size_t k = 1;
    for (Elem x = a; x != 0; x = s3.mul(x, a))
      ++k;
    e = std::lcm(e, k);
  }
  EXPECT_EQ(e, 6u);
  EXPECT_EQ(exponent(s3), 6u);
}

TEST(Exponent, DividesOrderForAllBuiltins) {
  for (const auto& t : all_builtins())
    EXPECT_EQ(t.size() % exponent(t), 0u) << t.name();
}

TEST(ConjugacyClasses, Examples) {
  EXPECT_EQ(conjugacy_class_sizes(cyclic_group(5)), std::vector<std::size_t>(5, 1));
  EXPECT_EQ(conjugacy_class_sizes(symmetric_group(3)), (std::vector<std::size_t>{1, 2, 3}));

  // Orbit oracle for Q8: conjugate each element by everything.
  auto q = quaternion_group();
  std::multiset<std::size_t> sizes;
  std::set<std::set<Elem>> classes;
  for (Elem a = 0; a < 8; ++a) {
    std::set<Elem> cls;
    for (Elem g = 0; g < 8; ++g)
      cls.insert(q.mul(q.mul(q.inv(g), a), g));
    classes.insert(cls);
  }
  for (const auto& c : classes)
    sizes.insert(c.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 1, 2, 2, 2}));
  EXPECT_EQ(conjugacy_class_sizes(q), (std::vector<std::size_t>{1, 1, 2, 2, 2}));
}

TEST(ConjugacyClasses, SumToOrder) {
  for (const auto& t : all_builtins()) {
    auto s = conjugacy_class_sizes(t);
    EXPECT_EQ(std::accumulate(s.begin(), s.end(), std::size_t{0}), t.size()) << t.name();
  }
}

TEST(Homomorphism, DetectsViolations) {
  auto c4 = std::make_shared<const GroupTable>(cyclic_group(4));
  auto c2 = std::make_shared<const GroupTable>(cyclic_group(2));
  Homomorphism mod2(c4, c2, {0, 1, 0, 1});
  EXPECT_FALSE(mod2.violation());
  EXPECT_EQ(mod2.kernel(), (std::vector<Elem>{0, 2}));
  Homomorphism bad(c4, c2, {0, 1, 1, 0});
  EXPECT_TRUE(bad.violation());
}

TEST(Builtins, Examples) {
  EXPECT_EQ(builtin_group("cyclic(1)").size(), 1u);
  auto s3 = builtin_group("sym(3)");
  EXPECT_EQ(s3.size(), 6u);
  EXPECT_EQ(conjugacy_class_sizes(s3), (std::vector<std::size_t>{1, 2, 3}));
  auto q = builtin_group("quaternion8");
  EXPECT_EQ(q.size(), 8u);
  EXPECT_EQ(exponent(q), 4u);
  EXPECT_EQ(derived_subgroup(q).size(), 2u);
  EXPECT_EQ(builtin_group("D8"), dihedral_group(8));
  EXPECT_EQ(builtin_group(" elem_abelian(2, 3) ").size(), 8u);
  EXPECT_THROW(builtin_group("cyclic(13)"), InputError);
  EXPECT_THROW(builtin_group("mystery"), InputError);
}

TEST(Fingerprint, OrderEightGroups) {
  std::set<std::string> fps;
  for (const auto& t : {cyclic_group(8), dihedral_group(8), quaternion_group(),
                        elementary_abelian_group(2, 3), direct_product(cyclic_group(2), cyclic_group(4))})
    fps.insert(fingerprint(t).to_string());
  // D8 and Q8 agree on order, exponent and class sizes.
  EXPECT_EQ(fps.size(), 4u);
  EXPECT_EQ(fingerprint(dihedral_group(8)), fingerprint(quaternion_group()));
}
