#include <gtest/gtest.h>

#include <set>

#include "nat/harness/builtin_groups.hpp"
#include "nat/verify/tensor_report.hpp"

using namespace nat;

namespace {

struct Realized {
  EtaRealization e;
  LambdaMu lm;
  explicit Realized(const ActionPair& p) : e(realize(p)), lm(lambda_mu(e)) {}
};

std::size_t commutator_set_size(const GroupTable& t) {
  std::set<Elem> s;
  for (Elem a = 0; a < t.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b)
      s.insert(t.comm(a, b));
  return s.size();
}

// Longest shortest product of tensors, by BFS over tensor_table().
std::size_t tensor_eccentricity(const EtaRealization& e) {
  const auto& T = e.tensor_table();
  std::set<Elem> gens;
  for (Elem g = 0; g < e.pair().g().size(); ++g)
    for (Elem h = 0; h < e.pair().h().size(); ++h)
      gens.insert(e.tensor_in_table(g, h));
  std::vector<int> dist(T.size(), -1);
  dist[0] = 0;
  std::vector<Elem> q{0};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (Elem s : gens) {
      Elem y = T.mul(q[i], s);
      if (dist[y] < 0) {
        dist[y] = dist[q[i]] + 1;
        q.push_back(y);
      }
    }
  return static_cast<std::size_t>(*std::max_element(dist.begin(), dist.end()));
}

} // namespace

TEST(CheckResult, FailNeedsWitness) {
  CheckResult r{"x", Verdict::fail};
  EXPECT_THROW(r.to_json(), InvariantViolation);
  r.fail_with({{"a", 1}});
  auto j = r.to_json();
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j.begin().key(), "check");
  EXPECT_EQ(verdict_from_name("not-applicable"), Verdict::not_applicable);
  EXPECT_THROW(verdict_from_name("maybe"), InputError);
}

TEST(DerivativeOrder, Examples) {
  auto t = check_derivative_order(trivial_pair(cyclic_group(2), cyclic_group(3)));
  EXPECT_EQ(t.verdict, Verdict::pass);
  EXPECT_EQ(t.quantities["m"], 1);
  EXPECT_EQ(t.quantities["derivative_order"], 1);

  auto s3 = symmetric_group(3);
  auto s = check_derivative_order(nu_pair(s3));
  EXPECT_EQ(s.verdict, Verdict::pass);
  EXPECT_EQ(s.quantities["m"], commutator_set_size(s3));
  EXPECT_EQ(s.quantities["derivative_order"], 3);
  EXPECT_EQ(s.quantities["square_identity"], "pass");

  auto q8 = quaternion_group();
  auto q = check_derivative_order(nu_pair(q8));
  EXPECT_EQ(q.quantities["derivative_order"], derived_subgroup(q8).size());
  EXPECT_EQ(q.quantities["derivative_order"], 2);
}

TEST(DerivativeOrder, SquareIdentitySkippedForNonabelianDerivative) {
  auto r = check_derivative_order(nu_pair(symmetric_group(4)));
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.quantities["derivative_abelian"], false);
  EXPECT_EQ(r.quantities["square_identity"], "not-applicable");
  EXPECT_EQ(r.quantities["derivative_order"], 12);
}

TEST(TensorPowerIdentity, Examples) {
  Realized t(trivial_pair(cyclic_group(4), cyclic_group(6)));
  auto a = check_tensor_power_identity(t.e, t.lm);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.quantities["n"], 1);
  EXPECT_EQ(a.quantities["pairs_checked"], 24);

  Realized c2(nu_pair(cyclic_group(2)));
  EXPECT_EQ(check_tensor_power_identity(c2.e, c2.lm).verdict, Verdict::pass);

  Realized s3(nu_pair(symmetric_group(3)));
  auto s = check_tensor_power_identity(s3.e, s3.lm);
  EXPECT_EQ(s.verdict, Verdict::pass);
  EXPECT_EQ(s.quantities["pairs_checked"], 36);
}

TEST(KernelCentrality, Examples) {
  Realized t(trivial_pair(cyclic_group(4), cyclic_group(6)));
  auto a = check_kernel_centrality(t.e, t.lm);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.quantities["ker_both_order"], t.e.tensor_order());

  Realized s3(nu_pair(symmetric_group(3)));
  EXPECT_EQ(check_kernel_centrality(s3.e, s3.lm).verdict, Verdict::pass);
  Realized q8(nu_pair(quaternion_group()));
  EXPECT_EQ(check_kernel_centrality(q8.e, q8.lm).verdict, Verdict::pass);
}

TEST(OrderBounds, Examples) {
  Realized c2(trivial_pair(cyclic_group(2), cyclic_group(2)));
  auto a = check_order_bounds(c2.e, c2.lm);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.quantities["m"], 2);
  EXPECT_EQ(a.quantities["n"], 1);
  EXPECT_EQ(a.quantities["tensor_order"], 2);
  EXPECT_EQ(a.quantities["order"]["bound"], 4);

  Realized cop(trivial_pair(cyclic_group(2), cyclic_group(3)));
  auto b = check_order_bounds(cop.e, cop.lm);
  EXPECT_EQ(b.quantities["m"], 1);
  EXPECT_EQ(b.verdict, Verdict::pass);

  Realized s3(nu_pair(symmetric_group(3)));
  EXPECT_EQ(check_order_bounds(s3.e, s3.lm).verdict, Verdict::pass);
  auto c = check_order_bound_derived_subgroup(s3.e);
  EXPECT_EQ(c.verdict, Verdict::pass);
  EXPECT_EQ(c.quantities["derived_order"], 3);
  EXPECT_EQ(check_order_bound_derived_subgroup(cop.e).verdict, Verdict::not_applicable);
}

TEST(OrderBounds, ViolationCarriesWitness) {
  CheckResult r{"probe"};
  detail::power_bound(r, "order", 5, 2, 1);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ((*r.witness)["tensor_order"], 5);
  CheckResult one{"probe"};
  detail::power_bound(one, "order", 2, 1, 7);
  EXPECT_EQ(one.verdict, Verdict::fail);
  CheckResult big{"probe"};
  detail::power_bound(big, "order", 1000, 40, 2);
  EXPECT_EQ(big.verdict, Verdict::pass);
  EXPECT_TRUE(big.quantities["order"]["bound"].is_null());
}

TEST(ExponentDivides, Examples) {
  Realized t(trivial_pair(cyclic_group(4), cyclic_group(6)));
  auto a = check_exponent_divides(t.e, t.lm);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.quantities["exponent"], 2);
  EXPECT_EQ(a.quantities["modulus"], 24);

  Realized c2(nu_pair(cyclic_group(2)));
  auto b = check_exponent_divides(c2.e, c2.lm);
  EXPECT_EQ(b.quantities["exponent"], 2);
  EXPECT_EQ(b.verdict, Verdict::pass);

  Realized q8(nu_pair(quaternion_group()));
  EXPECT_EQ(check_exponent_divides(q8.e, q8.lm).verdict, Verdict::pass);
}

TEST(TensorLength, Examples) {
  Realized cop(trivial_pair(cyclic_group(3), cyclic_group(4)));
  EXPECT_EQ(check_tensor_length(cop.e, cop.lm).quantities["max_length"], 0);

  Realized c2(nu_pair(cyclic_group(2)));
  EXPECT_EQ(check_tensor_length(c2.e, c2.lm).quantities["max_length"], 1);

  for (const auto& g : {symmetric_group(3), quaternion_group(), klein_four_group()}) {
    Realized r(nu_pair(g));
    auto c = check_tensor_length(r.e, r.lm);
    EXPECT_EQ(c.verdict, Verdict::pass) << g.name();
    EXPECT_EQ(c.quantities["max_length"], tensor_eccentricity(r.e)) << g.name();
  }
}

TEST(TrivialActionIso, Examples) {
  Realized a(trivial_pair(cyclic_group(2), cyclic_group(3)));
  auto ra = check_trivial_action_iso(a.e);
  EXPECT_EQ(ra.verdict, Verdict::pass);
  EXPECT_EQ(ra.quantities["realized"], ojson::array());

  Realized b(trivial_pair(cyclic_group(4), cyclic_group(6)));
  EXPECT_EQ(check_trivial_action_iso(b.e).quantities["realized"], ojson({2}));

  Realized c(trivial_pair(klein_four_group(), cyclic_group(2)));
  auto rc = check_trivial_action_iso(c.e);
  EXPECT_EQ(rc.verdict, Verdict::pass);
  EXPECT_EQ(rc.quantities["realized"], ojson({2, 2}));

  Realized s3(nu_pair(symmetric_group(3)));
  EXPECT_EQ(check_trivial_action_iso(s3.e).verdict, Verdict::not_applicable);
}

TEST(FinitenessProfile, Examples) {
  Realized c2(nu_pair(cyclic_group(2)));
  auto a = check_finiteness_profile(c2.e);
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_EQ(a.quantities["nu_order"], 8);
  EXPECT_EQ(a.quantities["m"], 2);

  for (const auto& g : {klein_four_group(), symmetric_group(3)}) {
    Realized r(nu_pair(g));
    auto p = check_finiteness_profile(r.e);
    EXPECT_EQ(p.verdict, Verdict::pass) << g.name();
    auto sizes = conjugacy_class_sizes(g);
    EXPECT_EQ(p.quantities["max_class_size_g"], *std::ranges::max_element(sizes));
    EXPECT_EQ(p.quantities["commutator_count"], commutator_set_size(r.e.multiplication_table()));
    EXPECT_EQ(p.quantities["diagonal_order"], diagonal_subgroup(r.e).size());
  }
  Realized t(trivial_pair(cyclic_group(2), cyclic_group(3)));
  EXPECT_EQ(check_finiteness_profile(t.e).verdict, Verdict::not_applicable);
  EXPECT_THROW(check_finiteness_profile(c2.e, 4), ResourceLimit);
}

TEST(MultiplicationTable, AgreesWithCosetArithmetic) {
  Realized s3(nu_pair(symmetric_group(3)));
  auto t = s3.e.multiplication_table();
  EXPECT_EQ(t.size(), 216u);
  for (Elem a = 0; a < t.size(); a += 7)
    for (Elem b = 0; b < t.size(); b += 5)
      EXPECT_EQ(t.mul(a, b), s3.e.mul(a, b));
}

TEST(Diagonal, AbelianizationDividesItAndTheLimitIsVacuous) {
  Realized v(nu_pair(klein_four_group()));
  auto r = check_abelianization_in_diagonal(v.e);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.quantities["abelianization_order"], 4);
  EXPECT_EQ(check_finite_abelianization(v.e).verdict, Verdict::not_applicable);
}

TEST(Report, NuC2AndDeterminism) {
  Realized c2(nu_pair(cyclic_group(2)));
  auto checks = run_checks(c2.e, c2.lm);
  for (const auto& c : checks)
    EXPECT_NE(c.verdict, Verdict::fail) << c.to_json().dump();
  auto rep = make_report(c2.e, c2.lm, checks).to_json();
  EXPECT_EQ(rep["eta_order"], 8);
  EXPECT_EQ(rep["tensor_order"], 2);
  EXPECT_EQ(rep["m"], 2);
  EXPECT_EQ(rep["fingerprint"]["abelian_invariants"], ojson({2}));

  Realized again(nu_pair(cyclic_group(2)));
  auto checks2 = run_checks(again.e, again.lm);
  ASSERT_EQ(checks.size(), checks2.size());
  for (std::size_t i = 0; i < checks.size(); ++i)
    EXPECT_EQ(checks[i].to_json().dump(), checks2[i].to_json().dump());
  EXPECT_EQ(make_report(again.e, again.lm, checks2).to_json().dump(), rep.dump());
}
