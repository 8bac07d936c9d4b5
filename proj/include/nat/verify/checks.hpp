#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nat/abelian/abelian_group.hpp"
#include "nat/action/action_pair.hpp"
#include "nat/eta/realization.hpp"
#include "nat/verify/check_result.hpp"

namespace nat {

namespace detail {

inline ojson factors_json(const AbelianGroup& a) {
  return ojson(a.invariant_factors());
}

inline EtaRealization::Coset coset_pow(const EtaRealization& e, EtaRealization::Coset a,
                                       std::size_t k) {
  EtaRealization::Coset r = 0;
  for (std::size_t i = 0; i < k; ++i)
    r = e.mul(r, a);
  return r;
}

inline bool divides(std::uint64_t d, std::uint64_t n) { return d != 0 && n % d == 0; }

// Exact m^(m n) when it fits in 63 bits.
inline std::optional<std::uint64_t> exact_power(std::uint64_t m, std::uint64_t e) {
  if (m <= 1)
    return 1;
  if (static_cast<double>(e) * std::log2(static_cast<double>(m)) >= 63.0)
    return std::nullopt;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i)
    r *= m;
  return r;
}

// tensor_order <= m^exponent_factor, in logarithms with the exact
// comparison whenever the bound fits a machine word.
inline void power_bound(CheckResult& r, const char* key, std::uint64_t tensor_order,
                        std::uint64_t m, std::uint64_t exponent_factor) {
  const std::uint64_t e = m * exponent_factor;
  ojson q;
  q["exponent"] = e;
  q["log2_tensor_order"] = std::log2(static_cast<double>(tensor_order));
  q["log2_bound"] = static_cast<double>(e) * std::log2(static_cast<double>(m));
  bool holds;
  if (m == 1) {
    holds = tensor_order == 1;
    q["bound"] = 1;
  } else if (auto exact = exact_power(m, e)) {
    holds = tensor_order <= *exact;
    q["bound"] = *exact;
  } else {
    holds = q["log2_tensor_order"].get<double>() <= q["log2_bound"].get<double>();
    q["bound"] = nullptr;
  }
  q["holds"] = holds;
  r.quantities[key] = q;
  if (!holds)
    r.fail_with({{"inequality", key}, {"tensor_order", tensor_order}, {"m", m},
                 {"exponent", e}});
}

} // namespace detail

/// [G,H] is finite (the closure terminates) and, when [G,H] is abelian,
/// [[g,h],k]^2 = [[g,h]^2,k] for all g in G and h, k in H.
inline CheckResult check_derivative_order(const ActionPair& p) {
  CheckResult r{"derivative_order"};
  const auto& G = p.g();
  const auto& H = p.h();
  auto d = derivative(p, Side::g_under_h);
  auto dh = derivative(p, Side::h_under_g);
  r.quantities["m"] = d.m;
  r.quantities["derivative_order"] = d.subgroup.size();
  r.quantities["m_hg"] = dh.m;
  r.quantities["derivative_order_hg"] = dh.subgroup.size();

  bool abelian = true;
  for (Elem a : d.subgroup)
    for (Elem b : d.subgroup)
      abelian = abelian && G.mul(a, b) == G.mul(b, a);
  r.quantities["derivative_abelian"] = abelian;
  if (!abelian) {
    r.quantities["square_identity"] = "not-applicable";
    return r;
  }
  std::size_t triples = 0;
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < H.size(); ++h) {
      Elem c = G.mul(G.inv(g), p.act_on_g(g, h));
      Elem c2 = G.mul(c, c);
      for (Elem k = 0; k < H.size(); ++k) {
        ++triples;
        Elem ck = G.mul(G.inv(c), p.act_on_g(c, k));
        Elem c2k = G.mul(G.inv(c2), p.act_on_g(c2, k));
        if (G.mul(ck, ck) != c2k)
          r.fail_with({{"g", g}, {"h", h}, {"k", k}});
      }
    }
  r.quantities["square_identity"] = r.failed() ? "fail" : "pass";
  r.quantities["triples_checked"] = triples;
  return r;
}

/// [x,y^phi]^(n+1) = [x,(y^2)^phi] [x^y,y^phi]^(n-1) for every x in G,
/// y in H, compared as elements of the realization.
inline CheckResult check_tensor_power_identity(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"tensor_power_identity"};
  const auto& p = e.pair();
  const auto& H = p.h();
  const std::size_t n = lm.n;
  std::size_t pairs = 0;
  for (Elem x = 0; x < p.g().size(); ++x)
    for (Elem y = 0; y < H.size(); ++y) {
      ++pairs;
      auto lhs = detail::coset_pow(e, e.tensor(x, y), n + 1);
      auto rhs = e.mul(e.tensor(x, H.mul(y, y)),
                       detail::coset_pow(e, e.tensor(p.act_on_g(x, y), y), n - 1));
      if (lhs != rhs)
        r.fail_with({{"x", x}, {"y", y}, {"lhs", lhs}, {"rhs", rhs}});
    }
  r.quantities["n"] = n;
  r.quantities["pairs_checked"] = pairs;
  return r;
}

/// ker lambda cap ker mu is central in eta(G,H); G centralizes ker mu and
/// H centralizes ker lambda.
inline CheckResult check_kernel_centrality(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"kernel_centrality"};
  const auto& p = e.pair();
  const auto& elems = e.tensor_subgroup_elements();
  std::size_t checked = 0;
  auto scan = [&](const std::vector<Elem>& kernel, bool use_g, bool use_h, const char* part) {
    for (Elem t : kernel) {
      auto k = elems[t];
      if (use_g)
        for (Elem g = 0; g < p.g().size(); ++g, ++checked)
          if (e.mul(k, e.g_elem(g)) != e.mul(e.g_elem(g), k))
            r.fail_with({{"part", part}, {"kernel_element", t}, {"side", "G"}, {"element", g}});
      if (use_h)
        for (Elem h = 0; h < p.h().size(); ++h, ++checked)
          if (e.mul(k, e.h_elem(h)) != e.mul(e.h_elem(h), k))
            r.fail_with({{"part", part}, {"kernel_element", t}, {"side", "H"}, {"element", h}});
    }
  };
  scan(lm.ker_both, true, true, "central");
  scan(lm.ker_mu, true, false, "G_on_ker_mu");
  scan(lm.ker_lambda, false, true, "H_on_ker_lambda");
  r.quantities["ker_lambda_order"] = lm.ker_lambda.size();
  r.quantities["ker_mu_order"] = lm.ker_mu.size();
  r.quantities["ker_both_order"] = lm.ker_both.size();
  r.quantities["commutations_checked"] = checked;
  return r;
}

/// |T : ker lambda| = |[G,H]| and |T : ker mu| = |[H,G]| with the
/// derivatives computed in the action pair; n divides both the tensor
/// order and |[G,H]| |[H,G]|.
inline CheckResult check_lambda_mu_index(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"lambda_mu_index"};
  const std::size_t t = e.tensor_order();
  const std::size_t d_gh = derivative(e.pair(), Side::g_under_h).subgroup.size();
  const std::size_t d_hg = derivative(e.pair(), Side::h_under_g).subgroup.size();
  const std::size_t il = t / lm.ker_lambda.size(), im = t / lm.ker_mu.size();
  r.quantities["tensor_order"] = t;
  r.quantities["index_ker_lambda"] = il;
  r.quantities["derivative_order"] = d_gh;
  r.quantities["index_ker_mu"] = im;
  r.quantities["derivative_order_hg"] = d_hg;
  r.quantities["n"] = lm.n;
  if (il != d_gh)
    r.fail_with({{"index", "ker_lambda"}, {"index_value", il}, {"derivative_order", d_gh}});
  if (im != d_hg)
    r.fail_with({{"index", "ker_mu"}, {"index_value", im}, {"derivative_order", d_hg}});
  if (!detail::divides(lm.n, d_gh * d_hg) || !detail::divides(lm.n, t))
    r.fail_with({{"n", lm.n}, {"product", d_gh * d_hg}, {"tensor_order", t}});
  return r;
}

/// n <= |[G,H]| |[H,G]| and |T| <= m^(m n).
inline CheckResult check_order_bounds(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"order_bound"};
  const std::uint64_t m = e.m(), n = lm.n, t = e.tensor_order();
  const std::uint64_t d_gh = lm.lambda.image().size(), d_hg = lm.mu.image().size();
  r.quantities["m"] = m;
  r.quantities["n"] = n;
  r.quantities["tensor_order"] = t;
  r.quantities["derivative_order"] = d_gh;
  r.quantities["derivative_order_hg"] = d_hg;
  r.quantities["index_bound"] = d_gh * d_hg;
  if (n > d_gh * d_hg)
    r.fail_with({{"inequality", "index"}, {"n", n}, {"bound", d_gh * d_hg}});
  detail::power_bound(r, "order", t, m, n);
  return r;
}

/// For conjugation setups, |T| <= m^(m |G'|).
inline CheckResult check_order_bound_derived_subgroup(const EtaRealization& e) {
  CheckResult r{"order_bound_derived_subgroup"};
  if (!e.pair().is_nu_setup()) {
    r.verdict = Verdict::not_applicable;
    r.note = "needs a conjugation setup";
    return r;
  }
  const std::uint64_t m = e.m(), t = e.tensor_order();
  const std::uint64_t d = derived_subgroup(e.pair().g()).size();
  r.quantities["m"] = m;
  r.quantities["derived_order"] = d;
  r.quantities["tensor_order"] = t;
  detail::power_bound(r, "order", t, m, d);
  return r;
}

/// exp(T) divides |G| |H| n, and n divides |G| |H|.
inline CheckResult check_exponent_divides(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"exponent_divides"};
  const std::uint64_t ex = exponent(e.tensor_table());
  const std::uint64_t gh = e.pair().g().size() * e.pair().h().size();
  r.quantities["exponent"] = ex;
  r.quantities["g_order"] = e.pair().g().size();
  r.quantities["h_order"] = e.pair().h().size();
  r.quantities["n"] = lm.n;
  r.quantities["modulus"] = gh * lm.n;
  if (!detail::divides(ex, gh * lm.n))
    r.fail_with({{"exponent", ex}, {"modulus", gh * lm.n}});
  if (!detail::divides(lm.n, gh))
    r.fail_with({{"n", lm.n}, {"g_times_h", gh}});
  return r;
}

/// Every element of T is a product of at most m n tensors.
inline CheckResult check_tensor_length(const EtaRealization& e, const LambdaMu& lm) {
  CheckResult r{"tensor_length"};
  const std::size_t len = e.max_tensor_length(), bound = e.m() * lm.n;
  r.quantities["max_length"] = len;
  r.quantities["m"] = e.m();
  r.quantities["n"] = lm.n;
  r.quantities["bound"] = bound;
  if (len > bound) {
    Elem far = 0;
    for (Elem i = 0; i < e.tensor_order(); ++i)
      if (e.tensor_length(i) == len)
        far = i;
    r.fail_with({{"element", far}, {"length", len}, {"bound", bound}});
  }
  return r;
}

/// With trivial actions, T is abelian with the invariants of
/// G^ab (x)_Z H^ab.
inline CheckResult check_trivial_action_iso(const EtaRealization& e) {
  CheckResult r{"trivial_action_iso"};
  const auto& p = e.pair();
  if (!p.trivial_actions()) {
    r.verdict = Verdict::not_applicable;
    r.note = "needs trivial actions";
    return r;
  }
  auto expected = tensor_Z(abelianization(p.g()), abelianization(p.h()));
  r.quantities["tensor_order"] = e.tensor_order();
  r.quantities["expected"] = detail::factors_json(expected);
  const auto& T = e.tensor_table();
  if (!T.is_abelian()) {
    r.quantities["realized"] = nullptr;
    r.fail_with({{"reason", "tensor subgroup is not abelian"}});
    return r;
  }
  auto got = abelian_structure(T);
  r.quantities["realized"] = detail::factors_json(got);
  if (!(got == expected))
    r.fail_with({{"realized", got.to_string()}, {"expected", expected.to_string()}});
  return r;
}

/// |eta| = |G| |H| |T| with G, H^phi, T intersecting as a semidirect
/// decomposition.
inline CheckResult check_decomposition(const EtaRealization& e) {
  CheckResult r{"decomposition"};
  auto d = decomposition_check(e);
  r.quantities["eta_order"] = d.eta_order;
  r.quantities["g_order"] = d.g_order;
  r.quantities["h_order"] = d.h_order;
  r.quantities["tensor_order"] = d.tensor_order;
  r.quantities["product"] = d.g_order * d.h_order * d.tensor_order;
  if (!d.ok || d.eta_order != d.g_order * d.h_order * d.tensor_order)
    r.fail_with({{"failure", d.failure}});
  return r;
}

/// |G^ab| divides |Delta(G)| for conjugation setups.
inline CheckResult check_abelianization_in_diagonal(const EtaRealization& e) {
  CheckResult r{"abelianization_in_diagonal"};
  if (!e.pair().is_nu_setup()) {
    r.verdict = Verdict::not_applicable;
    r.note = "needs a conjugation setup";
    return r;
  }
  const auto ab = abelianization(e.pair().g()).order();
  const auto diag = diagonal_subgroup(e).size();
  r.quantities["abelianization_order"] = ab;
  r.quantities["diagonal_order"] = diag;
  if (!detail::divides(ab, diag))
    r.fail_with({{"abelianization_order", ab}, {"diagonal_order", diag}});
  return r;
}

/// Finite G always has finitely generated abelianization, so the
/// implication has nothing to test; abelianization_in_diagonal carries the
/// content.
inline CheckResult check_finite_abelianization(const EtaRealization& e) {
  CheckResult r{"finite_abelianization"};
  r.verdict = Verdict::not_applicable;
  r.note = "vacuous for finite groups";
  if (e.pair().is_nu_setup())
    r.quantities["group_order"] = e.pair().g().size();
  return r;
}

/// Measurable relations among the finiteness conditions for nu(G):
/// tensors are commutators, T <= nu(G)', m <= #commutators,
/// Delta(G) <= T and |G^ab| divides |Delta(G)|.
inline CheckResult check_finiteness_profile(const EtaRealization& e,
                                            std::size_t tabulation_limit = kDefaultTabulationLimit) {
  CheckResult r{"finiteness_profile"};
  const auto& p = e.pair();
  if (!p.is_nu_setup()) {
    r.verdict = Verdict::not_applicable;
    r.note = "needs a conjugation setup";
    return r;
  }
  const auto& G = p.g();
  const GroupTable nu = e.multiplication_table(tabulation_limit);
  const std::size_t N = nu.size();

  std::vector<bool> is_comm(N, false);
  for (Elem a = 0; a < N; ++a)
    for (Elem b = 0; b < N; ++b)
      is_comm[nu.comm(a, b)] = true;
  std::vector<Elem> comms;
  for (Elem c = 0; c < N; ++c)
    if (is_comm[c])
      comms.push_back(c);
  auto derived = subgroup_closure(nu, comms);

  auto max_of = [](const std::vector<std::size_t>& v) { return *std::max_element(v.begin(), v.end()); };
  auto ab = abelianization(G);

  r.quantities["nu_order"] = N;
  r.quantities["commutator_count"] = comms.size();
  r.quantities["nu_derived_order"] = derived.size();
  r.quantities["tensor_order"] = e.tensor_order();
  r.quantities["max_class_size_nu"] = max_of(conjugacy_class_sizes(nu));
  r.quantities["max_class_size_g"] = max_of(conjugacy_class_sizes(G));
  r.quantities["abelianization_tensor_order"] = tensor_Z(ab, ab).order();
  r.quantities["m"] = e.m();

  for (auto t : e.tensor_elements())
    if (!is_comm[t])
      r.fail_with({{"relation", "tensor is a commutator"}, {"element", t}});
  for (auto t : e.tensor_subgroup_elements())
    if (!std::binary_search(derived.begin(), derived.end(), static_cast<Elem>(t)))
      r.fail_with({{"relation", "T inside nu(G)'"}, {"element", t}});
  if (e.m() > comms.size())
    r.fail_with({{"relation", "m <= commutator count"}, {"m", e.m()}, {"commutators", comms.size()}});

  std::vector<Elem> seeds;
  for (Elem g = 0; g < G.size(); ++g)
    seeds.push_back(static_cast<Elem>(e.tensor(g, g)));
  auto delta = subgroup_closure(nu, seeds);
  r.quantities["diagonal_order"] = delta.size();
  r.quantities["abelianization_order"] = ab.order();
  for (Elem d : delta)
    if (!e.in_tensor_subgroup(d))
      r.fail_with({{"relation", "Delta(G) inside T"}, {"element", d}});
  if (!detail::divides(ab.order(), delta.size()))
    r.fail_with({{"relation", "|G^ab| divides |Delta(G)|"}, {"abelianization_order", ab.order()},
                 {"diagonal_order", delta.size()}});
  return r;
}

} // namespace nat
