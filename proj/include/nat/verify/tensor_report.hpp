#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nat/core/fingerprint.hpp"
#include "nat/verify/checks.hpp"

namespace nat {

struct VerifyOptions {
  std::size_t tabulation_limit = kDefaultTabulationLimit;
};

/// Every check on one realization, in a fixed order.
inline std::vector<CheckResult> run_checks(const EtaRealization& e, const LambdaMu& lm,
                                           const VerifyOptions& opt = {}) {
  std::vector<CheckResult> out;
  out.push_back(check_decomposition(e));
  out.push_back(check_derivative_order(e.pair()));
  out.push_back(check_lambda_mu_index(e, lm));
  out.push_back(check_tensor_power_identity(e, lm));
  out.push_back(check_kernel_centrality(e, lm));
  out.push_back(check_order_bounds(e, lm));
  out.push_back(check_order_bound_derived_subgroup(e));
  out.push_back(check_exponent_divides(e, lm));
  out.push_back(check_tensor_length(e, lm));
  out.push_back(check_trivial_action_iso(e));
  out.push_back(check_abelianization_in_diagonal(e));
  out.push_back(check_finite_abelianization(e));
  try {
    out.push_back(check_finiteness_profile(e, opt.tabulation_limit));
  } catch (const ResourceLimit& x) {
    CheckResult r{"finiteness_profile", Verdict::not_applicable};
    r.quantities["limit"] = x.limit();
    r.quantities["observed"] = x.observed();
    r.note = "limit-exceeded: " + std::string(x.what());
    out.push_back(std::move(r));
  }
  return out;
}

inline ojson fingerprint_json(const Fingerprint& f) {
  ojson j;
  j["order"] = f.order;
  j["exponent"] = f.exponent;
  j["class_sizes"] = f.class_sizes;
  j["abelian_invariants"] = f.abelian ? ojson(f.abelian->invariant_factors()) : ojson(nullptr);
  return j;
}

/// The quantities the bounds talk about, plus one verdict per check.
struct TensorReport {
  std::string pair;
  std::size_t g_order = 1, h_order = 1, eta_order = 1;
  std::size_t m = 1;
  std::size_t d_gh = 1, d_hg = 1;
  std::size_t tensor_order = 1;
  std::size_t n = 1;
  std::size_t exponent = 1;
  std::size_t max_tensor_length = 0;
  Fingerprint fingerprint;
  std::vector<std::pair<std::string, Verdict>> verdicts;

  ojson to_json() const {
    ojson j;
    j["pair"] = pair;
    j["g_order"] = g_order;
    j["h_order"] = h_order;
    j["eta_order"] = eta_order;
    j["m"] = m;
    j["d_gh"] = d_gh;
    j["d_hg"] = d_hg;
    j["tensor_order"] = tensor_order;
    j["n"] = n;
    j["exponent"] = exponent;
    j["max_tensor_length"] = max_tensor_length;
    j["fingerprint"] = fingerprint_json(fingerprint);
    ojson v = ojson::object();
    for (const auto& [id, verdict] : verdicts)
      v[id] = verdict_name(verdict);
    j["verdicts"] = v;
    return j;
  }
};

inline TensorReport make_report(const EtaRealization& e, const LambdaMu& lm,
                                const std::vector<CheckResult>& checks) {
  TensorReport r;
  const auto& p = e.pair();
  r.pair = p.name();
  r.g_order = p.g().size();
  r.h_order = p.h().size();
  r.eta_order = e.order();
  r.m = e.m();
  r.d_gh = derivative(p, Side::g_under_h).subgroup.size();
  r.d_hg = derivative(p, Side::h_under_g).subgroup.size();
  r.tensor_order = e.tensor_order();
  r.n = lm.n;
  r.exponent = exponent(e.tensor_table());
  r.max_tensor_length = e.max_tensor_length();
  r.fingerprint = fingerprint(e.tensor_table());
  for (const auto& c : checks)
    r.verdicts.emplace_back(c.check_id, c.verdict);
  if (!detail::divides(r.n, r.d_gh * r.d_hg) || !detail::divides(r.n, r.tensor_order))
    throw InvariantViolation("report for " + r.pair + ": n does not divide its bounds");
  return r;
}

} // namespace nat
