#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nat/core/group_table.hpp"
#include "nat/errors.hpp"

namespace nat {

/// act[actor][x] = x^actor.
using ActionTable = std::vector<std::vector<Elem>>;

enum class Side { g_under_h, h_under_g };

inline const char* to_string(Side s) {
  return s == Side::g_under_h ? "G_under_H" : "H_under_G";
}

struct AxiomViolation {
  std::string axiom;
  std::vector<Elem> witness;

  std::string to_string() const {
    std::ostringstream os;
    os << axiom << " at (";
    for (std::size_t i = 0; i < witness.size(); ++i)
      os << (i ? "," : "") << witness[i];
    os << ')';
    return os.str();
  }
};

struct ActionValidation {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations)
      s += (s.empty() ? "" : "; ") + v.to_string();
    return s;
  }
};

namespace detail {

inline void check_action_dims(const GroupTable& target, const GroupTable& actor,
                              const ActionTable& act, const char* what) {
  if (act.size() != actor.size())
    throw InputError(std::string(what) + ": need one row per acting element (" +
                     std::to_string(actor.size()) + "), got " +
                     std::to_string(act.size()));
  for (const auto& row : act) {
    if (row.size() != target.size())
      throw InputError(std::string(what) + ": row length " + std::to_string(row.size()) +
                       " differs from group order " + std::to_string(target.size()));
    for (Elem x : row)
      if (x >= target.size())
        throw InputError(std::string(what) + ": element index out of range");
  }
}

// First witness of each failed axiom for one direction. `prefix` names the
// direction in the report.
inline void validate_one_side(const GroupTable& target, const GroupTable& actor,
                              const ActionTable& act, const std::string& prefix,
                              std::vector<AxiomViolation>& out) {
  for (Elem a = 0; a < actor.size(); ++a) {
    std::vector<bool> hit(target.size(), false);
    for (Elem x : act[a])
      hit[x] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      out.push_back({prefix + ".bijective", {a}});
      break;
    }
  }
  for (Elem a = 0; a < actor.size(); ++a)
    if (act[a][0] != 0) {
      out.push_back({prefix + ".identity_fixed", {a}});
      break;
    }
  [&] {
    for (Elem a = 0; a < actor.size(); ++a)
      for (Elem x = 0; x < target.size(); ++x)
        for (Elem y = 0; y < target.size(); ++y)
          if (act[a][target.mul(x, y)] != target.mul(act[a][x], act[a][y])) {
            out.push_back({prefix + ".automorphism", {a, x, y}});
            return;
          }
  }();
  for (Elem x = 0; x < target.size(); ++x)
    if (act[0][x] != x) {
      out.push_back({prefix + ".identity_acts_trivially", {x}});
      break;
    }
  [&] {
    for (Elem a = 0; a < actor.size(); ++a)
      for (Elem b = 0; b < actor.size(); ++b)
        for (Elem x = 0; x < target.size(); ++x)
          if (act[actor.mul(a, b)][x] != act[b][act[a][x]]) {
            out.push_back({prefix + ".homomorphic_in_actor", {a, b, x}});
            return;
          }
  }();
}

} // namespace detail

/// Checks that both arrays are right actions by automorphisms. Throws
/// InputError on dimensional mismatch; every other failure is reported.
inline ActionValidation validate_actions(const GroupTable& g, const GroupTable& h,
                                         const ActionTable& h_on_g,
                                         const ActionTable& g_on_h) {
  detail::check_action_dims(g, h, h_on_g, "act_h_on_g");
  detail::check_action_dims(h, g, g_on_h, "act_g_on_h");
  ActionValidation r;
  detail::validate_one_side(g, h, h_on_g, "H_on_G", r.violations);
  detail::validate_one_side(h, g, g_on_h, "G_on_H", r.violations);
  return r;
}

/// A failing instance of one of the two compatibility identities.
/// identity 1: (g, h, g1) with g^(h^g1) != ((g^(g1^-1))^h)^g1.
/// identity 2: (h, g, h1) with h^(g^h1) != ((h^(h1^-1))^g)^h1.
struct CompatibilityWitness {
  int identity = 1;
  std::array<Elem, 3> triple{};

  std::string to_string() const {
    std::ostringstream os;
    os << "identity " << identity << " fails at "
       << (identity == 1 ? "(g,h,g1)=(" : "(h,g,h1)=(") << triple[0] << ',' << triple[1]
       << ',' << triple[2] << ')';
    return os.str();
  }
  friend bool operator==(const CompatibilityWitness&, const CompatibilityWitness&) = default;
};

class ActionPair;
std::optional<CompatibilityWitness> check_compatibility(const ActionPair& p);

/// Two groups acting on each other. Built through `make`, which validates the
/// action axioms and, unless `unchecked`, the compatibility identities.
class ActionPair {
public:
  using TablePtr = std::shared_ptr<const GroupTable>;

  static ActionPair make(TablePtr g, TablePtr h, ActionTable h_on_g, ActionTable g_on_h,
                         std::string name = {}, bool unchecked = false) {
    auto report = validate_actions(*g, *h, h_on_g, g_on_h);
    if (!report.ok())
      throw InputError("invalid actions: " + report.to_string());
    ActionPair p(std::move(g), std::move(h), std::move(h_on_g), std::move(g_on_h),
                 std::move(name));
    if (!unchecked) {
      if (auto w = check_compatibility(p))
        throw InputError("actions are not compatible: " + w->to_string());
      p.compatibility_checked_ = true;
    }
    return p;
  }

  const GroupTable& g() const noexcept { return *g_; }
  const GroupTable& h() const noexcept { return *h_; }
  const TablePtr& g_ptr() const noexcept { return g_; }
  const TablePtr& h_ptr() const noexcept { return h_; }
  const ActionTable& h_on_g() const noexcept { return h_on_g_; }
  const ActionTable& g_on_h() const noexcept { return g_on_h_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// g^h
  Elem act_on_g(Elem g, Elem h) const { return h_on_g_[h][g]; }
  /// h^g
  Elem act_on_h(Elem h, Elem g) const { return g_on_h_[g][h]; }

  bool compatibility_checked() const noexcept { return compatibility_checked_; }

  bool trivial_actions() const {
    for (const auto& row : h_on_g_)
      for (Elem x = 0; x < row.size(); ++x)
        if (row[x] != x)
          return false;
    for (const auto& row : g_on_h_)
      for (Elem x = 0; x < row.size(); ++x)
        if (row[x] != x)
          return false;
    return true;
  }

  /// G and H carry the same table and every action is conjugation.
  bool is_nu_setup() const {
    if (!(*g_ == *h_))
      return false;
    for (Elem a = 0; a < g_->size(); ++a)
      for (Elem x = 0; x < g_->size(); ++x)
        if (h_on_g_[a][x] != g_->conj(x, a) || g_on_h_[a][x] != g_->conj(x, a))
          return false;
    return true;
  }

private:
  ActionPair(TablePtr g, TablePtr h, ActionTable h_on_g, ActionTable g_on_h,
             std::string name)
      : g_(std::move(g)), h_(std::move(h)), h_on_g_(std::move(h_on_g)),
        g_on_h_(std::move(g_on_h)), name_(std::move(name)) {}

  TablePtr g_, h_;
  ActionTable h_on_g_, g_on_h_;
  std::string name_;
  bool compatibility_checked_ = false;
};

namespace detail {

// x^(y^-1) = y x y^-1 inside one table.
inline Elem conj_inv(const GroupTable& t, Elem x, Elem y) {
  return t.mul(t.mul(y, x), t.inv(y));
}

} // namespace detail

/// Scans (g, h, g1) then (h, g, h1) lexicographically; first failure wins.
inline std::optional<CompatibilityWitness> check_compatibility(const ActionPair& p) {
  const auto& G = p.g();
  const auto& H = p.h();
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < H.size(); ++h)
      for (Elem g1 = 0; g1 < G.size(); ++g1) {
        Elem lhs = p.act_on_g(g, p.act_on_h(h, g1));
        Elem rhs = G.conj(p.act_on_g(detail::conj_inv(G, g, g1), h), g1);
        if (lhs != rhs)
          return CompatibilityWitness{1, {g, h, g1}};
      }
  for (Elem h = 0; h < H.size(); ++h)
    for (Elem g = 0; g < G.size(); ++g)
      for (Elem h1 = 0; h1 < H.size(); ++h1) {
        Elem lhs = p.act_on_h(h, p.act_on_g(g, h1));
        Elem rhs = H.conj(p.act_on_h(detail::conj_inv(H, h, h1), g), h1);
        if (lhs != rhs)
          return CompatibilityWitness{2, {h, g, h1}};
      }
  return std::nullopt;
}

/// Re-evaluates a single witness triple; true iff it really fails.
inline bool witness_violates(const ActionPair& p, const CompatibilityWitness& w) {
  const auto& G = p.g();
  const auto& H = p.h();
  auto [a, b, c] = w.triple;
  if (w.identity == 1) {
    if (a >= G.size() || b >= H.size() || c >= G.size())
      return false;
    return p.act_on_g(a, p.act_on_h(b, c)) !=
           G.conj(p.act_on_g(detail::conj_inv(G, a, c), b), c);
  }
  if (a >= H.size() || b >= G.size() || c >= H.size())
    return false;
  return p.act_on_h(a, p.act_on_g(b, c)) !=
         H.conj(p.act_on_h(detail::conj_inv(H, a, c), b), c);
}

// Standard constructions.

inline ActionTable trivial_action(std::size_t actors, std::size_t target) {
  ActionTable a(actors, std::vector<Elem>(target));
  for (auto& row : a)
    for (Elem x = 0; x < target; ++x)
      row[x] = x;
  return a;
}

inline ActionPair trivial_pair(const GroupTable& g, const GroupTable& h,
                               std::string name = {}) {
  auto G = std::make_shared<const GroupTable>(g);
  auto H = std::make_shared<const GroupTable>(h);
  return ActionPair::make(G, H, trivial_action(h.size(), g.size()),
                          trivial_action(g.size(), h.size()), std::move(name));
}

/// Subgroups A, B of K (sorted element lists starting with the identity),
/// acting on each other by conjugation in K. Both must be normal in K.
inline ActionPair conjugation_pair(const GroupTable& k, const std::vector<Elem>& a,
                                   const std::vector<Elem>& b, std::string name = {}) {
  if (!is_normal_subset(k, a) || !is_normal_subset(k, b))
    throw InputError("conjugation pair needs normal subgroups");
  auto A = std::make_shared<const GroupTable>(subgroup_table(k, a));
  auto B = std::make_shared<const GroupTable>(subgroup_table(k, b));
  std::vector<std::int64_t> ia(k.size(), -1), ib(k.size(), -1);
  for (std::size_t i = 0; i < a.size(); ++i)
    ia[a[i]] = static_cast<std::int64_t>(i);
  for (std::size_t i = 0; i < b.size(); ++i)
    ib[b[i]] = static_cast<std::int64_t>(i);
  ActionTable b_on_a(b.size(), std::vector<Elem>(a.size()));
  ActionTable a_on_b(a.size(), std::vector<Elem>(b.size()));
  for (std::size_t y = 0; y < b.size(); ++y)
    for (std::size_t x = 0; x < a.size(); ++x)
      b_on_a[y][x] = static_cast<Elem>(ia[k.conj(a[x], b[y])]);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      a_on_b[x][y] = static_cast<Elem>(ib[k.conj(b[y], a[x])]);
  return ActionPair::make(A, B, std::move(b_on_a), std::move(a_on_b), std::move(name));
}

/// H a copy of G, all four actions conjugation.
inline ActionPair nu_pair(const GroupTable& g, std::string name = {}) {
  std::vector<Elem> all(g.size());
  for (Elem x = 0; x < g.size(); ++x)
    all[x] = x;
  auto p = conjugation_pair(g, all, all, std::move(name));
  return p;
}

/// D = {g^-1 g^h} (or {h^-1 h^g}) and the subgroup it generates.
struct DerivativeData {
  Side side = Side::g_under_h;
  std::vector<Elem> element_set; ///< sorted, contains the identity
  std::size_t m = 0;
  std::vector<Elem> subgroup; ///< sorted
};

inline DerivativeData derivative(const ActionPair& p, Side side) {
  const bool gs = side == Side::g_under_h;
  const auto& T = gs ? p.g() : p.h();
  const auto& A = gs ? p.h() : p.g();
  std::vector<bool> in(T.size(), false);
  for (Elem x = 0; x < T.size(); ++x)
    for (Elem a = 0; a < A.size(); ++a)
      in[T.mul(T.inv(x), gs ? p.act_on_g(x, a) : p.act_on_h(x, a))] = true;
  DerivativeData d;
  d.side = side;
  for (Elem x = 0; x < T.size(); ++x)
    if (in[x])
      d.element_set.push_back(x);
  d.m = d.element_set.size();
  d.subgroup = subgroup_closure(T, d.element_set);
  return d;
}

/// Returns a failing (delta, x) with delta^x outside D for x in <D>, encoded as
/// {0, delta, x}, or a failing (g, h, x) for [g,h]^x = [g^x, h^x] encoded as
/// {1, g, h, x}. Empty when both properties hold.
inline std::optional<std::vector<Elem>> normality_violation(const ActionPair& p, Side side) {
  const bool gs = side == Side::g_under_h;
  const auto& T = gs ? p.g() : p.h();
  const auto& A = gs ? p.h() : p.g();
  auto act_t = [&](Elem x, Elem a) { return gs ? p.act_on_g(x, a) : p.act_on_h(x, a); };
  auto act_a = [&](Elem a, Elem x) { return gs ? p.act_on_h(a, x) : p.act_on_g(a, x); };
  auto bracket = [&](Elem x, Elem a) { return T.mul(T.inv(x), act_t(x, a)); };

  auto d = derivative(p, side);
  std::vector<bool> in(T.size(), false);
  for (Elem x : d.element_set)
    in[x] = true;
  for (Elem delta : d.element_set)
    for (Elem x : d.subgroup)
      if (!in[T.conj(delta, x)])
        return std::vector<Elem>{0, delta, x};
  for (Elem g = 0; g < T.size(); ++g)
    for (Elem h = 0; h < A.size(); ++h)
      for (Elem x = 0; x < T.size(); ++x)
        if (T.conj(bracket(g, h), x) != bracket(T.conj(g, x), act_a(h, x)))
          return std::vector<Elem>{1, g, h, x};
  return std::nullopt;
}

inline bool normality_check(const ActionPair& p, Side side) {
  return !normality_violation(p, side);
}

} // namespace nat
