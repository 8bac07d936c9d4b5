#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nat/action/action_pair.hpp"
#include "nat/core/group_table.hpp"
#include "nat/core/homomorphism.hpp"
#include "nat/core/perm_group.hpp"
#include "nat/errors.hpp"
#include "nat/eta/presentation.hpp"
#include "nat/fp/coset_enum.hpp"

namespace nat {

inline constexpr std::size_t kDefaultTabulationLimit = 8192;

struct EtaLimits {
  std::size_t max_cosets = kDefaultMaxCosets;
  std::size_t order_cap = 10;      ///< largest |G| or |H| accepted without override
  bool allow_large_groups = false; ///< the override
};

/// Finite realization of eta(G,H) as its right regular representation.
///
/// Elements of eta are the cosets of the trivial subgroup: element x is the
/// coset reached from 0 by any word for x, and right multiplication by a
/// generator moves along the coset table. The tensor subgroup is tabulated
/// with elements in breadth-first order under right multiplication by
/// tensors, so index i of tensor_table() is tensor_subgroup_elements()[i].
class EtaRealization {
public:
  using Coset = std::uint32_t;

  const ActionPair& pair() const noexcept { return pair_; }
  const Presentation& presentation() const noexcept { return presentation_; }
  const CosetTable& coset_table() const noexcept { return table_; }

  /// |eta(G,H)|, the index of the trivial subgroup.
  std::size_t order() const noexcept { return table_.rows(); }

  /// Generated by one permutation per presentation generator. Its BSGS is
  /// never needed: the action is regular, so the order is the degree.
  const PermutationGroup& perm_group() const noexcept { return *perm_group_; }
  const Permutation& embed_g(Elem g) const { return perm_group_->generators()[g]; }
  const Permutation& embed_h(Elem h) const {
    return perm_group_->generators()[pair_.g().size() + h];
  }

  Coset g_elem(Elem g) const { return static_cast<Coset>(table_(0, 2 * g)); }
  Coset h_elem(Elem h) const {
    return static_cast<Coset>(table_(0, 2 * (pair_.g().size() + h)));
  }

  /// Right multiplication by a generator column (2i for generator i, 2i+1
  /// for its inverse).
  Coset step(Coset a, std::size_t column) const {
    return static_cast<Coset>(table_(a, column));
  }

  Coset mul(Coset a, Coset b) const {
    for (std::size_t k = word_start_[b]; k < word_start_[b + 1]; ++k)
      a = step(a, word_cols_[k]);
    return a;
  }

  Coset inv(Coset a) const {
    Coset r = 0;
    for (std::size_t k = word_start_[a + 1]; k > word_start_[a]; --k)
      r = step(r, word_cols_[k - 1] ^ 1u);
    return r;
  }

  /// x^-1 a x
  Coset conj(Coset a, Coset x) const { return mul(mul(inv(x), a), x); }
  Coset comm(Coset a, Coset b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  Coset tensor(Elem g, Elem h) const { return tensors_[g * pair_.h().size() + h]; }

  /// The distinct tensors, ascending.
  const std::vector<Coset>& tensor_elements() const noexcept { return tensor_set_; }
  std::size_t m() const noexcept { return tensor_set_.size(); }

  /// <tensor_elements()>; generators are the non-identity tensors.
  const PermutationGroup& tensor_subgroup() const noexcept { return *tensor_group_; }
  std::size_t tensor_order() const noexcept { return t_elems_.size(); }
  const GroupTable& tensor_table() const noexcept { return *t_table_; }
  const std::shared_ptr<const GroupTable>& tensor_table_ptr() const noexcept {
    return t_table_;
  }
  const std::vector<Coset>& tensor_subgroup_elements() const noexcept { return t_elems_; }

  bool in_tensor_subgroup(Coset c) const { return t_index_[c] >= 0; }
  Elem tensor_index(Coset c) const {
    if (t_index_[c] < 0)
      throw DomainError("element is not in the tensor subgroup");
    return static_cast<Elem>(t_index_[c]);
  }
  /// Index of [g, h^phi] in tensor_table().
  Elem tensor_in_table(Elem g, Elem h) const { return tensor_index(tensor(g, h)); }

  /// Fewest tensors whose product is tensor_table() element i.
  std::size_t tensor_length(Elem i) const { return t_depth_[i]; }
  /// Largest tensor_length over the tensor subgroup.
  std::size_t max_tensor_length() const noexcept { return max_depth_; }

  /// Full Cayley table of eta(G,H) on coset indices, filled row by row
  /// along the spanning tree. ResourceLimit above `limit` elements.
  GroupTable multiplication_table(std::size_t limit = kDefaultTabulationLimit) const;

  friend EtaRealization realize(const ActionPair& pair, const EtaLimits& limits);

private:
  explicit EtaRealization(ActionPair pair) : pair_(std::move(pair)) {}

  void build_words();
  void build_tensors();
  void build_tensor_subgroup();
  void verify_invariants() const;

  ActionPair pair_;
  Presentation presentation_;
  CosetTable table_;
  std::shared_ptr<PermutationGroup> perm_group_;

  // Spanning-tree word of each element, as generator columns from coset 0.
  std::vector<std::size_t> word_start_;
  std::vector<std::uint32_t> word_cols_;
  std::vector<Coset> bfs_order_;
  std::vector<Coset> tree_parent_;
  std::vector<std::uint32_t> tree_via_;

  std::vector<Coset> tensors_;
  std::vector<Coset> tensor_set_;
  std::shared_ptr<PermutationGroup> tensor_group_;
  std::vector<Permutation> tensor_perms_; // non-identity tensors, by tensor_set_ order
  std::vector<Coset> t_elems_;
  std::vector<std::int64_t> t_index_;
  std::vector<std::size_t> t_depth_;
  std::size_t max_depth_ = 0;
  std::shared_ptr<const GroupTable> t_table_;
};

inline void EtaRealization::build_words() {
  const std::size_t n = order();
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint32_t> via(n, 0);
  std::vector<Coset> bfs{0};
  parent[0] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::uint32_t x = 0; x < table_.columns(); ++x) {
      Coset d = step(bfs[i], x);
      if (parent[d] < 0) {
        parent[d] = bfs[i];
        via[d] = x;
        bfs.push_back(d);
      }
    }
  if (bfs.size() != n)
    throw InvariantViolation("coset table is not connected");
  bfs_order_ = bfs;
  tree_parent_.resize(n);
  for (std::size_t c = 0; c < n; ++c)
    tree_parent_[c] = static_cast<Coset>(parent[c]);
  tree_via_ = via;
  std::vector<std::size_t> len(n, 0);
  for (std::size_t i = 1; i < bfs.size(); ++i)
    len[bfs[i]] = len[static_cast<std::size_t>(parent[bfs[i]])] + 1;
  word_start_.assign(n + 1, 0);
  for (std::size_t c = 0; c < n; ++c)
    word_start_[c + 1] = word_start_[c] + len[c];
  word_cols_.assign(word_start_[n], 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t k = word_start_[c + 1];
    for (std::size_t d = c; d != 0; d = static_cast<std::size_t>(parent[d]))
      word_cols_[--k] = via[d];
  }
}

inline GroupTable EtaRealization::multiplication_table(std::size_t limit) const {
  const std::size_t n = order();
  if (n > limit)
    throw ResourceLimit("eta(G,H) is too large to tabulate", limit, n);
  std::vector<Elem> mult(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    Elem* row = mult.data() + a * n;
    row[0] = static_cast<Elem>(a);
    for (std::size_t i = 1; i < n; ++i) {
      Coset d = bfs_order_[i];
      row[d] = static_cast<Elem>(step(row[tree_parent_[d]], tree_via_[d]));
    }
  }
  return GroupTable(n, std::move(mult), "eta");
}

inline void EtaRealization::build_tensors() {
  const auto& G = pair_.g();
  const auto& H = pair_.h();
  tensors_.resize(G.size() * H.size());
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < H.size(); ++h) {
      Coset c = static_cast<Coset>(table_.trace(0, tensor_word(G.size(), g, h)));
      tensors_[g * H.size() + h] = c;
    }
  tensor_set_ = tensors_;
  std::sort(tensor_set_.begin(), tensor_set_.end());
  tensor_set_.erase(std::unique(tensor_set_.begin(), tensor_set_.end()), tensor_set_.end());
}

inline void EtaRealization::build_tensor_subgroup() {
  const std::size_t n = order();
  std::vector<Coset> gens;
  for (Coset t : tensor_set_)
    if (t != 0)
      gens.push_back(t);
  // Right multiplication by each tensor, as a permutation of all elements.
  for (Coset t : gens) {
    std::vector<Point> img(n);
    for (Coset c = 0; c < n; ++c)
      img[c] = mul(c, t);
    tensor_perms_.emplace_back(std::move(img));
  }
  tensor_group_ = std::make_shared<PermutationGroup>(n, tensor_perms_);

  // The right regular action is semiregular, so the orbit of 0 under the
  // tensor permutations is the tensor subgroup itself.
  t_index_.assign(n, -1);
  t_elems_ = {0};
  t_index_[0] = 0;
  std::vector<std::size_t> parent{0}, via{0};
  t_depth_ = {0};
  for (std::size_t i = 0; i < t_elems_.size(); ++i)
    for (std::size_t k = 0; k < tensor_perms_.size(); ++k) {
      Coset d = tensor_perms_[k][t_elems_[i]];
      if (t_index_[d] < 0) {
        t_index_[d] = static_cast<std::int64_t>(t_elems_.size());
        t_elems_.push_back(d);
        parent.push_back(i);
        via.push_back(k);
        t_depth_.push_back(t_depth_[i] + 1);
      }
    }
  max_depth_ = *std::max_element(t_depth_.begin(), t_depth_.end());

  // Multiply by following the tensor path of the right factor.
  const std::size_t tn = t_elems_.size();
  std::vector<std::vector<std::size_t>> path(tn);
  for (std::size_t j = 1; j < tn; ++j) {
    path[j] = path[parent[j]];
    path[j].push_back(via[j]);
  }
  std::vector<Elem> mult(tn * tn);
  for (std::size_t i = 0; i < tn; ++i)
    for (std::size_t j = 0; j < tn; ++j) {
      Coset c = t_elems_[i];
      for (std::size_t k : path[j])
        c = tensor_perms_[k][c];
      if (t_index_[c] < 0)
        throw InvariantViolation("tensor subgroup is not closed");
      mult[i * tn + j] = static_cast<Elem>(t_index_[c]);
    }
  t_table_ = std::make_shared<const GroupTable>(tn, std::move(mult), "T");
}

inline void EtaRealization::verify_invariants() const {
  const auto& G = pair_.g();
  const auto& H = pair_.h();
  // Embeddings are injective homomorphisms.
  for (Elem a = 0; a < G.size(); ++a)
    for (Elem b = 0; b < G.size(); ++b)
      if (step(g_elem(a), 2 * b) != g_elem(G.mul(a, b)))
        throw InvariantViolation("embedding of G is not a homomorphism");
  for (Elem a = 0; a < H.size(); ++a)
    for (Elem b = 0; b < H.size(); ++b)
      if (step(h_elem(a), 2 * (G.size() + b)) != h_elem(H.mul(a, b)))
        throw InvariantViolation("embedding of H is not a homomorphism");
  {
    std::vector<Coset> img;
    for (Elem a = 0; a < G.size(); ++a)
      img.push_back(g_elem(a));
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end())
      throw InvariantViolation("embedding of G is not injective");
    img.clear();
    for (Elem a = 0; a < H.size(); ++a)
      img.push_back(h_elem(a));
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end())
      throw InvariantViolation("embedding of H is not injective");
  }
  if (order() != G.size() * H.size() * tensor_order())
    throw InvariantViolation("|eta| = " + std::to_string(order()) + " but |G||H||T| = " +
                             std::to_string(G.size() * H.size() * tensor_order()));
  // Normality: conjugating a tensor generator by a group generator stays in T.
  for (Coset t : tensor_set_)
    for (std::size_t x = 0; x < table_.generator_count(); ++x) {
      Coset c = step(mul(step(0, 2 * x + 1), t), 2 * x);
      if (t_index_[c] < 0)
        throw InvariantViolation("tensor subgroup is not normal");
    }
  // Defining relations, checked on elements.
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < H.size(); ++h) {
      for (Elem g1 = 0; g1 < G.size(); ++g1)
        if (conj(tensor(g, h), g_elem(g1)) != tensor(G.conj(g, g1), pair_.act_on_h(h, g1)))
          throw InvariantViolation("conjugation by G does not act on tensors as given");
      for (Elem h1 = 0; h1 < H.size(); ++h1)
        if (conj(tensor(g, h), h_elem(h1)) != tensor(pair_.act_on_g(g, h1), H.conj(h, h1)))
          throw InvariantViolation("conjugation by H does not act on tensors as given");
    }
}

/// Enumerates eta(G,H), builds the tensor subgroup and verifies the
/// realization. Throws ResourceLimit when the enumeration ceiling or the
/// order cap is hit and InvariantViolation if any structural check fails.
inline EtaRealization realize(const ActionPair& pair, const EtaLimits& limits = {}) {
  for (std::size_t n : {pair.g().size(), pair.h().size()})
    if (n > limits.order_cap && !limits.allow_large_groups)
      throw ResourceLimit("group of order " + std::to_string(n) + " exceeds the order cap " +
                              std::to_string(limits.order_cap) +
                              " (pass the override to proceed)",
                          limits.order_cap, n);
  if (!pair.compatibility_checked())
    if (auto w = check_compatibility(pair))
      throw DomainError("actions are not compatible: " + w->to_string());

  EtaRealization e(pair);
  e.presentation_ = eta_presentation(pair);
  auto ident_g = std::uint32_t{0};
  auto ident_h = static_cast<std::uint32_t>(pair.g().size());
  auto reduced = simplify_for_enumeration(e.presentation_, {ident_g, ident_h});
  e.table_ = coset_enumerate(reduced, {}, limits.max_cosets);
  e.table_.require_complete();
  // The full presentation must hold too, not only the simplified one.
  for (std::size_t c = 0; c < e.table_.rows(); ++c)
    for (const auto& r : e.presentation_.relators())
      if (e.table_.trace(c, r) != c)
        throw InvariantViolation("coset table violates a defining relator");
  e.perm_group_ = std::make_shared<PermutationGroup>(perms_from_table(e.table_).group);
  e.build_words();
  e.build_tensors();
  e.build_tensor_subgroup();
  e.verify_invariants();
  return e;
}

/// The tensor set and its size m. The identity is always a member.
struct TensorSet {
  std::vector<EtaRealization::Coset> elements;
  std::size_t m = 0;
};

inline TensorSet tensors(const EtaRealization& e) {
  return {e.tensor_elements(), e.m()};
}

struct LambdaMu {
  Homomorphism lambda; ///< tensor subgroup -> G
  Homomorphism mu;     ///< tensor subgroup -> H
  std::vector<Elem> ker_lambda, ker_mu, ker_both; ///< tensor_table() indices
  std::size_t n = 1; ///< |T : ker lambda cap ker mu|
};

namespace detail {

// Extends values given on tensors multiplicatively over the tensor
// subgroup, then checks the extension is a homomorphism.
template <typename OnTensor>
Homomorphism extend_from_tensors(const EtaRealization& e,
                                 std::shared_ptr<const GroupTable> target,
                                 OnTensor on_tensor, const char* what) {
  const auto& T = e.tensor_table();
  const auto& G = e.pair().g();
  const auto& H = e.pair().h();
  std::vector<std::int64_t> value(T.size(), -1);
  value[0] = 0;
  std::vector<std::int64_t> gen_value(T.size(), -1);
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < H.size(); ++h) {
      Elem t = e.tensor_in_table(g, h);
      Elem v = on_tensor(g, h);
      if (gen_value[t] >= 0 && gen_value[t] != v)
        throw InvariantViolation(std::string(what) + " is not well defined on tensors");
      gen_value[t] = v;
    }
  if (gen_value[0] != 0)
    throw InvariantViolation(std::string(what) + " sends the identity tensor elsewhere");
  std::vector<Elem> gens;
  for (Elem t = 1; t < T.size(); ++t)
    if (gen_value[t] >= 0)
      gens.push_back(t);
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Elem s : gens) {
      Elem y = T.mul(queue[i], s);
      if (value[y] < 0) {
        value[y] = target->mul(static_cast<Elem>(value[queue[i]]), static_cast<Elem>(gen_value[s]));
        queue.push_back(y);
      }
    }
  if (queue.size() != T.size())
    throw InvariantViolation(std::string(what) + ": tensors do not generate the tensor subgroup");
  std::vector<Elem> images(T.size());
  for (Elem t = 0; t < T.size(); ++t)
    images[t] = static_cast<Elem>(value[t]);
  Homomorphism hom(e.tensor_table_ptr(), std::move(target), std::move(images));
  if (auto v = hom.violation())
    throw InvariantViolation(std::string(what) + " is not a homomorphism at (" +
                             std::to_string(v->first) + "," + std::to_string(v->second) + ")");
  for (Elem t = 1; t < T.size(); ++t)
    if (gen_value[t] >= 0 && hom(t) != static_cast<Elem>(gen_value[t]))
      throw InvariantViolation(std::string(what) + " disagrees with its tensor values");
  return hom;
}

} // namespace detail

/// lambda([g,h^phi]) = g^-1 g^h and mu([g,h^phi]) = (h^g)^-1 h, extended to
/// the tensor subgroup and verified exhaustively.
inline LambdaMu lambda_mu(const EtaRealization& e) {
  const auto& p = e.pair();
  const auto& G = p.g();
  const auto& H = p.h();
  auto lambda = detail::extend_from_tensors(
      e, p.g_ptr(), [&](Elem g, Elem h) { return G.mul(G.inv(g), p.act_on_g(g, h)); },
      "lambda");
  auto mu = detail::extend_from_tensors(
      e, p.h_ptr(), [&](Elem g, Elem h) { return H.mul(H.inv(p.act_on_h(h, g)), h); }, "mu");
  auto kl = lambda.kernel();
  auto km = mu.kernel();
  std::vector<Elem> both;
  std::set_intersection(kl.begin(), kl.end(), km.begin(), km.end(), std::back_inserter(both));
  std::size_t n = e.tensor_order() / both.size();
  return LambdaMu{std::move(lambda), std::move(mu), std::move(kl), std::move(km),
                  std::move(both), n};
}

/// <[g, g^phi] : g in G> inside the tensor subgroup, as sorted
/// tensor_table() indices. Only defined for conjugation setups.
inline std::vector<Elem> diagonal_subgroup(const EtaRealization& e) {
  if (!e.pair().is_nu_setup())
    throw DomainError("the diagonal subgroup needs a conjugation setup G = H");
  std::vector<Elem> seeds;
  for (Elem g = 0; g < e.pair().g().size(); ++g)
    seeds.push_back(e.tensor_in_table(g, g));
  return subgroup_closure(e.tensor_table(), seeds);
}

/// The same subgroup as a permutation group on the elements of eta.
inline PermutationGroup diagonal_permutation_group(const EtaRealization& e) {
  if (!e.pair().is_nu_setup())
    throw DomainError("the diagonal subgroup needs a conjugation setup G = H");
  std::vector<Permutation> gens;
  for (Elem g = 0; g < e.pair().g().size(); ++g) {
    EtaRealization::Coset t = e.tensor(g, g);
    std::vector<Point> img(e.order());
    for (EtaRealization::Coset c = 0; c < e.order(); ++c)
      img[c] = e.mul(c, t);
    gens.emplace_back(std::move(img));
  }
  return PermutationGroup(e.order(), std::move(gens));
}

struct DecompositionResult {
  bool ok = false;
  std::size_t eta_order = 0, g_order = 0, h_order = 0, tensor_order = 0;
  std::string failure; ///< empty when ok
};

/// |eta| = |T||G||H|, T normal, T cap G = 1 and TG cap H = 1.
inline DecompositionResult decomposition_check(const EtaRealization& e) {
  const auto& G = e.pair().g();
  const auto& H = e.pair().h();
  DecompositionResult r{false, e.order(), G.size(), H.size(), e.tensor_order(), {}};
  if (r.eta_order != r.g_order * r.h_order * r.tensor_order) {
    r.failure = "order";
    return r;
  }
  for (EtaRealization::Coset t : e.tensor_elements())
    for (std::size_t x = 0; x < e.coset_table().generator_count(); ++x)
      if (!e.in_tensor_subgroup(e.step(e.mul(e.step(0, 2 * x + 1), t), 2 * x))) {
        r.failure = "normality";
        return r;
      }
  for (Elem g = 1; g < G.size(); ++g)
    if (e.in_tensor_subgroup(e.g_elem(g))) {
      r.failure = "G meets T";
      return r;
    }
  std::vector<bool> tg(e.order(), false);
  std::size_t tg_size = 0;
  for (EtaRealization::Coset t : e.tensor_subgroup_elements())
    for (Elem g = 0; g < G.size(); ++g) {
      auto c = e.mul(t, e.g_elem(g));
      if (!tg[c]) {
        tg[c] = true;
        ++tg_size;
      }
    }
  if (tg_size != r.tensor_order * r.g_order) {
    r.failure = "TG order";
    return r;
  }
  for (Elem h = 1; h < H.size(); ++h)
    if (tg[e.h_elem(h)]) {
      r.failure = "H meets TG";
      return r;
    }
  r.ok = true;
  return r;
}

} // namespace nat
