#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nat/errors.hpp"

namespace nat {

using Elem = std::uint32_t;

/// A finite group given by its complete multiplication table.
///
/// The identity is always element 0. Inverses are derived from the table
/// and never supplied by the caller. Construction verifies the latin-square
/// property, the identity row/column and, for size <= 256, associativity.
class GroupTable {
public:
  static constexpr std::size_t kAssociativityCheckLimit = 256;

  GroupTable() : GroupTable(1, {0}) {}

  GroupTable(std::size_t size, std::vector<Elem> mult, std::string name = {})
      : size_(size), mult_(std::move(mult)), name_(std::move(name)) {
    validate_and_index();
  }

  static GroupTable from_rows(const std::vector<std::vector<Elem>>& rows,
                              std::string name = {}) {
    std::vector<Elem> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
      if (r.size() != rows.size())
        throw InputError("multiplication table is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return GroupTable(rows.size(), std::move(flat), std::move(name));
  }

  std::size_t size() const noexcept { return size_; }
  Elem identity() const noexcept { return 0; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  Elem mul(Elem a, Elem b) const { return mult_[a * size_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  std::span<const Elem> row(Elem a) const {
    return {mult_.data() + a * size_, size_};
  }

  /// b^-1 a b
  Elem conj(Elem a, Elem b) const { return mul(mul(inv(b), a), b); }
  /// a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  Elem pow(Elem a, std::int64_t k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Elem r = 0;
    for (std::int64_t i = 0; i < k; ++i)
      r = mul(r, a);
    return r;
  }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != 0; x = mul(x, a))
      ++k;
    return k;
  }

  bool is_abelian() const {
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = a + 1; b < size_; ++b)
        if (mul(a, b) != mul(b, a))
          return false;
    return true;
  }

  /// First (a, b, c) with (ab)c != a(bc), scanning lexicographically.
  std::optional<std::array<Elem, 3>> associativity_witness() const {
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) {
        Elem ab = mul(a, b);
        for (Elem c = 0; c < size_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            return std::array<Elem, 3>{a, b, c};
      }
    return std::nullopt;
  }

  friend bool operator==(const GroupTable& a, const GroupTable& b) {
    return a.size_ == b.size_ && a.mult_ == b.mult_;
  }

private:
  void validate_and_index() {
    if (size_ == 0)
      throw InputError("group table must have at least one element");
    if (mult_.size() != size_ * size_)
      throw InputError("multiplication table has wrong number of entries");
    for (Elem x : mult_)
      if (x >= size_)
        throw InputError("multiplication table entry out of range");
    for (Elem x = 0; x < size_; ++x)
      if (mul(0, x) != x || mul(x, 0) != x)
        throw InputError("element 0 is not the identity");

    std::vector<std::uint32_t> stamp(size_, 0);
    std::uint32_t round = 0;
    for (Elem a = 0; a < size_; ++a) {
      ++round;
      for (Elem b = 0; b < size_; ++b) {
        Elem x = mul(a, b);
        if (stamp[x] == round)
          throw InputError("multiplication table row is not a permutation");
        stamp[x] = round;
      }
    }
    for (Elem b = 0; b < size_; ++b) {
      ++round;
      for (Elem a = 0; a < size_; ++a) {
        Elem x = mul(a, b);
        if (stamp[x] == round)
          throw InputError("multiplication table column is not a permutation");
        stamp[x] = round;
      }
    }

    inv_.assign(size_, 0);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        if (mul(a, b) == 0) {
          inv_[a] = b;
          break;
        }
    for (Elem a = 0; a < size_; ++a)
      if (mul(inv_[a], a) != 0)
        throw InputError("left and right inverses differ");

    if (size_ <= kAssociativityCheckLimit && associativity_witness())
      throw InputError("multiplication table is not associative");
  }

  std::size_t size_;
  std::vector<Elem> mult_;
  std::vector<Elem> inv_;
  std::string name_;
};

/// Sorted element set of the subgroup generated by `seeds`.
inline std::vector<Elem> subgroup_closure(const GroupTable& t,
                                          std::span<const Elem> seeds) {
  std::vector<bool> in(t.size(), false);
  std::vector<Elem> elems{0};
  in[0] = true;
  std::vector<Elem> gens;
  for (Elem s : seeds)
    if (s != 0 && std::find(gens.begin(), gens.end(), s) == gens.end())
      gens.push_back(s);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Elem s : gens) {
      Elem y = t.mul(elems[i], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline std::vector<Elem> derived_subgroup(const GroupTable& t) {
  std::vector<bool> seen(t.size(), false);
  std::vector<Elem> comms;
  for (Elem a = 0; a < t.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b) {
      Elem c = t.comm(a, b);
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  return subgroup_closure(t, comms);
}

inline std::vector<Elem> center(const GroupTable& t) {
  std::vector<Elem> z;
  for (Elem a = 0; a < t.size(); ++a) {
    bool central = true;
    for (Elem b = 0; b < t.size() && central; ++b)
      central = t.mul(a, b) == t.mul(b, a);
    if (central)
      z.push_back(a);
  }
  return z;
}

inline std::size_t exponent(const GroupTable& t) {
  std::size_t e = 1;
  for (Elem a = 0; a < t.size(); ++a)
    e = std::lcm(e, t.element_order(a));
  return e;
}

/// Sizes of the conjugacy classes, ascending.
inline std::vector<std::size_t> conjugacy_class_sizes(const GroupTable& t) {
  std::vector<bool> done(t.size(), false);
  std::vector<std::size_t> sizes;
  for (Elem a = 0; a < t.size(); ++a) {
    if (done[a])
      continue;
    std::size_t n = 0;
    for (Elem b = 0; b < t.size(); ++b) {
      Elem c = t.conj(a, b);
      if (!done[c]) {
        done[c] = true;
        ++n;
      }
    }
    sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline bool is_normal_subset(const GroupTable& t, std::span<const Elem> subset) {
  std::vector<bool> in(t.size(), false);
  for (Elem x : subset)
    in[x] = true;
  for (Elem x : subset)
    for (Elem g = 0; g < t.size(); ++g)
      if (!in[t.conj(x, g)])
        return false;
  return true;
}

/// Table of the subgroup with the given sorted element set. Element i of the
/// result is subset[i]; subset[0] must be the identity.
inline GroupTable subgroup_table(const GroupTable& t, std::span<const Elem> subset,
                                 std::string name = {}) {
  std::vector<std::int64_t> index(t.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i)
    index[subset[i]] = static_cast<std::int64_t>(i);
  if (subset.empty() || subset[0] != 0)
    throw InputError("subgroup element list must start with the identity");
  std::vector<Elem> mult(subset.size() * subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) {
      auto k = index[t.mul(subset[i], subset[j])];
      if (k < 0)
        throw InputError("subset is not closed under multiplication");
      mult[i * subset.size() + j] = static_cast<Elem>(k);
    }
  return GroupTable(subset.size(), std::move(mult), std::move(name));
}

/// Quotient by a normal subgroup. Cosets are numbered by their least element,
/// so the identity coset is 0.
inline GroupTable quotient_table(const GroupTable& t, std::span<const Elem> normal,
                                 std::string name = {}) {
  if (!is_normal_subset(t, normal))
    throw DomainError("quotient by a non-normal subset");
  std::vector<std::int64_t> coset(t.size(), -1);
  std::vector<Elem> reps;
  for (Elem a = 0; a < t.size(); ++a) {
    if (coset[a] >= 0)
      continue;
    for (Elem n : normal)
      coset[t.mul(a, n)] = static_cast<std::int64_t>(reps.size());
    reps.push_back(a);
  }
  std::vector<Elem> mult(reps.size() * reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      mult[i * reps.size() + j] =
          static_cast<Elem>(coset[t.mul(reps[i], reps[j])]);
  return GroupTable(reps.size(), std::move(mult), std::move(name));
}

/// Direct product; element (a, b) has index a * |B| + b.
inline GroupTable direct_product(const GroupTable& a, const GroupTable& b,
                                 std::string name = {}) {
  const std::size_t n = a.size() * b.size();
  std::vector<Elem> mult(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem xa = x / b.size(), xb = x % b.size();
      Elem ya = y / b.size(), yb = y % b.size();
      mult[x * n + y] =
          static_cast<Elem>(a.mul(xa, ya) * b.size() + b.mul(xb, yb));
    }
  return GroupTable(n, std::move(mult), std::move(name));
}

} // namespace nat
