#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nat/abelian/smith.hpp"
#include "nat/core/group_table.hpp"
#include "nat/errors.hpp"

namespace nat {

/// Finite abelian group in invariant-factor form: d1 | d2 | ... , each >= 2.
class AbelianGroup {
public:
  AbelianGroup() = default;

  /// Accepts any list of cyclic orders (>= 1) and normalises it.
  static AbelianGroup from_cyclic_orders(const std::vector<std::uint64_t>& orders);

  const std::vector<std::uint64_t>& invariant_factors() const noexcept {
    return factors_;
  }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (auto d : factors_)
      n *= d;
    return n;
  }

  bool is_trivial() const noexcept { return factors_.empty(); }

  std::string to_string() const {
    if (factors_.empty())
      return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      os << (i ? " x " : "") << "C_" << factors_[i];
    return os.str();
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
  std::vector<std::uint64_t> factors_;
  friend AbelianGroup invariants_from_diagonal(const std::vector<BigInt>&);
};

/// Drops unit entries; zero entries mean an infinite cyclic factor.
inline AbelianGroup invariants_from_diagonal(const std::vector<BigInt>& diag) {
  AbelianGroup g;
  for (const auto& d : diag) {
    if (d == 0)
      throw InfiniteGroupError("abelian group has an infinite cyclic factor");
    if (d != 1)
      g.factors_.push_back(static_cast<std::uint64_t>(d));
  }
  return g;
}

inline AbelianGroup AbelianGroup::from_cyclic_orders(
    const std::vector<std::uint64_t>& orders) {
  IntegerMatrix m(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0)
      throw InfiniteGroupError("cyclic order 0 is infinite");
    m(i, i) = orders[i];
  }
  return invariants_from_diagonal(smith_normal_form(std::move(m)).diagonal);
}

/// Z^generator_count modulo the row span of `relations`.
inline AbelianGroup abelian_invariants_from_relations(std::size_t generator_count,
                                                      const IntegerMatrix& relations) {
  if (relations.cols() != generator_count)
    throw InputError("relation matrix column count must equal generator count");
  auto snf = smith_normal_form(relations);
  std::vector<BigInt> diag = snf.diagonal;
  diag.resize(generator_count, BigInt(0));
  return invariants_from_diagonal(diag);
}

/// A (x)_Z B = sum over (i, j) of C_gcd(d_i, e_j).
inline AbelianGroup tensor_Z(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<std::uint64_t> orders;
  for (auto d : a.invariant_factors())
    for (auto e : b.invariant_factors())
      orders.push_back(std::gcd(d, e));
  return AbelianGroup::from_cyclic_orders(orders);
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  if (n > 1)
    ps.push_back(n);
  return ps;
}

} // namespace detail

/// Invariant factors of an abelian table, read off from the counts of
/// elements killed by p^k for each prime p dividing the order.
inline AbelianGroup abelian_structure(const GroupTable& t) {
  if (!t.is_abelian())
    throw DomainError("abelian_structure called on a non-abelian table");
  std::vector<std::size_t> orders(t.size());
  for (Elem a = 0; a < t.size(); ++a)
    orders[a] = t.element_order(a);

  // p-primary parts as partitions e_1 >= e_2 >= ... (exponents of p).
  std::vector<std::uint64_t> cyclic;
  for (std::uint64_t p : detail::prime_factors(t.size())) {
    // c[k] = log_p #{x : x^(p^k) = 1}; the number of cyclic factors of
    // exponent >= k is c[k] - c[k-1].
    std::vector<std::size_t> c{0};
    std::uint64_t pk = 1;
    while (true) {
      pk *= p;
      std::size_t count = 0;
      for (Elem a = 0; a < t.size(); ++a)
        if (pk % orders[a] == 0)
          ++count;
      std::size_t lg = 0;
      for (std::size_t v = count; v > 1; v /= p)
        ++lg;
      c.push_back(lg);
      if (lg == c[c.size() - 2])
        break;
    }
    const std::size_t kmax = c.size() - 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
      std::size_t at_least_k = c[k] - c[k - 1];
      std::size_t at_least_k1 = k + 1 < c.size() ? c[k + 1] - c[k] : 0;
      std::uint64_t q = 1;
      for (std::size_t i = 0; i < k; ++i)
        q *= p;
      for (std::size_t i = at_least_k1; i < at_least_k; ++i)
        cyclic.push_back(q);
    }
  }
  return AbelianGroup::from_cyclic_orders(cyclic);
}

/// G / G' as invariant factors.
inline AbelianGroup abelianization(const GroupTable& t) {
  return abelian_structure(quotient_table(t, derived_subgroup(t)));
}

} // namespace nat
