#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "nat/core/perm_group.hpp"
#include "nat/errors.hpp"
#include "nat/fp/presentation.hpp"
#include "nat/fp/word.hpp"

namespace nat {

inline constexpr std::size_t kDefaultMaxCosets = 2'000'000;

enum class EnumerationStatus { complete, exceeded_limit };

/// Action of the generators (columns 2i) and their inverses (columns 2i+1)
/// on the cosets of a subgroup. Row 0 is the subgroup itself.
class CosetTable {
public:
  CosetTable() = default;
  CosetTable(std::size_t generator_count, std::size_t rows,
             std::vector<std::int32_t> entries)
      : generator_count_(generator_count), rows_(rows), entries_(std::move(entries)) {}

  static CosetTable exceeded(std::size_t generator_count, std::size_t max_cosets,
                             std::size_t high_water) {
    CosetTable t;
    t.generator_count_ = generator_count;
    t.status_ = EnumerationStatus::exceeded_limit;
    t.max_cosets_ = max_cosets;
    t.high_water_ = high_water;
    return t;
  }

  EnumerationStatus status() const noexcept { return status_; }
  bool complete() const noexcept { return status_ == EnumerationStatus::complete; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t generator_count() const noexcept { return generator_count_; }
  std::size_t columns() const noexcept { return 2 * generator_count_; }
  std::size_t max_cosets() const noexcept { return max_cosets_; }
  /// Peak number of live cosets reached before giving up.
  std::size_t high_water() const noexcept { return high_water_; }

  std::int32_t operator()(std::size_t row, std::size_t col) const {
    return entries_[row * columns() + col];
  }
  std::int32_t act(std::size_t row, Letter l) const { return (*this)(row, l.column()); }

  std::size_t trace(std::size_t row, const Word& w) const {
    for (const auto& l : w.letters())
      row = static_cast<std::size_t>(act(row, l));
    return row;
  }

  /// Throws ResourceLimit if the enumeration did not finish.
  const CosetTable& require_complete() const {
    if (!complete())
      throw ResourceLimit("coset enumeration exceeded " + std::to_string(max_cosets_) +
                              " cosets",
                          max_cosets_, high_water_);
    return *this;
  }

private:
  std::size_t generator_count_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::int32_t> entries_;
  EnumerationStatus status_ = EnumerationStatus::complete;
  std::size_t max_cosets_ = 0;
  std::size_t high_water_ = 0;
};

namespace detail {

/// Felsch-style enumerator: cosets are defined at the first undefined table
/// entry in scan order; every new entry is pushed as a deduction and the
/// relator cycles through it are scanned. Coincidences are resolved by
/// union-find merging towards the smaller coset number.
class FelschEnumerator {
public:
  FelschEnumerator(const Presentation& p, const std::vector<Word>& subgroup,
                   std::size_t max_cosets)
      : ngens_(p.generator_count()), ncols_(2 * p.generator_count()),
        max_cosets_(max_cosets) {
    if (max_cosets_ == 0)
      throw InputError("max_cosets must be at least 1");
    std::set<std::vector<std::uint32_t>> conjugates;
    for (const auto& r : p.relators()) {
      Word c = cyclic_reduce(r);
      if (c.empty())
        continue;
      relators_.push_back(columns_of(c));
      for (const Word& w : {c, c.inverse()}) {
        auto cols = columns_of(w);
        for (std::size_t s = 0; s < cols.size(); ++s) {
          std::vector<std::uint32_t> rot(cols.begin() + s, cols.end());
          rot.insert(rot.end(), cols.begin(), cols.begin() + s);
          conjugates.insert(std::move(rot));
        }
      }
    }
    by_first_.resize(ncols_);
    for (const auto& w : conjugates)
      by_first_[w[0]].push_back(w);
    for (const auto& w : subgroup) {
      for (const auto& l : w.letters())
        if (l.gen >= ngens_)
          throw InputError("subgroup word references an unknown generator");
      subgroup_.push_back(columns_of(free_reduce(w)));
    }
  }

  CosetTable run() {
    if (ngens_ == 0)
      return CosetTable(0, 1, {});
    new_coset();
    for (const auto& w : subgroup_) {
      if (!scan_and_fill(0, w))
        return overflow();
      process_deductions();
    }

    std::size_t c = 0;
    while (true) {
      process_deductions();
      // First undefined entry at or after the scan pointer.
      bool defined_one = false;
      for (; c < rows_; ++c) {
        if (!alive(c))
          continue;
        std::size_t x = 0;
        while (x < ncols_ && at(c, x) >= 0)
          ++x;
        if (x < ncols_) {
          if (!define(c, static_cast<std::uint32_t>(x), c))
            return overflow();
          defined_one = true;
          break;
        }
      }
      if (defined_one)
        continue;
      // Nothing left after the pointer; re-verify the whole table.
      c = first_gap();
      if (c < rows_)
        continue;
      if (!relators_close()) {
        c = 0;
        continue;
      }
      break;
    }
    return standardize();
  }

private:
  static std::vector<std::uint32_t> columns_of(const Word& w) {
    std::vector<std::uint32_t> cols;
    cols.reserve(w.size());
    for (const auto& l : w.letters())
      cols.push_back(l.column());
    return cols;
  }

  std::int32_t& at(std::size_t c, std::size_t x) { return table_[c * ncols_ + x]; }
  bool alive(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::int32_t find(std::int32_t c) {
    std::int32_t r = c;
    while (parent_[r] != r)
      r = parent_[r];
    while (parent_[c] != r) {
      std::int32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  /// Appends a fresh row; returns -1 when max_cosets live rows exist.
  std::int32_t new_coset() {
    if (live_ >= max_cosets_)
      return -1;
    std::int32_t c = static_cast<std::int32_t>(rows_++);
    table_.resize(rows_ * ncols_, -1);
    parent_.push_back(c);
    ++live_;
    high_water_ = std::max(high_water_, live_);
    return c;
  }

  /// Defines a new coset at (c, x). `pointer` is the caller's scan position
  /// and is rewritten if a compaction renumbers rows.
  bool define(std::size_t c, std::uint32_t x, std::size_t& pointer) {
    if (rows_ >= max_cosets_ && live_ < rows_) {
      compact(c, pointer);
    }
    std::int32_t d = new_coset();
    if (d < 0)
      return false;
    at(c, x) = d;
    at(static_cast<std::size_t>(d), x ^ 1u) = static_cast<std::int32_t>(c);
    deductions_.emplace_back(static_cast<std::int32_t>(c), x);
    return true;
  }

  bool define(std::size_t c, std::uint32_t x) {
    std::size_t dummy = 0;
    return define(c, x, dummy);
  }

  /// Drops dead rows, preserving order. Only called with no pending
  /// coincidences.
  void compact(std::size_t& c, std::size_t& pointer) {
    std::vector<std::int32_t> remap(rows_, -1);
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r)
      if (alive(r))
        remap[r] = static_cast<std::int32_t>(n++);
    auto first_live_from = [&](std::size_t r) {
      while (r < rows_ && remap[r] < 0)
        ++r;
      return r < rows_ ? static_cast<std::size_t>(remap[r]) : n;
    };
    std::vector<std::int32_t> t(n * ncols_, -1);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (remap[r] < 0)
        continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        std::int32_t v = at(r, x);
        t[static_cast<std::size_t>(remap[r]) * ncols_ + x] = v < 0 ? -1 : remap[v];
      }
    }
    c = static_cast<std::size_t>(remap[c]);
    pointer = first_live_from(pointer);
    table_ = std::move(t);
    rows_ = n;
    parent_.resize(n);
    for (std::size_t r = 0; r < n; ++r)
      parent_[r] = static_cast<std::int32_t>(r);
    std::vector<std::pair<std::int32_t, std::uint32_t>> kept;
    for (auto [d, x] : deductions_)
      if (remap[d] >= 0)
        kept.emplace_back(remap[d], x);
    deductions_ = std::move(kept);
  }

  CosetTable overflow() const {
    return CosetTable::exceeded(ngens_, max_cosets_, high_water_);
  }

  /// Scans w at coset a, filling in by defining cosets. Used for subgroup
  /// generators only.
  bool scan_and_fill(std::int32_t a, const std::vector<std::uint32_t>& w) {
    if (w.empty())
      return true;
    while (true) {
      a = find(a);
      std::int32_t f = a, b = a;
      std::size_t i = 0, j = w.size();
      while (i < j && at(f, w[i]) >= 0)
        f = at(f, w[i++]);
      if (i == j) {
        if (f != a)
          coincidence(f, a);
        return true;
      }
      while (j > i && at(b, w[j - 1] ^ 1u) >= 0)
        b = at(b, w[--j] ^ 1u);
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1u) = f;
        deductions_.emplace_back(f, w[i]);
        return true;
      }
      if (!define(static_cast<std::size_t>(f), w[i]))
        return false;
    }
  }

  void scan(std::int32_t a, const std::vector<std::uint32_t>& w) {
    std::int32_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    while (i < j && at(f, w[i]) >= 0)
      f = at(f, w[i++]);
    if (i == j) {
      if (f != a)
        coincidence(f, a);
      return;
    }
    while (j > i && at(b, w[j - 1] ^ 1u) >= 0)
      b = at(b, w[--j] ^ 1u);
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      at(f, w[i]) = b;
      at(b, w[i] ^ 1u) = f;
      deductions_.emplace_back(f, w[i]);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c) || at(c, x) < 0)
        continue;
      for (const auto& w : by_first_[x]) {
        scan(c, w);
        if (!alive(c))
          break;
      }
      if (!alive(c))
        continue;
      std::int32_t d = at(c, x);
      if (d < 0 || !alive(d))
        continue;
      for (const auto& w : by_first_[x ^ 1u]) {
        scan(d, w);
        if (!alive(d))
          break;
      }
    }
  }

  void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
    k = find(k);
    l = find(l);
    if (k == l)
      return;
    if (k > l)
      std::swap(k, l);
    parent_[l] = k;
    --live_;
    queue.push_back(l);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    std::vector<std::int32_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::int32_t g = queue[q];
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        std::int32_t d = at(g, x);
        if (d < 0)
          continue;
        if (at(d, x ^ 1u) == g)
          at(d, x ^ 1u) = -1;
        std::int32_t mu = find(g), nu = find(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x), queue);
        } else if (at(nu, x ^ 1u) >= 0) {
          merge(mu, at(nu, x ^ 1u), queue);
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1u) = mu;
          deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  std::size_t first_gap() {
    for (std::size_t c = 0; c < rows_; ++c) {
      if (!alive(c))
        continue;
      for (std::size_t x = 0; x < ncols_; ++x)
        if (at(c, x) < 0)
          return c;
    }
    return rows_;
  }

  /// Traces every relator from every live coset. Any failure is fed back as
  /// a coincidence so the main loop can continue.
  bool relators_close() {
    bool ok = true;
    for (std::size_t c = 0; c < rows_; ++c) {
      if (!alive(c))
        continue;
      for (const auto& w : relators_) {
        std::int32_t f = static_cast<std::int32_t>(c);
        for (auto x : w)
          f = at(f, x);
        if (f != static_cast<std::int32_t>(c)) {
          coincidence(f, static_cast<std::int32_t>(c));
          ok = false;
          if (!alive(c))
            break;
        }
      }
    }
    for (const auto& w : subgroup_) {
      std::int32_t f = find(0);
      for (auto x : w)
        f = at(f, x);
      if (f != find(0)) {
        coincidence(f, find(0));
        ok = false;
      }
    }
    return ok;
  }

  /// Renumbers live cosets by first appearance in a row-major scan from 0.
  CosetTable standardize() {
    std::vector<std::int32_t> order{find(0)};
    std::vector<std::int32_t> label(rows_, -1);
    label[order[0]] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < ncols_; ++x) {
        std::int32_t d = at(order[i], x);
        if (label[d] < 0) {
          label[d] = static_cast<std::int32_t>(order.size());
          order.push_back(d);
        }
      }
    std::vector<std::int32_t> out(order.size() * ncols_);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < ncols_; ++x)
        out[i * ncols_ + x] = label[at(order[i], x)];
    return CosetTable(ngens_, order.size(), std::move(out));
  }

  std::size_t ngens_, ncols_, max_cosets_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::vector<std::vector<std::uint32_t>>> by_first_;
  std::vector<std::vector<std::uint32_t>> subgroup_;

  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::size_t rows_ = 0;
  std::size_t live_ = 0;
  std::size_t high_water_ = 0;
  std::vector<std::pair<std::int32_t, std::uint32_t>> deductions_;
};

} // namespace detail

/// Enumerates the cosets of <subgroup> in the group given by `p`.
inline CosetTable coset_enumerate(const Presentation& p,
                                  const std::vector<Word>& subgroup = {},
                                  std::size_t max_cosets = kDefaultMaxCosets) {
  return detail::FelschEnumerator(p, subgroup, max_cosets).run();
}

struct CosetPermutations {
  PermutationGroup group;
  std::vector<Permutation> generator_map; ///< generator i -> its permutation
};

/// One permutation of the cosets per presentation generator.
inline CosetPermutations perms_from_table(const CosetTable& ct) {
  if (!ct.complete())
    throw DomainError("perms_from_table needs a complete coset table");
  std::vector<Permutation> perms;
  for (std::size_t g = 0; g < ct.generator_count(); ++g) {
    std::vector<Point> img(ct.rows());
    for (std::size_t c = 0; c < ct.rows(); ++c)
      img[c] = static_cast<Point>(ct(c, 2 * g));
    perms.emplace_back(std::move(img));
  }
  return {PermutationGroup(ct.rows(), perms), perms};
}

} // namespace nat
