#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "nat/errors.hpp"

namespace nat {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}. Permutations act on the right:
/// `x^(p*q) = (x^p)^q`, so `p * q` applies `p` first.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw InputError("permutation images are not a bijection");
      seen[p] = true;
    }
  }

  /// Builds from disjoint cycles, e.g. {{0, 1}, {2, 3}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree)
          throw InputError("cycle point out of range");
        img[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(img));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[images_[i]] = static_cast<Point>(i);
    Permutation r;
    r.images_ = std::move(inv);
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw InputError("permutation degree mismatch");
    Permutation r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i)
      r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    std::vector<bool> done(p.degree(), false);
    bool any = false;
    for (Point i = 0; i < p.degree(); ++i) {
      if (done[i] || p[i] == i)
        continue;
      any = true;
      os << '(';
      for (Point j = i; !done[j]; j = p[j]) {
        done[j] = true;
        os << j << (done[p[j]] ? "" : " ");
      }
      os << ')';
    }
    if (!any)
      os << "()";
    return os;
  }

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images())
      h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

} // namespace nat
