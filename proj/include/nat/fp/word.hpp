#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nat/errors.hpp"

namespace nat {

/// One generator or inverse generator. `column()` is 2*gen for x and
/// 2*gen+1 for x^-1, matching coset table columns.
struct Letter {
  std::uint32_t gen;
  bool inverse = false;

  std::uint32_t column() const noexcept { return 2 * gen + (inverse ? 1 : 0); }
  Letter inverted() const noexcept { return {gen, !inverse}; }
  static Letter from_column(std::uint32_t c) noexcept { return {c / 2, (c & 1) != 0}; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) {
    return a.column() <=> b.column();
  }
};

/// A word in the free group on numbered generators.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word gen(std::uint32_t g, int exponent = 1) {
    Word w;
    Letter l{g, exponent < 0};
    for (int i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
      w.letters_.push_back(l);
    return w;
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    Word r;
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      r.letters_.push_back(it->inverted());
    return r;
  }

  Word pow(int k) const {
    Word base = k < 0 ? inverse() : *this;
    Word r;
    for (int i = 0; i < (k < 0 ? -k : k); ++i)
      r.letters_.insert(r.letters_.end(), base.letters_.begin(), base.letters_.end());
    return r;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.letters_.insert(r.letters_.end(), b.letters_.begin(), b.letters_.end());
    return r;
  }
  Word& operator*=(const Word& b) {
    letters_.insert(letters_.end(), b.letters_.begin(), b.letters_.end());
    return *this;
  }

  std::uint32_t max_generator() const {
    std::uint32_t m = 0;
    for (auto l : letters_)
      m = std::max(m, l.gen);
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

  /// Prints with labels when given, otherwise x0, x1, ...
  std::string to_string(std::span<const std::string> labels = {}) const {
    if (letters_.empty())
      return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i)
        s += '*';
      auto g = letters_[i].gen;
      s += g < labels.size() ? labels[g] : "x" + std::to_string(g);
      if (letters_[i].inverse)
        s += "^-1";
    }
    return s;
  }

private:
  std::vector<Letter> letters_;
};

inline Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (!out.empty() && out.back() == l.inverted())
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

/// Freely and cyclically reduced form (conjugate of w in the free group).
inline Word cyclic_reduce(const Word& w) {
  auto letters = free_reduce(w).letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverted()) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(letters.begin() + lo, letters.begin() + hi));
}

} // namespace nat
