#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nat/core/group_table.hpp"
#include "nat/errors.hpp"

namespace nat {

// Element orderings (identity is always 0):
//   cyclic(n)          a^i                      -> i
//   dihedral(2n)       r^i s^j                  -> i + n*j
//   quaternion8        a^i b^j (a^4, b^2 = a^2) -> i + 4*j
//   klein4             (x, y) in C2 x C2        -> 2*x + y
//   elem_abelian(p,k)  (v_0, ..., v_{k-1})      -> sum v_i p^i
//   sym(n), alt(n)     permutations of {0..n-1} in lexicographic order,
//                      composed left to right

inline GroupTable cyclic_group(std::size_t n) {
  if (n < 1 || n > 12)
    throw InputError("cyclic(n) needs 1 <= n <= 12");
  std::vector<Elem> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = static_cast<Elem>((i + j) % n);
  return GroupTable(n, std::move(m), "C" + std::to_string(n));
}

inline GroupTable dihedral_group(std::size_t order) {
  if (order < 2 || order % 2 || order > 12)
    throw InputError("dihedral(2n) needs an even order 2 <= 2n <= 12");
  const std::size_t n = order / 2;
  std::vector<Elem> m(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
      std::size_t rot = j ? (i + n - k) % n : (i + k) % n;
      m[x * order + y] = static_cast<Elem>(rot + n * ((j + l) % 2));
    }
  return GroupTable(order, std::move(m), "D" + std::to_string(order));
}

inline GroupTable quaternion_group() {
  std::vector<Elem> m(64);
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      std::size_t i = x % 4, j = x / 4, k = y % 4, l = y / 4;
      std::size_t a, b;
      if (!j) {
        a = (i + k) % 4;
        b = l;
      } else if (!l) {
        a = (i + 4 - k) % 4;
        b = 1;
      } else {
        a = (i + 4 - k + 2) % 4;
        b = 0;
      }
      m[x * 8 + y] = static_cast<Elem>(a + 4 * b);
    }
  return GroupTable(8, std::move(m), "Q8");
}

inline bool is_prime(std::size_t p) {
  if (p < 2)
    return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

inline GroupTable elementary_abelian_group(std::size_t p, std::size_t k) {
  if (!is_prime(p) || k < 1)
    throw InputError("elem_abelian(p,k) needs prime p and k >= 1");
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    n *= p;
    if (n > 64)
      throw InputError("elem_abelian(p,k) limited to order 64");
  }
  std::vector<Elem> m(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t r = 0, place = 1, a = x, b = y;
      for (std::size_t i = 0; i < k; ++i) {
        r += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
      }
      m[x * n + y] = static_cast<Elem>(r);
    }
  return GroupTable(n, std::move(m),
                    "E" + std::to_string(p) + "^" + std::to_string(k));
}

inline GroupTable klein_four_group() {
  // x + 2y and 2x + y give the same table: swapping 1 and 2 is an automorphism.
  auto t = elementary_abelian_group(2, 2);
  t.set_name("V4");
  return t;
}

namespace detail {

inline GroupTable permutation_table(std::size_t n, bool even_only, std::string name) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (even_only) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          inversions += p[i] > p[j];
      if (inversions % 2)
        continue;
    }
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t N = perms.size();
  std::vector<Elem> m(N * N);
  std::vector<std::size_t> prod(n);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t i = 0; i < n; ++i)
        prod[i] = perms[b][perms[a][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), prod);
      m[a * N + b] = static_cast<Elem>(it - perms.begin());
    }
  return GroupTable(N, std::move(m), std::move(name));
}

inline std::vector<std::size_t> parse_args(std::string_view s) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InputError("bad numeric argument list '" + std::string(s) + "'");
    std::size_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + static_cast<std::size_t>(s[i++] - '0');
    out.push_back(v);
    if (i < s.size() && s[i] == ',')
      ++i;
  }
  return out;
}

// Splits on `sep` at parenthesis depth zero.
inline std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char c : s) {
    if (c == '(')
      ++depth;
    else if (c == ')')
      --depth;
    if (c == sep && depth == 0)
      parts.emplace_back();
    else
      parts.back() += c;
  }
  return parts;
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

} // namespace detail

inline GroupTable symmetric_group(std::size_t n) {
  if (n < 1 || n > 5)
    throw InputError("sym(n) needs 1 <= n <= 5");
  return detail::permutation_table(n, false, "S" + std::to_string(n));
}

inline GroupTable alternating_group(std::size_t n) {
  if (n < 1 || n > 5)
    throw InputError("alt(n) needs 1 <= n <= 5");
  return detail::permutation_table(n, true, "A" + std::to_string(n));
}

/// Resolves names such as cyclic(6), C6, klein4, V4, dihedral(8), D8,
/// quaternion8, Q8, sym(3), S3, alt(4), A4, elem_abelian(2,3), trivial,
/// and direct(A,B) for the direct product of two of these.
inline GroupTable builtin_group(std::string_view raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      name += c;

  auto call = [&](std::string_view fn) -> std::optional<std::vector<std::size_t>> {
    if (name.size() > fn.size() + 2 && name.starts_with(fn) && name[fn.size()] == '(' &&
        name.back() == ')')
      return detail::parse_args(
          std::string_view(name).substr(fn.size() + 1, name.size() - fn.size() - 2));
    return std::nullopt;
  };
  auto one = [&](const std::vector<std::size_t>& a) {
    if (a.size() != 1)
      throw InputError("'" + name + "' takes one argument");
    return a[0];
  };

  if (name == "trivial")
    return cyclic_group(1);
  if (name.starts_with("direct(") && name.back() == ')') {
    auto parts = detail::split_top_level(std::string_view(name).substr(7, name.size() - 8), ',');
    if (parts.size() != 2)
      throw InputError("direct(A,B) takes two groups");
    auto a = builtin_group(parts[0]);
    auto b = builtin_group(parts[1]);
    return direct_product(a, b, "direct(" + parts[0] + "," + parts[1] + ")");
  }
  if (name == "klein4" || name == "V4")
    return klein_four_group();
  if (name == "quaternion8" || name == "Q8")
    return quaternion_group();
  if (auto a = call("cyclic"))
    return cyclic_group(one(*a));
  if (auto a = call("dihedral"))
    return dihedral_group(one(*a));
  if (auto a = call("sym"))
    return symmetric_group(one(*a));
  if (auto a = call("alt"))
    return alternating_group(one(*a));
  if (auto a = call("elem_abelian")) {
    if (a->size() != 2)
      throw InputError("elem_abelian(p,k) takes two arguments");
    return elementary_abelian_group((*a)[0], (*a)[1]);
  }
  if (name.size() >= 2 && detail::all_digits(name.substr(1))) {
    std::size_t n = std::stoul(name.substr(1));
    switch (name[0]) {
    case 'C':
      return cyclic_group(n);
    case 'D':
      return dihedral_group(n);
    case 'S':
      return symmetric_group(n);
    case 'A':
      return alternating_group(n);
    default:
      break;
    }
  }
  throw InputError("unknown builtin group '" + std::string(raw) + "'");
}

} // namespace nat

namespace nat {

/// Every supported builtin name with its parameters spelled out.
inline std::vector<std::string> builtin_group_names() {
  std::vector<std::string> out;
  for (int n = 1; n <= 12; ++n)
    out.push_back("cyclic(" + std::to_string(n) + ")");
  out.push_back("klein4");
  for (int n = 1; n <= 6; ++n)
    out.push_back("dihedral(" + std::to_string(2 * n) + ")");
  for (const char* s : {"quaternion8", "sym(3)", "sym(4)", "alt(4)", "elem_abelian(2,2)",
                        "elem_abelian(2,3)", "elem_abelian(2,4)", "elem_abelian(3,2)"})
    out.push_back(s);
  return out;
}

} // namespace nat
