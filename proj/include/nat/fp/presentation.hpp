#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nat/errors.hpp"
#include "nat/fp/word.hpp"

namespace nat {

/// Generators numbered 0..generator_count-1 and freely reduced relators.
class Presentation {
public:
  Presentation() = default;

  Presentation(std::size_t generator_count, std::vector<Word> relators,
               std::vector<std::string> labels = {})
      : generator_count_(generator_count), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != generator_count_)
      throw InputError("generator label count differs from generator count");
    for (auto& r : relators)
      add_relator(r);
  }

  void add_relator(const Word& w) {
    for (const auto& l : w.letters())
      if (l.gen >= generator_count_)
        throw InputError("relator references generator " + std::to_string(l.gen) +
                         " of " + std::to_string(generator_count_));
    relators_.push_back(free_reduce(w));
  }

  std::size_t generator_count() const noexcept { return generator_count_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string to_string() const {
    std::string s = "gens:";
    for (std::size_t g = 0; g < generator_count_; ++g)
      s += " " + (labels_.empty() ? "x" + std::to_string(g) : labels_[g]);
    s += "; rels: ";
    for (std::size_t i = 0; i < relators_.size(); ++i)
      s += (i ? ", " : "") + relators_[i].to_string(labels_);
    return s;
  }

private:
  std::size_t generator_count_ = 0;
  std::vector<Word> relators_;
  std::vector<std::string> labels_;
};

namespace detail {

/// Recursive-descent parser for relator expressions over named generators:
///   expr   := factor ('*' factor)*
///   factor := atom ('^' ['-'] digits)?
///   atom   := name | '(' expr ')'
class RelatorParser {
public:
  RelatorParser(std::string_view src, const std::map<std::string, std::uint32_t>& names)
      : s_(src), names_(names) {}

  Word parse_all() {
    Word w = expr();
    skip_ws();
    if (pos_ != s_.size())
      fail("unexpected character");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("presentation parse error at '" + std::string(s_) + "' offset " +
                     std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Word expr() {
    Word w = factor();
    while (eat('*'))
      w *= factor();
    return w;
  }

  Word factor() {
    Word base = atom();
    if (!eat('^'))
      return base;
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected exponent");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return base.pow(neg ? -k : k);
  }

  Word atom() {
    if (eat('(')) {
      Word w = expr();
      if (!eat(')'))
        fail("expected ')'");
      return w;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      fail("expected generator name or '('");
    auto name = std::string(s_.substr(start, pos_ - start));
    auto it = names_.find(name);
    if (it == names_.end())
      fail("unknown generator '" + name + "'");
    return Word::gen(it->second);
  }

  std::string_view s_;
  const std::map<std::string, std::uint32_t>& names_;
  std::size_t pos_ = 0;
};

inline std::string_view trim(std::string_view v) {
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
    v.remove_prefix(1);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
    v.remove_suffix(1);
  return v;
}

} // namespace detail

/// Parses `gens: a b; rels: a^2, b^2, (a*b)^3`.
inline Presentation parse_presentation(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw InputError("presentation needs 'gens: ...; rels: ...'");
  auto gens_part = detail::trim(text.substr(0, semi));
  auto rels_part = detail::trim(text.substr(semi + 1));
  if (!gens_part.starts_with("gens:") || !rels_part.starts_with("rels:"))
    throw InputError("presentation needs 'gens: ...; rels: ...'");
  gens_part.remove_prefix(5);
  rels_part.remove_prefix(5);

  std::vector<std::string> labels;
  std::map<std::string, std::uint32_t> names;
  std::size_t i = 0;
  while (i < gens_part.size()) {
    while (i < gens_part.size() &&
           (std::isspace(static_cast<unsigned char>(gens_part[i])) || gens_part[i] == ','))
      ++i;
    std::size_t start = i;
    while (i < gens_part.size() &&
           (std::isalnum(static_cast<unsigned char>(gens_part[i])) || gens_part[i] == '_'))
      ++i;
    if (start == i) {
      if (i < gens_part.size())
        throw InputError("bad generator name in presentation");
      break;
    }
    std::string name(gens_part.substr(start, i - start));
    if (!names.emplace(name, static_cast<std::uint32_t>(labels.size())).second)
      throw InputError("duplicate generator '" + name + "'");
    labels.push_back(std::move(name));
  }

  std::vector<Word> rels;
  std::size_t depth = 0, start = 0;
  for (std::size_t k = 0; k <= rels_part.size(); ++k) {
    if (k < rels_part.size() && rels_part[k] == '(')
      ++depth;
    else if (k < rels_part.size() && rels_part[k] == ')')
      depth = depth ? depth - 1 : 0;
    if (k == rels_part.size() || (rels_part[k] == ',' && depth == 0)) {
      auto piece = detail::trim(rels_part.substr(start, k - start));
      if (!piece.empty())
        rels.push_back(detail::RelatorParser(piece, names).parse_all());
      else if (k < rels_part.size())
        throw InputError("empty relator in presentation");
      start = k + 1;
    }
  }
  const std::size_t count = labels.size();
  return Presentation(count, std::move(rels), std::move(labels));
}

} // namespace nat
