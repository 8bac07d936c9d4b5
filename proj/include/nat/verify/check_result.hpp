#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nat/errors.hpp"

namespace nat {

using ojson = nlohmann::ordered_json;

enum class Verdict { pass, fail, not_applicable };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::not_applicable:
    return "not-applicable";
  }
  return "?";
}

inline Verdict verdict_from_name(std::string_view s) {
  if (s == "pass")
    return Verdict::pass;
  if (s == "fail")
    return Verdict::fail;
  if (s == "not-applicable")
    return Verdict::not_applicable;
  throw InputError("unknown verdict '" + std::string(s) + "'");
}

/// Outcome of one check. A fail always carries a witness.
struct CheckResult {
  std::string check_id;
  Verdict verdict = Verdict::pass;
  ojson quantities = ojson::object();
  std::optional<ojson> witness;
  std::string note;

  bool failed() const noexcept { return verdict == Verdict::fail; }

  void fail_with(ojson w) {
    verdict = Verdict::fail;
    if (!witness)
      witness = std::move(w);
  }

  ojson to_json() const {
    if (verdict == Verdict::fail && !witness)
      throw InvariantViolation("check " + check_id + " failed without a witness");
    ojson j;
    j["check"] = check_id;
    j["verdict"] = verdict_name(verdict);
    j["quantities"] = quantities;
    j["witness"] = witness ? *witness : ojson(nullptr);
    if (!note.empty())
      j["note"] = note;
    return j;
  }
};

} // namespace nat
