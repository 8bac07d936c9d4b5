#pragma once

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "nat/harness/catalog.hpp"
#include "nat/verify/tensor_report.hpp"

namespace nat {

enum class EntryStatus { pass, check_failure, fixture_mismatch, invariant_violation, limit_exceeded, input_error };

inline std::string_view status_name(EntryStatus s) {
  switch (s) {
  case EntryStatus::pass:
    return "pass";
  case EntryStatus::check_failure:
    return "check-failure";
  case EntryStatus::fixture_mismatch:
    return "fixture-mismatch";
  case EntryStatus::invariant_violation:
    return "invariant-violation";
  case EntryStatus::limit_exceeded:
    return "limit-exceeded";
  case EntryStatus::input_error:
    return "input-error";
  }
  return "?";
}

/// Enumeration ceiling, taking ETA_MAX_COSETS from the environment when set.
inline EtaLimits limits_from_env(EtaLimits base = {}) {
  if (const char* v = std::getenv("ETA_MAX_COSETS")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n == 0)
      throw InputError(std::string("ETA_MAX_COSETS must be a positive integer, got '") + v + "'");
    base.max_cosets = static_cast<std::size_t>(n);
  }
  return base;
}

struct SuiteOptions {
  EtaLimits limits;
  VerifyOptions verify;
  unsigned jobs = 1;
  bool strict = false; ///< limit-exceeded entries and not-applicable checks count against the exit code
  const FixtureSet* fixtures = nullptr;
};

struct EntryOutcome {
  std::string id;
  EntryStatus status = EntryStatus::pass;
  std::optional<TensorReport> report;
  std::vector<CheckResult> checks;
  std::string fixture = "none"; ///< none | match | mismatch | unpinned
  std::vector<std::string> fixture_diff;
  std::string error;

  std::size_t fails() const {
    std::size_t k = 0;
    for (const auto& c : checks)
      k += c.failed();
    return k;
  }
};

/// Realizes one pair and runs every check; errors become the status.
inline EntryOutcome run_entry(const CatalogEntry& entry, const SuiteOptions& opt) {
  EntryOutcome out;
  out.id = entry.id;
  try {
    auto pair = entry.make_pair();
    EtaLimits lim = opt.limits;
    lim.allow_large_groups = lim.allow_large_groups || entry.allow_large_groups;
    auto e = realize(pair, lim);
    auto lm = lambda_mu(e);
    out.checks = run_checks(e, lm, opt.verify);
    out.report = make_report(e, lm, out.checks);
    if (out.fails() > 0)
      out.status = EntryStatus::check_failure;
    if (opt.fixtures) {
      if (const auto* pinned = opt.fixtures->find(entry.id)) {
        auto got = out.report->to_json();
        if (got.dump() == pinned->dump()) {
          out.fixture = "match";
        } else {
          out.fixture = "mismatch";
          out.fixture_diff = report_diff(*pinned, got);
          if (out.status == EntryStatus::pass)
            out.status = EntryStatus::fixture_mismatch;
        }
      } else {
        out.fixture = "unpinned";
      }
    }
  } catch (const ResourceLimit& x) {
    out.status = EntryStatus::limit_exceeded;
    out.error = x.what();
  } catch (const InvariantViolation& x) {
    out.status = EntryStatus::invariant_violation;
    out.error = x.what();
  } catch (const InputError& x) {
    out.status = EntryStatus::input_error;
    out.error = x.what();
  } catch (const DomainError& x) {
    out.status = EntryStatus::input_error;
    out.error = x.what();
  }
  return out;
}

struct SuiteReport {
  std::vector<EntryOutcome> entries;
  bool strict = false;

  /// 0 pass, 1 check failure, 2 input error, 3 resource limit (strict only).
  int exit_code() const {
    bool fail = false, input = false, limit = false;
    for (const auto& e : entries) {
      switch (e.status) {
      case EntryStatus::check_failure:
      case EntryStatus::fixture_mismatch:
      case EntryStatus::invariant_violation:
        fail = true;
        break;
      case EntryStatus::input_error:
        input = true;
        break;
      case EntryStatus::limit_exceeded:
        limit = true;
        break;
      case EntryStatus::pass:
        break;
      }
      if (strict)
        for (const auto& c : e.checks)
          if (c.verdict == Verdict::not_applicable && c.note.starts_with("limit-exceeded"))
            limit = true;
    }
    if (fail)
      return 1;
    if (input)
      return 2;
    if (limit && strict)
      return 3;
    return 0;
  }

  std::size_t count(EntryStatus s) const {
    std::size_t k = 0;
    for (const auto& e : entries)
      k += e.status == s;
    return k;
  }
};

/// Runs `selection` on up to opt.jobs worker threads; output order is the
/// selection order.
inline SuiteReport run_suite(const std::vector<CatalogEntry>& selection, const SuiteOptions& opt) {
  if (selection.empty())
    throw InputError("empty catalog selection");
  SuiteReport rep;
  rep.strict = opt.strict;
  rep.entries.resize(selection.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < selection.size();)
      rep.entries[i] = run_entry(selection[i], opt);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(selection.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  return rep;
}

/// One line per check, then one summary line per entry.
inline void write_jsonl(std::ostream& os, const SuiteReport& rep) {
  for (const auto& e : rep.entries) {
    for (const auto& c : e.checks) {
      ojson j;
      j["entry"] = e.id;
      const ojson cj = c.to_json();
      for (const auto& [k, v] : cj.items())
        j[k] = v;
      os << j.dump() << '\n';
    }
    ojson s;
    s["entry"] = e.id;
    s["status"] = status_name(e.status);
    s["report"] = e.report ? e.report->to_json() : ojson(nullptr);
    s["fixture"] = e.fixture;
    if (!e.fixture_diff.empty())
      s["fixture_diff"] = e.fixture_diff;
    if (!e.error.empty())
      s["error"] = e.error;
    os << s.dump() << '\n';
  }
}

/// Aligned summary table.
inline void write_text(std::ostream& os, const SuiteReport& rep) {
  std::size_t w = 5;
  for (const auto& e : rep.entries)
    w = std::max(w, e.id.size());
  auto col = [&](auto v, int width) {
    std::ostringstream s;
    s << v;
    os << std::setw(width) << s.str();
  };
  os << std::left << std::setw(static_cast<int>(w) + 2) << "entry" << std::right;
  for (const char* h : {"|G|", "|H|", "|eta|", "m", "d_gh", "d_hg", "n", "|T|", "exp", "len"})
    col(h, 7);
  os << "  status\n";
  for (const auto& e : rep.entries) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << e.id << std::right;
    if (e.report) {
      const auto& r = *e.report;
      for (std::size_t v : {r.g_order, r.h_order, r.eta_order, r.m, r.d_gh, r.d_hg, r.n,
                            r.tensor_order, r.exponent, r.max_tensor_length})
        col(v, 7);
    } else {
      for (int i = 0; i < 10; ++i)
        col("-", 7);
    }
    os << "  " << status_name(e.status);
    if (e.fails())
      os << " (" << e.fails() << " failed)";
    if (e.fixture != "none")
      os << " fixture=" << e.fixture;
    os << '\n';
    for (const auto& c : e.checks)
      if (c.failed())
        os << "    " << c.check_id << " witness " << c.witness->dump() << '\n';
    for (const auto& d : e.fixture_diff)
      os << "    " << d << '\n';
    if (!e.error.empty())
      os << "    " << e.error << '\n';
  }
  os << rep.entries.size() << " entries: " << rep.count(EntryStatus::pass) << " pass, "
     << rep.count(EntryStatus::check_failure) + rep.count(EntryStatus::fixture_mismatch) +
            rep.count(EntryStatus::invariant_violation)
     << " fail, " << rep.count(EntryStatus::limit_exceeded) << " limit-exceeded, "
     << rep.count(EntryStatus::input_error) << " input-error\n";
}

} // namespace nat
