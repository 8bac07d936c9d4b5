#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "nat/harness/extremal.hpp"
#include "nat/harness/pair_json.hpp"
#include "nat/harness/suite.hpp"

namespace fs = std::filesystem;
using namespace nat;

namespace {

std::ofstream open_out(const fs::path& dir, const char* file) {
  fs::create_directories(dir);
  std::ofstream out(dir / file);
  if (!out)
    throw InputError("cannot write " + (dir / file).string());
  return out;
}

std::vector<CatalogEntry> select(const std::vector<std::string>& ids, bool all) {
  auto cat = default_catalog();
  if (all || ids.empty())
    return cat;
  std::vector<CatalogEntry> out;
  for (const auto& id : ids) {
    if (const auto* e = find_entry(cat, id))
      out.push_back(*e);
    else
      out.push_back({id, {"ad-hoc"}});
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Tensor products of groups acting compatibly: compute and verify"};
  app.require_subcommand(1);

  auto* cat = app.add_subcommand("catalog", "List the default catalog");
  bool cat_json = false;
  cat->add_flag("--json", cat_json, "One JSON object per line");

  auto* compute = app.add_subcommand("compute", "Realize one pair and print its report");
  std::string pair_spec;
  bool allow_large = false, compute_checks = false;
  compute->add_option("--pair", pair_spec, "Pair file or builtin pair name")->required();
  compute->add_flag("--allow-large", allow_large, "Accept groups above the order cap");
  compute->add_flag("--checks", compute_checks, "Also print every check result");

  auto* verify = app.add_subcommand("verify", "Run the checks over catalog entries");
  std::vector<std::string> entries;
  bool all = false, strict = false;
  unsigned jobs = 1;
  std::string fixtures_file, out_dir;
  bool jsonl = false;
  verify->add_option("--entry", entries, "Catalog id or builtin pair name (repeatable)");
  verify->add_flag("--all", all, "Whole default catalog (the default)");
  verify->add_flag("--strict", strict, "Limit-exceeded entries fail with exit code 3");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  verify->add_option("--fixtures", fixtures_file, "Pinned fixture file to compare against");
  verify->add_option("--out", out_dir, "Write suite.jsonl and summary.txt here");
  verify->add_flag("--jsonl", jsonl, "Print JSON lines instead of the table");

  auto* search = app.add_subcommand("search", "Census of compatible actions per m");
  std::size_t max_order = 4;
  std::uint64_t budget = 1'000'000;
  bool search_json = false;
  std::string search_out;
  search->add_option("--max-order", max_order, "Largest group order")->check(CLI::Range(1, 8));
  search->add_option("--budget", budget, "Per group pair budget");
  search->add_flag("--json", search_json, "Print JSON");
  search->add_option("--out", search_out, "Write census.json here");

  auto* fixtures = app.add_subcommand("fixtures", "Pin catalog reports");
  bool pin = false;
  std::string pin_out;
  std::vector<std::string> pin_entries;
  fixtures->add_flag("--pin", pin, "Realize, verify and write the fixture file")->required();
  fixtures->add_option("--out", pin_out, "Fixture file to write")->required();
  fixtures->add_option("--entry", pin_entries, "Restrict to these entries");
  fixtures->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (cat->parsed()) {
    for (const auto& e : default_catalog()) {
      if (cat_json) {
        nlohmann::ordered_json j{{"id", e.id}, {"tags", e.tags}, {"allow_large", e.allow_large_groups}};
        std::cout << j.dump() << '\n';
      } else {
        std::cout << e.id;
        for (const auto& t : e.tags)
          std::cout << "  [" << t << "]";
        std::cout << '\n';
      }
    }
    return 0;
  }

  if (compute->parsed()) {
    auto pair = load_pair(pair_spec);
    EtaLimits lim = limits_from_env();
    lim.allow_large_groups = allow_large;
    auto e = realize(pair, lim);
    auto lm = lambda_mu(e);
    auto checks = run_checks(e, lm);
    if (compute_checks)
      for (const auto& c : checks)
        std::cout << c.to_json().dump() << '\n';
    std::cout << make_report(e, lm, checks).to_json().dump(2) << '\n';
    for (const auto& c : checks)
      if (c.failed())
        return 1;
    return 0;
  }

  if (verify->parsed()) {
    SuiteOptions opt;
    opt.limits = limits_from_env();
    opt.jobs = jobs;
    opt.strict = strict;
    std::optional<FixtureSet> fx;
    if (!fixtures_file.empty()) {
      fx = FixtureSet::load(fixtures_file);
      opt.fixtures = &*fx;
    }
    auto rep = run_suite(select(entries, all), opt);
    if (jsonl)
      write_jsonl(std::cout, rep);
    else
      write_text(std::cout, rep);
    if (!out_dir.empty()) {
      auto j = open_out(out_dir, "suite.jsonl");
      write_jsonl(j, rep);
      auto t = open_out(out_dir, "summary.txt");
      write_text(t, rep);
    }
    return rep.exit_code();
  }

  if (search->parsed()) {
    auto c = search_extremal(max_order, budget);
    if (search_json)
      std::cout << c.to_json().dump(2) << '\n';
    else
      c.write_text(std::cout);
    if (!search_out.empty())
      open_out(search_out, "census.json") << c.to_json().dump(2) << '\n';
    return c.partial ? 3 : 0;
  }

  if (fixtures->parsed()) {
    SuiteOptions opt;
    opt.limits = limits_from_env();
    opt.jobs = jobs;
    auto rep = run_suite(select(pin_entries, pin_entries.empty()), opt);
    write_text(std::cout, rep);
    if (int code = rep.exit_code(); code != 0) {
      std::cerr << "not pinning: the suite did not pass\n";
      return code;
    }
    FixtureSet set;
    for (const auto& e : rep.entries)
      set.pin(e.id, e.report->to_json());
    set.save(pin_out);
    std::cout << "pinned " << set.size() << " reports to " << pin_out << '\n';
    return 0;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << " (limit " << e.limit() << ", observed "
              << e.observed() << ")\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  }
}
