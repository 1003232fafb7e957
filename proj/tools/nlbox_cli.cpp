#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include "nlbox/nlbox.h"

namespace {

enum class Format { Text, Json, Csv };

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

nlbox_topology parse_topology(const std::string& name) { return name == "loop" ? NLBOX_LOOP : NLBOX_LINE; }

int finish(nlbox_status status, nlbox_report* report, Format format) {
  if (status != NLBOX_OK) {
    std::cerr << "nlbox: " << nlbox_status_name(status) << ": " << nlbox_last_error() << "\n";
    return status == NLBOX_ERROR_VALIDATION ? kExitFail : kExitUsage;
  }
  switch (format) {
    case Format::Text:
      std::cout << nlbox_report_text(report);
      break;
    case Format::Json:
      std::cout << nlbox_report_json(report) << "\n";
      break;
    case Format::Csv:
      std::cout << nlbox_report_csv(report);
      break;
  }
  const bool passed = nlbox_report_passed(report) != 0;
  nlbox_report_free(report);
  return passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and verification of the binary network non-local box"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nlbox_version());

  int enum_limit = 0;
  app.add_option("--enum-limit", enum_limit, "Override the full-distribution enumeration limit (1-24)")
      ->check(CLI::Range(1, 24));

  Format format = Format::Text;
  bool json = false;
  bool csv = false;
  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", json, "Machine-readable JSON output"); };

  const auto topology_check = CLI::IsMember({"line", "loop"});
  std::string topology = "line";
  int n = 0;
  int n_max = 0;
  int workers = 1;
  double tol = 1e-6;
  uint64_t count = 0;
  uint64_t seed = 0;
  std::string golden = NLBOX_DEFAULT_GOLDEN;
  bool no_golden = false;
  bool restrict_support = false;
  bool forbid_e3sq = false;

  auto* correlators = app.add_subcommand("correlators", "Exact line and loop correlators");
  correlators->add_option("--n", n, "Largest index")->required()->check(CLI::Range(1, 4096));
  correlators->add_option("--golden", golden, "Golden table to compare against")->capture_default_str();
  correlators->add_flag("--no-golden", no_golden, "Skip the golden comparison");
  auto* json_flag = correlators->add_flag("--json", json, "Machine-readable JSON output");
  correlators->add_flag("--csv", csv, "CSV rows")->excludes(json_flag);

  auto* dist = app.add_subcommand("dist", "Full outcome distribution");
  dist->add_option("--topology", topology)->required()->check(topology_check);
  dist->add_option("--n", n, "Number of parties")->required()->check(CLI::Range(1, 24));
  dist->add_flag("--csv", csv, "CSV rows");
  add_json(dist);

  auto* verify = app.add_subcommand("verify", "Run every distribution check for n = 1..n-max");
  verify->add_option("--topology", topology)->required()->check(topology_check);
  verify->add_option("--n-max", n_max, "Largest number of parties")->required()->check(CLI::Range(1, 24));
  verify->add_option("--workers", workers, "Threads for the positivity sweep")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  add_json(verify);

  auto* lemma1 = app.add_subcommand("lemma1", "Check the seven-party certificate identity");
  add_json(lemma1);

  auto* bound = app.add_subcommand("bound", "Bisect the largest feasible E2 on the hexagon");
  bound->add_option("--tol", tol, "Interval width")->capture_default_str()->check(CLI::Range(1e-15, 1.0));
  add_json(bound);

  auto* search = app.add_subcommand("search-certificate", "Search certificates by exact linear programming");
  search->add_flag("--restrict-paper-support", restrict_support, "Only the 24 reference product columns");
  search->add_flag("--forbid-e3-squared", forbid_e3sq, "Require the E3^2 coefficient to vanish");
  add_json(search);

  auto* sample = app.add_subcommand("sample", "Monte Carlo sampling with correlator estimates");
  sample->add_option("--topology", topology)->required()->check(topology_check);
  sample->add_option("--n", n, "Number of parties")->required()->check(CLI::Range(1, 24));
  sample->add_option("--count", count, "Number of samples")->required()->check(CLI::Range(uint64_t{1}, uint64_t{1} << 40));
  sample->add_option("--seed", seed, "Generator seed")->required();
  add_json(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (enum_limit != 0) {
    if (nlbox_set_enumeration_limit(enum_limit) != NLBOX_OK) {
      std::cerr << "nlbox: " << nlbox_last_error() << "\n";
      return kExitUsage;
    }
  }
  if (json) format = Format::Json;
  if (csv) format = Format::Csv;

  nlbox_report* report = nullptr;
  nlbox_status status = NLBOX_OK;
  if (correlators->parsed()) {
    status = nlbox_correlators(n, no_golden ? nullptr : golden.c_str(), &report);
  } else if (dist->parsed()) {
    status = nlbox_dist_table(parse_topology(topology), n, &report);
  } else if (verify->parsed()) {
    status = nlbox_verify(parse_topology(topology), n_max, workers, &report);
  } else if (lemma1->parsed()) {
    status = nlbox_lemma1(&report);
  } else if (bound->parsed()) {
    status = nlbox_bound(tol, &report);
  } else if (search->parsed()) {
    status = nlbox_search_certificate(restrict_support, forbid_e3sq, &report);
  } else if (sample->parsed()) {
    status = nlbox_sample(parse_topology(topology), n, count, seed, &report);
  }
  return finish(status, report, format);
}
