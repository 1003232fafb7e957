#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "network_dist.hpp"
#include "optimize.hpp"
#include "quad_ext.hpp"

namespace nlbox {

/// Result of one toolkit command: a pass/fail verdict, human-readable lines
/// and a machine-readable payload.
struct Report {
  std::string command;
  bool passed = true;
  std::vector<std::string> lines;
  nlohmann::json data = nlohmann::json::object();
  /// Only filled by commands with tabular output.
  std::string csv;

  std::string text() const;
  std::string json() const;
};

/// {"exact": "a+b*sqrt2", "a": "p/q", "b": "r/s", "float": x}
nlohmann::json to_json(const QuadExt& x);
/// Inverse of to_json; reads "a" and "b".
QuadExt quad_from_json(const nlohmann::json& j);

Report correlators_report(int n, const std::optional<std::string>& golden_path);
Report dist_report(const Topology& topology);
Report verify_report(TopologyKind kind, int n_max, int workers);
Report lemma1_report();
Report bound_report(double tolerance);
Report search_report(const CertificateSearchOptions& options);
Report sample_report(const Topology& topology, uint64_t count, uint64_t seed);

}  // namespace nlbox
