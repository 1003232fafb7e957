#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "network_dist.hpp"

namespace nlbox {

/// Outcomes drawn i.i.d. from an exact distribution. Identical (topology,
/// table, count, seed) give identical outcomes.
struct SampleRun {
  Topology topology;
  uint64_t count = 0;
  uint64_t seed = 0;
  /// Minus-masks, see Outcome.
  std::vector<uint64_t> outcomes;
  /// |sum of float probabilities - 1| before renormalisation.
  double renormalization_drift = 0;
};

/// Name of the pseudo-random generator, recorded in outputs.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Inverse-CDF sampling over float-converted probabilities.
SampleRun sample(const Topology& topology, const CorrelatorTable& table, uint64_t count, uint64_t seed);

struct CorrelatorEstimate {
  int length = 0;
  /// Full loop window (estimates E^o_n rather than E_n).
  bool full_cycle = false;
  double estimate = 0;
  double standard_error = 0;
  double exact = 0;
};

/// Window-averaged empirical correlators for every window length, with the
/// exact values from table as targets.
std::vector<CorrelatorEstimate> estimate_correlators(const SampleRun& run, const CorrelatorTable& table);

/// Samples containing (+,-,+) at consecutive positions (cyclically on loops).
uint64_t count_forbidden(const SampleRun& run);

}  // namespace nlbox
