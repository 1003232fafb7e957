#pragma once

#include <string>
#include <vector>

#include "quad_ext.hpp"

namespace nlbox {

/// Exact line correlators E_1..E_n and loop correlators E^o_1..E^o_n.
///
/// The canonical table is built from the seeds E_1 = 0, E_2 = sqrt2 - 1,
/// E_3 = 3 - 2 sqrt2 (positive branch) and E^o_1 = 0, E^o_2 = 1. Custom tables
/// carry arbitrary values and are used to probe perturbed or LP-derived boxes.
class CorrelatorTable {
 public:
  /// Canonical table up to n_max (n_max >= 1).
  static CorrelatorTable canonical(int n_max);
  /// Arbitrary values; line[k-1] = E_k, loop[k-1] = E^o_k. Both lists must
  /// have the same length >= 1.
  static CorrelatorTable custom(std::vector<QuadExt> line, std::vector<QuadExt> loop);

  int n_max() const { return static_cast<int>(line_.size()); }
  /// E_k for 0 <= k <= n_max; E_0 = 1 (the empty product).
  const QuadExt& line(int k) const;
  /// E^o_k for 1 <= k <= n_max.
  const QuadExt& loop(int k) const;

  const std::vector<QuadExt>& line_values() const { return line_; }
  const std::vector<QuadExt>& loop_values() const { return loop_; }

  /// Table of the box with every output flipped: odd correlators change sign.
  CorrelatorTable flipped() const;

 private:
  CorrelatorTable(std::vector<QuadExt> line, std::vector<QuadExt> loop)
      : line_(std::move(line)), loop_(std::move(loop)) {}

  std::vector<QuadExt> line_;
  std::vector<QuadExt> loop_;
};

/// Exact E_n from the three-term line recursion, n >= 0.
QuadExt line_correlator(int n);
/// Exact E^o_n, n >= 1. E^o_1 and E^o_2 are seeds; larger n use the
/// loop closing relation against the line correlators.
QuadExt loop_correlator(int n);

/// sqrt(5 + 4 sqrt2).
double mu();
/// Closed form for E_n, n >= 1.
double line_correlator_closed(int n);
/// Closed form for E^o_n, valid for n >= 2 (n = 1 is evaluated but does not
/// equal the seed E^o_1 = 0).
double loop_correlator_closed(int n);

/// One entry of a golden correlator file.
struct GoldenEntry {
  bool loop = false;
  int n = 0;
  QuadExt value;
  /// Marked "known-discrepancy" in the file.
  bool flagged = false;
  std::string note;
};

std::vector<GoldenEntry> parse_golden(const std::string& text);
std::vector<GoldenEntry> load_golden(const std::string& path);

struct GoldenComparison {
  GoldenEntry entry;
  QuadExt computed;
  bool match = false;
};

/// Compares every golden entry with n <= table.n_max().
std::vector<GoldenComparison> compare_golden(const CorrelatorTable& table,
                                             const std::vector<GoldenEntry>& golden);

}  // namespace nlbox
