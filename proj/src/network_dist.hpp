#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "correlators.hpp"
#include "quad_ext.hpp"

namespace nlbox {

enum class TopologyKind { Line, Loop };

/// n identical boxes in a chain (n + 1 sources) or on a cycle (n sources).
struct Topology {
  TopologyKind kind = TopologyKind::Line;
  int n = 1;

  static Topology line(int n);
  static Topology loop(int n);
  static Topology parse(std::string_view kind, int n);

  bool is_loop() const { return kind == TopologyKind::Loop; }
  uint64_t outcome_count() const { return uint64_t{1} << n; }
  std::string name() const;
};

/// Output string x_1..x_n. Bit j of the mask is set when x_{j+1} = -1, so
/// mask 0 is the all-plus string.
class Outcome {
 public:
  Outcome(int n, uint64_t minus_mask);
  /// Accepts "+-+" as well as "(+,-,+)".
  static Outcome parse(std::string_view text);

  int size() const { return n_; }
  uint64_t mask() const { return mask_; }
  /// x_{j+1} as +1 or -1.
  int value(int j) const { return (mask_ >> j) & 1U ? -1 : 1; }
  std::vector<int> signs() const;
  Outcome flipped() const;
  std::string to_string() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  int n_;
  uint64_t mask_;
};

/// Maximal blocks of consecutive positions of a subset (cyclically for
/// loops). The full set of a loop is reported as a full cycle.
struct RunDecomposition {
  bool full_cycle = false;
  std::vector<int> runs;
};

RunDecomposition run_decompose(uint64_t subset, const Topology& topology);

/// Correlator of the product over a subset: product of E_len over its runs,
/// or E^o_n for the full cycle.
QuadExt subset_weight(uint64_t subset, const Topology& topology, const CorrelatorTable& table);

/// q of every prefix of a line segment, by dynamic programming over the last
/// run; entry i covers the first i positions.
///
/// f[i] sums over subsets of the first i positions; either position i is
/// outside the subset, or it closes a run of length L whose left neighbour is
/// excluded. Works over any commutative ring with a run weight callback.
template <class Ring, class RunWeight>
std::vector<Ring> line_q_prefixes(std::span<const int> signs, RunWeight&& run_weight) {
  const int n = static_cast<int>(signs.size());
  std::vector<Ring> f;
  f.reserve(static_cast<size_t>(n) + 1);
  f.emplace_back(1);
  for (int i = 1; i <= n; ++i) {
    Ring total = f[static_cast<size_t>(i - 1)];
    int sign = 1;
    for (int len = 1; len <= i; ++len) {
      sign *= signs[static_cast<size_t>(i - len)];
      const int rest = std::max(i - len - 1, 0);
      Ring term = run_weight(len) * f[static_cast<size_t>(rest)];
      if (sign > 0) {
        total += term;
      } else {
        total -= term;
      }
    }
    f.push_back(std::move(total));
  }
  return f;
}

/// q of the whole segment.
template <class Ring, class RunWeight>
Ring line_q(std::span<const int> signs, RunWeight&& run_weight) {
  return line_q_prefixes<Ring>(signs, std::forward<RunWeight>(run_weight)).back();
}

/// Exact q = 2^n p of one outcome; O(n^2) for lines and O(n^3) for loops.
QuadExt q_value(const Outcome& outcome, const Topology& topology, const CorrelatorTable& table);

/// Line q built prefix by prefix: q_{k+1} = q_k + x_1..x_{k+1} (E_{k+1} + R_k),
/// where the prefix remainder R_k = sum_i (x_1..x_{i+1}) q_i E_{k-i}.
QuadExt line_q_prefix_recursion(const Outcome& outcome, const CorrelatorTable& table);

/// Loop q obtained by opening the cycle at the last box: subsets avoiding it
/// give a line on the other boxes, subsets containing it split by the arc
/// through it, and the full cycle contributes E^o. Needs n >= 2.
QuadExt loop_q_recursion(const Outcome& outcome, const CorrelatorTable& table);

/// Largest n for which full distributions are materialised. Defaults to 16,
/// overridable with the NLBOX_ENUM_LIMIT environment variable.
int enumeration_limit();
void set_enumeration_limit(int limit);

/// Dense table of q over all 2^n outcomes.
class ExactDistribution {
 public:
  ExactDistribution(Topology topology, std::vector<QuadExt> q);

  const Topology& topology() const { return topology_; }
  uint64_t size() const { return q_.size(); }
  const QuadExt& q(uint64_t mask) const { return q_.at(mask); }
  const QuadExt& q(const Outcome& x) const { return q_.at(x.mask()); }
  QuadExt probability(uint64_t mask) const;
  const std::vector<QuadExt>& values() const { return q_; }

 private:
  Topology topology_;
  std::vector<QuadExt> q_;
};

/// Builds q for every outcome with a Walsh-Hadamard transform of the subset
/// weights. Throws ResourceError above the enumeration limit.
ExactDistribution distribution(const Topology& topology, const CorrelatorTable& table);

/// q'(x) = q(-x).
ExactDistribution flip_outputs(const ExactDistribution& dist);

struct CheckResult {
  std::string name;
  bool passed = true;
  uint64_t checked = 0;
  uint64_t violation_count = 0;
  /// First few offending outcomes or identities.
  std::vector<std::string> violations;
  std::string detail;

  void fail(std::string what);
};

CheckResult verify_nonnegativity(const ExactDistribution& dist, int workers = 1);
CheckResult verify_normalization(const ExactDistribution& dist);
/// sum_x x_j q(x) = 0 for every position j.
CheckResult verify_marginals(const ExactDistribution& dist);
/// Every contiguous window W: sum_x prod_W x q(x) = 2^n E_|W| (E^o_n for the
/// full loop window).
CheckResult verify_windows(const ExactDistribution& dist, const CorrelatorTable& table);
/// Every outcome with (+,-,+) at consecutive positions has q = 0.
CheckResult verify_forbidden_pattern(const ExactDistribution& dist);
/// Line only: when x_{j-1} x_j x_{j+1} = (+,-,-), box j+1 can be dropped and
/// q_n(x) = 2 q_j(x_1..x_j) q_{n-j-1}(x_{j+2}..x_n).
CheckResult verify_factorization(const ExactDistribution& dist, const CorrelatorTable& table);
/// Agreement of the dense distribution with the per-outcome recursions.
CheckResult verify_recursions(const ExactDistribution& dist, const CorrelatorTable& table);

/// Probabilities of the four building blocks of every line outcome, evaluated
/// exactly and compared with their closed forms.
struct BoundaryProbabilities {
  int n = 0;
  QuadExt all_plus;          // p_n(+..+)
  QuadExt plus_then_minus;   // p_{n+1}(+..+,-)
  QuadExt minus_then_plus;   // p_{n+1}(-,+..+)
  QuadExt minus_plus_minus;  // p_{n+2}(-,+..+,-)
  QuadExt expected_all_plus;
  QuadExt expected_edge;
  QuadExt expected_minus_plus_minus;

  bool passed() const;
};

BoundaryProbabilities boundary_probabilities(int n, const CorrelatorTable& table);

/// q^o(-..-) from the engine next to the single-arc expression
/// 1 + n sum_{k=2}^{n-1} (-1)^k E_k + (-1)^n E^o_n.
struct LoopAllMinus {
  int n = 0;
  QuadExt engine;
  QuadExt single_arc;
  QuadExt difference;  // engine - single_arc

  bool agree() const { return difference.is_zero(); }
  bool nonnegative() const { return engine.sign() >= 0; }
};

LoopAllMinus loop_all_minus(int n, const CorrelatorTable& table);

}  // namespace nlbox
