#pragma once

#include <array>
#include <optional>

#include "certificate.hpp"
#include "network_dist.hpp"
#include "simplex.hpp"

namespace nlbox {

enum class SolveMode { Exact, Float };

/// Variables of the hexagon program, in order.
inline constexpr std::array<const char*, 4> kHexagonVariables = {"E3", "E4", "E5", "E6o"};

/// The 64 constraints q^o_6(x) >= 0 for six boxes on a loop, with E_1 = 0 and
/// E_2 = e2 fixed and E_3, E_4, E_5, E^o_6 free in [-1, 1]. Two disjoint
/// pairs contribute the constant e2^2.
template <class F>
LinearProgram<F> hexagon_lp(const F& e2);

LpResult<BigRational> hexagon_solve(const BigRational& e2);
LpResult<QuadExt> hexagon_solve(const QuadExt& e2);
LpResult<double> hexagon_solve(double e2);

/// Feasibility of the hexagon program. Exact mode converts e2 to the rational
/// it represents.
bool hexagon_feasible(double e2, SolveMode mode = SolveMode::Exact);

/// Correlator table realising a hexagon witness: E_1 = 0, E_2 = e2, E_3..E_5
/// and E^o_6 from the witness; unused entries are zero.
CorrelatorTable hexagon_table(const BigRational& e2, const std::array<BigRational, 4>& witness);

struct BoundResult {
  BigRational lower;
  BigRational upper;
  int iterations = 0;
  /// Optimal LP point at the lower endpoint: E_3, E_4, E_5, E^o_6.
  std::array<BigRational, 4> witness;
  /// lower <= sqrt2 - 1 <= upper, decided exactly.
  bool contains_target = false;
  /// Loop-6 nonnegativity of the witness distribution, exact.
  CheckResult witness_check;
};

/// Bisection on [0, 1] for the largest feasible E_2. Midpoints are dyadic,
/// so every probe is an exact rational LP. At most 60 probes.
BoundResult hexagon_max_e2(double tolerance);

struct CertificateSearchOptions {
  /// Only the 24 (u_i, v_i) products of the reference certificate.
  bool reference_support_only = false;
  /// Require the E_3^2 coefficient to vanish too; weights are then
  /// normalised to sum to 1.
  bool forbid_e3_squared = false;
};

struct CertificateSearchResult {
  LpStatus status = LpStatus::Infeasible;
  size_t columns = 0;
  size_t rows = 0;
  /// Products with positive weight.
  Certificate certificate;
  /// Minimal constant term of sum_i c_i q_{P u_i} q_{Q v_i}.
  QuadExt constant;
  /// Exact verification against 12 sqrt2 - 17 + E_3^2 (not run when the E_3^2
  /// coefficient is forced to vanish).
  std::optional<CertificateCheck> check;
};

/// LP over nonnegative weights on products P_i Q_j whose combination has
/// zero coefficient on every non-constant monomial except E_3^2, which is
/// normalised to 1 (in units of 2^-14). Minimises the constant term, solved
/// exactly over Q[sqrt2].
CertificateSearchResult certificate_search(const CertificateSearchOptions& options = {});

}  // namespace nlbox
