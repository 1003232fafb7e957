#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "network_dist.hpp"
#include "polynomial.hpp"
#include "quad_ext.hpp"

namespace nlbox {

/// q of a line outcome (at most 7 boxes) with E_1 = 0 and E_2 = sqrt2 - 1
/// folded into constants and E_3..E_7 kept formal.
CorrPolynomial symbolic_q(const Outcome& outcome);

/// A seven-box output string with its label, e.g. "P4" or "Q6".
struct LabeledOutcome {
  std::string label;
  Outcome outcome;
};

inline constexpr int kNumP = 9;
inline constexpr int kNumQ = 8;

/// The seventeen strings of the E_3 certificate, P1..P9 followed by Q1..Q8.
const std::vector<LabeledOutcome>& certificate_outcomes();
const Outcome& certificate_p(int i);  // 1-based
const Outcome& certificate_q(int j);  // 1-based

/// Weighted products c_i P_{u_i} Q_{v_i}. Indices are 1-based.
struct Certificate {
  std::vector<int> u;
  std::vector<int> v;
  std::vector<QuadExt> c;

  size_t size() const { return c.size(); }
};

/// The 24-term reference certificate.
const Certificate& reference_certificate();

/// FNV-1a over the canonical text of the strings, u, v and c.
uint64_t certificate_checksum(const Certificate& cert);
/// Checksum of the reference transcription.
inline constexpr uint64_t kReferenceCertificateChecksum = 0xca830de48e7fd730ULL;

/// 12 sqrt2 - 17 + E_3^2.
CorrPolynomial certificate_target();

struct CertificateCheck {
  /// 2^14 sum_i c_i P_{u_i} Q_{v_i}, with P and Q probabilities (q / 2^7).
  CorrPolynomial combination;
  /// combination - target.
  CorrPolynomial residual;
  /// Every c_i has exact sign +1.
  bool all_positive = false;
  /// No monomial of the combination involves E_4..E_7.
  bool three_party_only = false;
  /// Per-term expansions 2^14 c_i P Q, in certificate order.
  std::vector<CorrPolynomial> terms;

  bool residual_zero() const { return residual.is_zero(); }
  bool passed() const { return residual_zero() && all_positive && three_party_only; }
};

/// Expands the certificate symbolically. Throws ValidationError for
/// mismatched lengths or out-of-range indices.
CertificateCheck certificate_verify(const Certificate& cert);

/// What a verified certificate proves about E_3.
struct E3Bound {
  /// Constant of the certified expression: 12 sqrt2 - 17.
  QuadExt constant;
  /// E_3^2 >= bound = 17 - 12 sqrt2.
  QuadExt bound;
  /// (3 - 2 sqrt2)^2.
  QuadExt square;

  bool bound_is_square() const { return bound == square; }
  /// Sign of constant + e3^2; negative means e3 violates the bound.
  int slack_sign(const QuadExt& e3) const { return (constant + e3 * e3).sign(); }
};

/// Throws ValidationError unless the check passed.
E3Bound e3_bound_conclusion(const CertificateCheck& check);

}  // namespace nlbox
