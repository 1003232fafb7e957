#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "quad_ext.hpp"

namespace nlbox {

/// Number of formal correlator symbols E_3..E_7.
inline constexpr int kNumSymbols = 5;
inline constexpr int kFirstSymbol = 3;

/// Product of powers of E_3..E_7. exponents[i] belongs to E_{i+3}.
struct Monomial {
  std::array<uint8_t, kNumSymbols> exponents{};

  static Monomial one() { return {}; }
  /// E_k for 3 <= k <= 7.
  static Monomial symbol(int k);

  int degree() const;
  /// True when some E_k with k >= 4 appears.
  bool involves_beyond(int k) const;
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& x, const Monomial& y);
};

/// Graded lexicographic order: lower total degree first, then larger
/// exponent of the lowest-indexed symbol first.
struct GradedLex {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

/// Multivariate polynomial in E_3..E_7 with Q[sqrt2] coefficients. Zero
/// coefficients are never stored.
class CorrPolynomial {
 public:
  using Terms = std::map<Monomial, QuadExt, GradedLex>;

  CorrPolynomial() = default;
  CorrPolynomial(long c) : CorrPolynomial(QuadExt(c)) {}  // NOLINT(google-explicit-constructor)
  explicit CorrPolynomial(const QuadExt& c);
  CorrPolynomial(const Monomial& m, const QuadExt& c);

  static CorrPolynomial symbol(int k) { return CorrPolynomial(Monomial::symbol(k), QuadExt(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  QuadExt coefficient(const Monomial& m) const;
  QuadExt constant() const { return coefficient(Monomial::one()); }
  int degree() const;

  /// values[i] substitutes E_{i+3}.
  QuadExt evaluate(const std::array<QuadExt, kNumSymbols>& values) const;

  std::string to_string() const;

  CorrPolynomial& operator+=(const CorrPolynomial& o);
  CorrPolynomial& operator-=(const CorrPolynomial& o);
  CorrPolynomial& operator*=(const CorrPolynomial& o);
  CorrPolynomial& operator*=(const QuadExt& c);

  friend CorrPolynomial operator+(CorrPolynomial x, const CorrPolynomial& y) { return x += y; }
  friend CorrPolynomial operator-(CorrPolynomial x, const CorrPolynomial& y) { return x -= y; }
  friend CorrPolynomial operator*(CorrPolynomial x, const CorrPolynomial& y) { return x *= y; }
  friend CorrPolynomial operator*(CorrPolynomial x, const QuadExt& c) { return x *= c; }
  friend CorrPolynomial operator*(const QuadExt& c, CorrPolynomial x) { return x *= c; }
  friend CorrPolynomial operator-(CorrPolynomial x);

  friend bool operator==(const CorrPolynomial&, const CorrPolynomial&) = default;

 private:
  void accumulate(const Monomial& m, const QuadExt& c);

  Terms terms_;
};

}  // namespace nlbox
