#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nlbox {

/// Arbitrary-precision rational. GMP keeps results of arithmetic in lowest
/// terms with a positive denominator.
using BigRational = mpq_class;

BigRational parse_rational(std::string_view text);
std::string format_rational(const BigRational& r);

/// Exact element a + b*sqrt(2) of the quadratic field Q[sqrt 2].
///
/// The representation is unique, so equality is componentwise. Ordering is
/// exact: sign() never touches floating point.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long a, long b = 0) : a_(a), b_(b) {}  // NOLINT(google-explicit-constructor)
  QuadExt(BigRational a, BigRational b);
  explicit QuadExt(BigRational a) : QuadExt(std::move(a), BigRational(0)) {}

  static QuadExt sqrt2() { return QuadExt(0, 1); }

  const BigRational& rational_part() const { return a_; }
  const BigRational& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Exact sign of a + b*sqrt(2): -1, 0 or +1.
  int sign() const;

  /// a - b*sqrt(2).
  QuadExt conjugate() const { return QuadExt(a_, -b_); }
  /// Field norm a^2 - 2 b^2 (product with the conjugate).
  BigRational norm() const;

  QuadExt inverse() const;

  /// Double approximation. Cancellation between the two parts is avoided by
  /// going through the conjugate, so the result stays within a few ulp.
  double to_double() const;

  /// Canonical text, e.g. "-147+104*sqrt2", "1/2", "-sqrt2".
  std::string to_string() const;
  /// Accepts "p/q+r/s*sqrt2" with optional signs and omitted parts.
  static QuadExt parse(std::string_view text);

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_); }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

 private:
  BigRational a_{0};
  BigRational b_{0};
};

/// Exact sqrt(2)^k.
QuadExt pow_sqrt2(unsigned k);

/// x^k by repeated squaring.
QuadExt pow(const QuadExt& x, unsigned k);

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

}  // namespace nlbox
