#include "quad_ext.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <ostream>

#include "errors.hpp"

namespace nlbox {

namespace {

// log2 of |r| rounded towards the bit lengths; good enough to keep
// mpq_get_d away from overflow.
long approx_log2(const BigRational& r) {
  if (sgn(r) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
}

double checked_get_d(const BigRational& r) {
  if (approx_log2(r) > 1020) {
    throw RangeError("value " + format_rational(r) + " exceeds double range");
  }
  return r.get_d();
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool eat(std::string_view word) {
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  std::string_view digits() {
    size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

BigRational parse_rational(std::string_view text) {
  Cursor cur(text);
  bool negative = false;
  if (cur.eat('-')) {
    negative = true;
  } else {
    cur.eat('+');
  }
  std::string_view num = cur.digits();
  if (num.empty()) throw ParseError("expected digits in '" + std::string(text) + "'");
  std::string den = "1";
  if (cur.eat('/')) {
    std::string_view d = cur.digits();
    if (d.empty()) throw ParseError("expected denominator in '" + std::string(text) + "'");
    den = std::string(d);
  }
  if (!cur.done()) throw ParseError("trailing characters in '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class q(den, 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  BigRational r(n, q);
  r.canonicalize();
  return negative ? BigRational(-r) : r;
}

std::string format_rational(const BigRational& r) { return r.get_str(); }

QuadExt::QuadExt(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

int QuadExt::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the part with the larger square wins.
  const BigRational a2 = a_ * a_;
  const BigRational b2 = 2 * b_ * b_;
  return a2 > b2 ? sa : sb;
}

BigRational QuadExt::norm() const { return a_ * a_ - 2 * b_ * b_; }

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q[sqrt2]");
  const BigRational n = norm();
  return QuadExt(a_ / n, -b_ / n);
}

double QuadExt::to_double() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sa == 0 || sb == 0 || sa == sb) {
    return checked_get_d(a_) + checked_get_d(b_) * M_SQRT2;
  }
  // a + b r = (a^2 - 2 b^2) / (a - b r); the denominator has no cancellation.
  const double den = checked_get_d(a_) - checked_get_d(b_) * M_SQRT2;
  return checked_get_d(norm()) / den;
}

std::string QuadExt::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(a_) != 0) out = format_rational(a_);
  if (sgn(b_) != 0) {
    if (b_ == 1) {
      out += out.empty() ? "sqrt2" : "+sqrt2";
    } else if (b_ == -1) {
      out += "-sqrt2";
    } else {
      if (sgn(b_) > 0 && !out.empty()) out += "+";
      out += format_rational(b_) + "*sqrt2";
    }
  }
  return out;
}

QuadExt QuadExt::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty Q[sqrt2] literal");

  std::optional<BigRational> rational;
  std::optional<BigRational> irrational;
  size_t pos = 0;
  while (pos < s.size()) {
    // A term runs up to the next sign that is not at the term start.
    size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    pos = end;

    bool negative = false;
    std::string_view body = term;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    constexpr std::string_view kRoot = "sqrt2";
    if (body.size() >= kRoot.size() && body.substr(body.size() - kRoot.size()) == kRoot) {
      std::string_view coeff = body.substr(0, body.size() - kRoot.size());
      BigRational value(1);
      if (!coeff.empty()) {
        if (coeff.back() != '*') throw ParseError("expected '*' before sqrt2 in '" + s + "'");
        coeff.remove_suffix(1);
        value = parse_rational(coeff);
      }
      if (irrational) throw ParseError("duplicate sqrt2 term in '" + s + "'");
      irrational = negative ? BigRational(-value) : value;
    } else {
      if (body.empty()) throw ParseError("dangling sign in '" + s + "'");
      BigRational value = parse_rational(body);
      if (rational) throw ParseError("duplicate rational term in '" + s + "'");
      rational = negative ? BigRational(-value) : value;
    }
  }
  return QuadExt(rational.value_or(BigRational(0)), irrational.value_or(BigRational(0)));
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  BigRational a = a_ * o.a_ + 2 * b_ * o.b_;
  BigRational b = a_ * o.b_ + o.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw DomainError("division by zero in Q[sqrt2]");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadExt pow_sqrt2(unsigned k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k / 2);
  return k % 2 == 0 ? QuadExt(BigRational(p), BigRational(0))
                    : QuadExt(BigRational(0), BigRational(p));
}

QuadExt pow(const QuadExt& x, unsigned k) {
  QuadExt result(1);
  QuadExt base = x;
  while (k != 0) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

}  // namespace nlbox
