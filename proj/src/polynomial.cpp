#include "polynomial.hpp"

#include "errors.hpp"

namespace nlbox {

Monomial Monomial::symbol(int k) {
  if (k < kFirstSymbol || k >= kFirstSymbol + kNumSymbols) {
    throw RangeError("correlator symbol E_" + std::to_string(k) + " is not formal");
  }
  Monomial m;
  m.exponents[static_cast<size_t>(k - kFirstSymbol)] = 1;
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (uint8_t e : exponents) d += e;
  return d;
}

bool Monomial::involves_beyond(int k) const {
  for (int i = 0; i < kNumSymbols; ++i) {
    if (i + kFirstSymbol > k && exponents[static_cast<size_t>(i)] != 0) return true;
  }
  return false;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < kNumSymbols; ++i) {
    const int e = exponents[static_cast<size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += "E" + std::to_string(i + kFirstSymbol);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial m;
  for (size_t i = 0; i < m.exponents.size(); ++i) {
    m.exponents[i] = static_cast<uint8_t>(x.exponents[i] + y.exponents[i]);
  }
  return m;
}

bool GradedLex::operator()(const Monomial& x, const Monomial& y) const {
  const int dx = x.degree();
  const int dy = y.degree();
  if (dx != dy) return dx < dy;
  return x.exponents > y.exponents;
}

CorrPolynomial::CorrPolynomial(const QuadExt& c) {
  if (!c.is_zero()) terms_.emplace(Monomial::one(), c);
}

CorrPolynomial::CorrPolynomial(const Monomial& m, const QuadExt& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

QuadExt CorrPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QuadExt(0) : it->second;
}

int CorrPolynomial::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

QuadExt CorrPolynomial::evaluate(const std::array<QuadExt, kNumSymbols>& values) const {
  QuadExt total(0);
  for (const auto& [m, c] : terms_) {
    QuadExt term = c;
    for (size_t i = 0; i < values.size(); ++i) {
      if (m.exponents[i] != 0) term *= pow(values[i], m.exponents[i]);
    }
    total += term;
  }
  return total;
}

std::string CorrPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (m.degree() != 0) out += "*" + m.to_string();
  }
  return out;
}

void CorrPolynomial::accumulate(const Monomial& m, const QuadExt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CorrPolynomial& CorrPolynomial::operator+=(const CorrPolynomial& o) {
  for (const auto& [m, c] : o.terms_) accumulate(m, c);
  return *this;
}

CorrPolynomial& CorrPolynomial::operator-=(const CorrPolynomial& o) {
  for (const auto& [m, c] : o.terms_) accumulate(m, -c);
  return *this;
}

CorrPolynomial& CorrPolynomial::operator*=(const CorrPolynomial& o) {
  CorrPolynomial product;
  for (const auto& [mx, cx] : terms_) {
    for (const auto& [my, cy] : o.terms_) product.accumulate(mx * my, cx * cy);
  }
  *this = std::move(product);
  return *this;
}

CorrPolynomial& CorrPolynomial::operator*=(const QuadExt& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CorrPolynomial operator-(CorrPolynomial x) {
  for (auto& [m, v] : x.terms_) v = -v;
  return x;
}

}  // namespace nlbox
