#include "certificate.hpp"

#include "errors.hpp"

namespace nlbox {

namespace {

constexpr int kCertificateBoxes = 7;

uint64_t fnv1a(uint64_t hash, std::string_view text) {
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

CorrPolynomial symbolic_q(const Outcome& outcome) {
  if (outcome.size() > kCertificateBoxes) {
    throw RangeError("symbolic expansion supports at most 7 boxes");
  }
  const CorrPolynomial e2(QuadExt(-1, 1));
  const std::vector<int> s = outcome.signs();
  return line_q<CorrPolynomial>(s, [&](int len) -> CorrPolynomial {
    if (len == 1) return CorrPolynomial();
    if (len == 2) return e2;
    return CorrPolynomial::symbol(len);
  });
}

const Outcome& certificate_p(int i) {
  if (i < 1 || i > kNumP) throw RangeError("P index out of range");
  return certificate_outcomes()[static_cast<size_t>(i - 1)].outcome;
}

const Outcome& certificate_q(int j) {
  if (j < 1 || j > kNumQ) throw RangeError("Q index out of range");
  return certificate_outcomes()[static_cast<size_t>(kNumP + j - 1)].outcome;
}

uint64_t certificate_checksum(const Certificate& cert) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (const LabeledOutcome& o : certificate_outcomes()) {
    hash = fnv1a(hash, o.label + "=" + o.outcome.to_string() + ";");
  }
  for (size_t i = 0; i < cert.size(); ++i) {
    hash = fnv1a(hash, std::to_string(cert.u.at(i)) + "," + std::to_string(cert.v.at(i)) + "," +
                           cert.c[i].to_string() + ";");
  }
  return hash;
}

CorrPolynomial certificate_target() {
  return CorrPolynomial(QuadExt(-17, 12)) + CorrPolynomial(Monomial::symbol(3) * Monomial::symbol(3), QuadExt(1));
}

CertificateCheck certificate_verify(const Certificate& cert) {
  if (cert.u.size() != cert.c.size() || cert.v.size() != cert.c.size()) {
    throw ValidationError("certificate vectors u, v, c must have equal length");
  }
  for (size_t i = 0; i < cert.size(); ++i) {
    if (cert.u[i] < 1 || cert.u[i] > kNumP || cert.v[i] < 1 || cert.v[i] > kNumQ) {
      throw ValidationError("certificate term " + std::to_string(i + 1) + " has an index out of range");
    }
  }

  std::vector<CorrPolynomial> p_prob;
  std::vector<CorrPolynomial> q_prob;
  const QuadExt per_string(BigRational(1, 128));
  for (int i = 1; i <= kNumP; ++i) p_prob.push_back(symbolic_q(certificate_p(i)) * per_string);
  for (int j = 1; j <= kNumQ; ++j) q_prob.push_back(symbolic_q(certificate_q(j)) * per_string);

  const QuadExt scale(1L << 14);
  CertificateCheck check;
  check.all_positive = true;
  for (size_t i = 0; i < cert.size(); ++i) {
    CorrPolynomial term = p_prob[static_cast<size_t>(cert.u[i] - 1)] * q_prob[static_cast<size_t>(cert.v[i] - 1)];
    term *= scale * cert.c[i];
    check.combination += term;
    check.terms.push_back(std::move(term));
    if (cert.c[i].sign() <= 0) check.all_positive = false;
  }
  check.three_party_only = true;
  for (const auto& [m, c] : check.combination.terms()) {
    if (m.involves_beyond(3)) check.three_party_only = false;
  }
  check.residual = check.combination - certificate_target();
  return check;
}

E3Bound e3_bound_conclusion(const CertificateCheck& check) {
  if (!check.passed()) throw ValidationError("certificate did not verify; no bound follows");
  E3Bound out;
  out.constant = check.combination.constant();
  out.bound = -out.constant;
  const QuadExt base(3, -2);
  out.square = base * base;
  return out;
}

}  // namespace nlbox
