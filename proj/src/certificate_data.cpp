#include "certificate.hpp"

namespace nlbox {

namespace {

// c_i = multiplier * (a + b sqrt2) / denominator, kept in factored form.
struct StoredCoefficient {
  long multiplier;
  long a;
  long b;
  long denominator;
};

constexpr std::array<const char*, kNumP> kPStrings = {
    "-------", "---+---", "--+-+--", "+-+-+-+", "++-+-++",
    "+++-+++", "+++++++", "-++-+-+", "-+-+--+",
};

constexpr std::array<const char*, kNumQ> kQStrings = {
    "----+-+", "----+++", "---+-++", "---++++",
    "--+-+++", "--++-+-", "-+-++++", "+-+--++",
};

constexpr std::array<int, 24> kU = {8, 9, 6, 1, 9, 4, 5, 3, 7, 1, 6, 2,
                                    7, 1, 7, 5, 3, 7, 1, 6, 2, 6, 7, 1};
constexpr std::array<int, 24> kV = {4, 2, 7, 6, 4, 2, 2, 4, 1, 7, 6, 8,
                                    6, 3, 5, 4, 2, 7, 1, 1, 3, 5, 3, 5};

constexpr std::array<StoredCoefficient, 24> kC = {{
    {1, 11146, 16545, 1160712},
    {1, 2581, 4686, 773808},
    {1, 3, 34, 18424},
    {1, 109, 2003, 515872},
    {1, 10253, 16404, 1160712},
    {1, 9529, 14340, 1547616},
    {1, 29063, 10799, 3095232},
    {1, 50719, -4773, 9285696},
    {1, 1517, 304, 147392},
    {9, 139, 40, 147392},
    {3, -38, 337, 257936},
    {1, 6, 19, 5488},
    {1, 227, 1805, 515872},
    {1, 16154, 2677, 3095232},
    {107, 80, 139, 3095232},
    {1, 127277, -41427, 9285696},
    {1, 41879, 4049, 3095232},
    {1, 1387, 366, 147392},
    {1, 1381, 298, 147392},
    {1, 3, 34, 18424},
    {1, 44, 25, 5488},
    {3, 636, 299, 257936},
    {1, 2066, -383, 442176},
    {1, 8536, 9995, 3095232},
}};

}  // namespace

const std::vector<LabeledOutcome>& certificate_outcomes() {
  static const std::vector<LabeledOutcome> outcomes = [] {
    std::vector<LabeledOutcome> out;
    for (int i = 0; i < kNumP; ++i) {
      out.push_back({"P" + std::to_string(i + 1), Outcome::parse(kPStrings[static_cast<size_t>(i)])});
    }
    for (int j = 0; j < kNumQ; ++j) {
      out.push_back({"Q" + std::to_string(j + 1), Outcome::parse(kQStrings[static_cast<size_t>(j)])});
    }
    return out;
  }();
  return outcomes;
}

const Certificate& reference_certificate() {
  static const Certificate cert = [] {
    Certificate out;
    out.u.assign(kU.begin(), kU.end());
    out.v.assign(kV.begin(), kV.end());
    for (const StoredCoefficient& p : kC) {
      BigRational scale(mpz_class(p.multiplier), mpz_class(p.denominator));
      scale.canonicalize();
      out.c.emplace_back(BigRational(scale * p.a), BigRational(scale * p.b));
    }
    return out;
  }();
  return cert;
}

}  // namespace nlbox
