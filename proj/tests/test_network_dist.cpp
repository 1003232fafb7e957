#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "correlators.hpp"
#include "errors.hpp"
#include "network_dist.hpp"

using nlbox::BigRational;
using nlbox::CorrelatorTable;
using nlbox::ExactDistribution;
using nlbox::Outcome;
using nlbox::QuadExt;
using nlbox::Topology;

namespace {

const CorrelatorTable& table() {
  static const CorrelatorTable t = CorrelatorTable::canonical(24);
  return t;
}

// Oracle: expand the sum over all 2^n subsets, scanning positions for runs
// of consecutive members (cyclically for loops).
QuadExt brute_force_q(uint64_t outcome, int n, bool loop, const CorrelatorTable& t) {
  const uint64_t full = (uint64_t{1} << n) - 1;
  QuadExt total(0);
  for (uint64_t s = 0; s <= full; ++s) {
    QuadExt w(1);
    if (loop && s == full) {
      w = t.loop(n);
    } else {
      // Start scanning just after a non-member so cyclic runs are not split.
      int start = 0;
      if (loop) {
        while ((s >> start) & 1U) ++start;
        start = (start + 1) % n;
      }
      int run = 0;
      for (int step = 0; step < n; ++step) {
        const int pos = (start + step) % n;
        if ((s >> pos) & 1U) {
          ++run;
        } else if (run > 0) {
          w *= t.line(run);
          run = 0;
        }
      }
      if (run > 0) w *= t.line(run);
    }
    const bool negative = std::popcount(s & outcome) % 2 == 1;
    total += negative ? -w : w;
  }
  return total;
}

QuadExt q_of(const char* text, bool loop = false) {
  const Outcome o = Outcome::parse(text);
  return nlbox::q_value(o, loop ? Topology::loop(o.size()) : Topology::line(o.size()), table());
}

uint64_t subset(std::initializer_list<int> positions) {
  uint64_t s = 0;
  for (int p : positions) s |= uint64_t{1} << (p - 1);
  return s;
}

}  // namespace

TEST(Outcome, ParseAndFormat) {
  const Outcome a = Outcome::parse("+-+");
  EXPECT_EQ(a.size(), 3);
  EXPECT_EQ(a.mask(), 0b010U);
  EXPECT_EQ(Outcome::parse("(+,-,+)"), a);
  EXPECT_EQ(a.to_string(), "+-+");
  EXPECT_EQ(a.flipped().to_string(), "-+-");
  EXPECT_EQ(a.signs(), (std::vector<int>{1, -1, 1}));
  EXPECT_THROW(Outcome::parse(""), nlbox::ParseError);
  EXPECT_THROW(Outcome::parse("+x-"), nlbox::ParseError);
}

TEST(RunDecompose, Examples) {
  auto runs = nlbox::run_decompose(subset({1, 2, 4, 5}), Topology::line(5));
  EXPECT_FALSE(runs.full_cycle);
  EXPECT_EQ(runs.runs, (std::vector<int>{2, 2}));
  EXPECT_EQ(nlbox::run_decompose(subset({1, 3}), Topology::line(3)).runs, (std::vector<int>{1, 1}));
  EXPECT_TRUE(nlbox::run_decompose(subset({1, 2, 3, 4}), Topology::loop(4)).full_cycle);
  EXPECT_EQ(nlbox::run_decompose(subset({4, 1}), Topology::loop(4)).runs, (std::vector<int>{2}));
  EXPECT_EQ(nlbox::run_decompose(subset({1, 2, 3, 4}), Topology::line(4)).runs, (std::vector<int>{4}));
}

TEST(SubsetWeight, Examples) {
  EXPECT_EQ(nlbox::subset_weight(subset({1, 2, 4, 5}), Topology::line(5), table()), QuadExt(3, -2));
  EXPECT_EQ(nlbox::subset_weight(subset({1, 3}), Topology::line(3), table()), QuadExt(0));
  EXPECT_EQ(nlbox::subset_weight(subset({1, 2, 3, 4}), Topology::loop(4), table()), QuadExt(-5, 4));
}

TEST(QValue, Examples) {
  EXPECT_EQ(q_of("+-+"), QuadExt(0));
  EXPECT_EQ(q_of("+++"), QuadExt(2));
  EXPECT_EQ(q_of("+-", true), QuadExt(0));
  EXPECT_EQ(q_of("++-"), QuadExt(-2, 2));
  EXPECT_EQ(q_of("-+-+-"), QuadExt(0));
  EXPECT_EQ(q_of("+++-+++"), QuadExt(0));
  EXPECT_EQ(q_of("+-+-", true), QuadExt(0));
}

TEST(QValue, MatchesBruteForce) {
  for (bool loop : {false, true}) {
    for (int n = loop ? 2 : 1; n <= 10; ++n) {
      const Topology topo = loop ? Topology::loop(n) : Topology::line(n);
      const ExactDistribution dist = nlbox::distribution(topo, table());
      for (uint64_t x = 0; x < topo.outcome_count(); ++x) {
        const QuadExt expected = brute_force_q(x, n, loop, table());
        ASSERT_EQ(nlbox::q_value(Outcome(n, x), topo, table()), expected) << topo.name() << " " << x;
        ASSERT_EQ(dist.q(x), expected) << topo.name() << " " << x;
      }
    }
  }
}

TEST(Distribution, Examples) {
  const ExactDistribution one = nlbox::distribution(Topology::line(1), table());
  EXPECT_EQ(one.q(0), QuadExt(1));
  EXPECT_EQ(one.q(1), QuadExt(1));
  const ExactDistribution sq = nlbox::distribution(Topology::loop(2), table());
  EXPECT_EQ(sq.q(Outcome::parse("++")), QuadExt(2));
  EXPECT_EQ(sq.q(Outcome::parse("--")), QuadExt(2));
  EXPECT_EQ(sq.q(Outcome::parse("+-")), QuadExt(0));
  EXPECT_EQ(sq.q(Outcome::parse("-+")), QuadExt(0));
  const ExactDistribution four = nlbox::distribution(Topology::line(4), table());
  QuadExt sum(0);
  for (const QuadExt& q : four.values()) sum += q;
  EXPECT_EQ(four.size(), 16U);
  EXPECT_EQ(sum, QuadExt(16));
  EXPECT_EQ(four.probability(0), QuadExt(BigRational(0), BigRational(1, 8)));
}

TEST(Distribution, EnumerationLimit) {
  const int saved = nlbox::enumeration_limit();
  nlbox::set_enumeration_limit(4);
  EXPECT_THROW(nlbox::distribution(Topology::line(5), table()), nlbox::ResourceError);
  EXPECT_NO_THROW(nlbox::distribution(Topology::line(4), table()));
  nlbox::set_enumeration_limit(saved);
  EXPECT_THROW(nlbox::set_enumeration_limit(0), nlbox::Error);
  EXPECT_THROW(nlbox::set_enumeration_limit(25), nlbox::Error);
}

TEST(Checks, NonnegativityExamples) {
  auto line7 = nlbox::verify_nonnegativity(nlbox::distribution(Topology::line(7), table()), 3);
  EXPECT_TRUE(line7.passed);
  EXPECT_EQ(line7.checked, 128U);
  auto loop6 = nlbox::verify_nonnegativity(nlbox::distribution(Topology::loop(6), table()));
  EXPECT_TRUE(loop6.passed);
  EXPECT_EQ(loop6.checked, 64U);

  std::vector<QuadExt> line = {QuadExt(0), QuadExt(-1, 1), QuadExt(3, -2) + QuadExt(BigRational(1, 10))};
  const CorrelatorTable bumped = CorrelatorTable::custom(line, {QuadExt(0), QuadExt(1), QuadExt(2, -1)});
  auto bad = nlbox::verify_nonnegativity(nlbox::distribution(Topology::line(3), bumped), 2);
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.violation_count, 1U);
  ASSERT_EQ(bad.violations.size(), 1U);
  EXPECT_NE(bad.violations[0].find("+-+"), std::string::npos);
}

TEST(Checks, AllSuitesPass) {
  for (bool loop : {false, true}) {
    for (int n = loop ? 2 : 1; n <= 10; ++n) {
      const Topology topo = loop ? Topology::loop(n) : Topology::line(n);
      const ExactDistribution dist = nlbox::distribution(topo, table());
      EXPECT_TRUE(nlbox::verify_normalization(dist).passed) << topo.name();
      EXPECT_TRUE(nlbox::verify_marginals(dist).passed) << topo.name();
      EXPECT_TRUE(nlbox::verify_windows(dist, table()).passed) << topo.name();
      EXPECT_TRUE(nlbox::verify_forbidden_pattern(dist).passed) << topo.name();
      if (!loop) {
        EXPECT_TRUE(nlbox::verify_factorization(dist, table()).passed) << topo.name();
        EXPECT_TRUE(nlbox::verify_recursions(dist, table()).passed) << topo.name();
      }
    }
  }
}

TEST(Checks, WindowsDetectWrongTable) {
  const ExactDistribution dist = nlbox::distribution(Topology::line(5), table());
  auto line = table().line_values();
  line[3] += QuadExt(1);
  line.resize(6);
  auto loop = table().loop_values();
  loop.resize(6);
  const CorrelatorTable wrong = CorrelatorTable::custom(line, loop);
  EXPECT_FALSE(nlbox::verify_windows(dist, wrong).passed);
}

TEST(Factorization, Examples) {
  // q_n = 2 q_j q_{n-j-1} for p_n = p_j p_{n-j-1}.
  EXPECT_EQ(q_of("++--+"), QuadExt(2) * q_of("++-") * q_of("+"));
  EXPECT_EQ(q_of("+---"), QuadExt(2) * q_of("+-") * q_of("-"));
  const ExactDistribution d = nlbox::distribution(Topology::line(3), table());
  EXPECT_TRUE(nlbox::verify_factorization(d, table()).passed);
  EXPECT_THROW(nlbox::verify_factorization(nlbox::distribution(Topology::loop(3), table()), table()),
               nlbox::ValidationError);
}

TEST(Recursions, LinePrefixRecursion) {
  for (int n = 1; n <= 9; ++n) {
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
      const Outcome o(n, x);
      ASSERT_EQ(nlbox::line_q_prefix_recursion(o, table()), nlbox::q_value(o, Topology::line(n), table()));
    }
  }
}

TEST(Boundary, ClosedForms) {
  const QuadExt s = QuadExt::sqrt2();
  for (int n = 1; n <= 20; ++n) {
    const auto b = nlbox::boundary_probabilities(n, table());
    EXPECT_TRUE(b.passed()) << n;
    // Independent statement of the expected values.
    const QuadExt two_n(BigRational(mpz_class(1) << n), BigRational(0));
    EXPECT_EQ(b.all_plus, nlbox::pow_sqrt2(n - 1) / two_n) << n;
    const QuadExt inv = nlbox::pow_sqrt2(n + 1).inverse();
    EXPECT_EQ(b.plus_then_minus, inv * (1 - s.inverse())) << n;
    EXPECT_EQ(b.minus_then_plus, b.plus_then_minus) << n;
    EXPECT_EQ(b.minus_plus_minus, inv * (QuadExt(BigRational(3, 2)) - s)) << n;
  }
  EXPECT_EQ(nlbox::boundary_probabilities(2, table()).plus_then_minus, QuadExt(BigRational(-1, 4), BigRational(1, 4)));
  EXPECT_THROW(nlbox::boundary_probabilities(0, table()), nlbox::RangeError);
}

TEST(Boundary, AllPlusUpTo20) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_EQ(nlbox::q_value(Outcome(n, 0), Topology::line(n), table()), nlbox::pow_sqrt2(n - 1)) << n;
  }
}

TEST(LoopAllMinus, Nonnegative) {
  for (int n = 3; n <= 20; ++n) {
    const auto r = nlbox::loop_all_minus(n, table());
    EXPECT_TRUE(r.nonnegative()) << n;
    if (n <= 12) EXPECT_EQ(r.engine, brute_force_q((uint64_t{1} << n) - 1, n, true, table())) << n;
  }
  EXPECT_THROW(nlbox::loop_all_minus(2, table()), nlbox::RangeError);
}

TEST(Flip, Examples) {
  const auto d3 = nlbox::distribution(Topology::line(3), table());
  const auto f3 = nlbox::flip_outputs(d3);
  EXPECT_EQ(f3.q(Outcome::parse("-+-")), d3.q(Outcome::parse("+-+")));
  EXPECT_EQ(f3.q(Outcome::parse("-+-")), QuadExt(0));
  const auto d2 = nlbox::distribution(Topology::line(2), table());
  EXPECT_EQ(nlbox::flip_outputs(d2).values(), d2.values());
  for (bool loop : {false, true}) {
    const Topology topo = loop ? Topology::loop(5) : Topology::line(5);
    const auto d5 = nlbox::distribution(topo, table());
    EXPECT_EQ(nlbox::flip_outputs(d5).values(), nlbox::distribution(topo, table().flipped()).values());
  }
}
