#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "correlators.hpp"
#include "errors.hpp"

using nlbox::CorrelatorTable;
using nlbox::QuadExt;

namespace {

// Reference table, transcribed independently of the golden file.
const std::vector<QuadExt> kLine = {QuadExt(0),       QuadExt(-1, 1),  QuadExt(3, -2),   QuadExt(-4, 3),
                                    QuadExt(3, -2),   QuadExt(3, -2),  QuadExt(-14, 10), QuadExt(27, -19),
                                    QuadExt(-31, 22), QuadExt(10, -7), QuadExt(51, -36), QuadExt(-147, 104)};
const std::vector<QuadExt> kLoop = {QuadExt(0),      QuadExt(1),       QuadExt(2, -1),   QuadExt(-5, 4),
                                    QuadExt(9, -6),  QuadExt(-8, 6),   QuadExt(-1, 1),   QuadExt(23, -16),
                                    QuadExt(-52, 37), QuadExt(71, -50), QuadExt(-45, 32)};

// Float oracle: iterate the recursions in long double.
std::vector<long double> float_line(int n_max) {
  const long double s = std::sqrt(2.0L);
  std::vector<long double> e = {1, 0, s - 1, 3 - 2 * s};
  while (static_cast<int>(e.size()) <= n_max) {
    const size_t n = e.size() - 1;
    e.push_back(-e[n] + e[n - 1] + (1 - e[2]) * e[n - 2]);
  }
  return e;
}

}  // namespace

TEST(Correlators, LineExamples) {
  EXPECT_EQ(nlbox::line_correlator(4), QuadExt(-4, 3));
  EXPECT_EQ(nlbox::line_correlator(7), QuadExt(-14, 10));
  EXPECT_EQ(nlbox::line_correlator(1), QuadExt(0));
  EXPECT_EQ(nlbox::line_correlator(0), QuadExt(1));
  EXPECT_THROW(nlbox::line_correlator(-1), nlbox::Error);
}

TEST(Correlators, LoopExamples) {
  EXPECT_EQ(nlbox::loop_correlator(3), QuadExt(2, -1));
  EXPECT_EQ(nlbox::loop_correlator(5), QuadExt(9, -6));
  EXPECT_EQ(nlbox::loop_correlator(12), QuadExt(-62, 44));
  EXPECT_NE(nlbox::loop_correlator(12), QuadExt(44, -62));
  EXPECT_EQ(nlbox::loop_correlator(12).sign(), 1);
}

TEST(Correlators, ReferenceTable) {
  const CorrelatorTable t = CorrelatorTable::canonical(12);
  ASSERT_EQ(t.n_max(), 12);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(t.line(n), kLine[n - 1]) << n;
  for (int n = 1; n <= 11; ++n) EXPECT_EQ(t.loop(n), kLoop[n - 1]) << n;
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(t.line(n).rational_part().get_den(), 1);
    EXPECT_EQ(t.line(n).sqrt2_part().get_den(), 1);
    EXPECT_EQ(t.loop(n).rational_part().get_den(), 1);
    EXPECT_EQ(t.loop(n).sqrt2_part().get_den(), 1);
  }
  const CorrelatorTable one = CorrelatorTable::canonical(1);
  EXPECT_EQ(one.line_values(), std::vector<QuadExt>{QuadExt(0)});
  EXPECT_EQ(one.loop_values(), std::vector<QuadExt>{QuadExt(0)});
}

TEST(Correlators, FloatRecursionOracle) {
  const auto oracle = float_line(30);
  for (int n = 0; n <= 30; ++n) {
    EXPECT_NEAR(nlbox::line_correlator(n).to_double(), static_cast<double>(oracle[n]), 1e-12) << n;
  }
}

TEST(Correlators, ClosedForms) {
  EXPECT_NEAR(nlbox::mu(), std::sqrt(5 + 4 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(nlbox::line_correlator_closed(2), std::sqrt(2.0) - 1, 1e-12);
  EXPECT_NEAR(nlbox::line_correlator_closed(5), 3 - 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(nlbox::line_correlator_closed(12), 104 * std::sqrt(2.0) - 147, 1e-10);
  EXPECT_NEAR(nlbox::loop_correlator_closed(2), 1.0, 1e-12);
  EXPECT_NEAR(nlbox::loop_correlator_closed(7), std::sqrt(2.0) - 1, 1e-12);
  // Outside its range the loop closed form does not give E^o_1 = 0.
  EXPECT_NEAR(nlbox::loop_correlator_closed(1), std::sqrt(2.0) - 1, 1e-12);
  for (int n = 1; n <= 30; ++n) {
    EXPECT_LE(std::fabs(nlbox::line_correlator_closed(n) - nlbox::line_correlator(n).to_double()), 1e-10) << n;
  }
  for (int n = 2; n <= 30; ++n) {
    EXPECT_LE(std::fabs(nlbox::loop_correlator_closed(n) - nlbox::loop_correlator(n).to_double()), 1e-10) << n;
  }
}

TEST(Correlators, PositivityAndMonotonicity) {
  const CorrelatorTable t = CorrelatorTable::canonical(31);
  for (int n = 2; n <= 30; ++n) {
    EXPECT_EQ(t.line(n).sign(), 1) << n;
    EXPECT_EQ(t.loop(n).sign(), 1) << n;
    if (n >= 3) EXPECT_EQ((1 + t.line(n - 1) - t.loop(n)).sign(), 1) << n;
  }
  // At n = 2 the second inequality is an equality: 1 + E_1 - E^o_2 = 0.
  EXPECT_TRUE((1 + t.line(1) - t.loop(2)).is_zero());
  for (int n = 1; n <= 15; ++n) EXPECT_EQ((t.line(2 * n) - t.line(2 * n + 1)).sign(), 1) << n;
}

TEST(Correlators, TwoTermLoopRecursion) {
  const CorrelatorTable t = CorrelatorTable::canonical(30);
  const QuadExt e2 = QuadExt(-1, 1);
  for (int n = 4; n <= 30; ++n) EXPECT_EQ(t.loop(n), e2 * (t.loop(n - 1) + t.loop(n - 2))) << n;
  // It does not extend below n = 4.
  EXPECT_NE(t.loop(3), e2 * (t.loop(2) + t.loop(1)));
}

TEST(Correlators, FlippedTable) {
  const CorrelatorTable t = CorrelatorTable::canonical(8);
  const CorrelatorTable f = t.flipped();
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(f.line(n), n % 2 ? -t.line(n) : t.line(n));
    EXPECT_EQ(f.loop(n), n % 2 ? -t.loop(n) : t.loop(n));
  }
}

TEST(Correlators, Golden) {
  const auto golden = nlbox::load_golden(NLBOX_TEST_GOLDEN);
  ASSERT_EQ(golden.size(), 24U);
  const auto cmp = nlbox::compare_golden(CorrelatorTable::canonical(12), golden);
  ASSERT_EQ(cmp.size(), 24U);
  int mismatches = 0;
  for (const auto& c : cmp) {
    if (c.match) continue;
    ++mismatches;
    EXPECT_TRUE(c.entry.loop);
    EXPECT_EQ(c.entry.n, 12);
    EXPECT_TRUE(c.entry.flagged);
    EXPECT_EQ(c.computed, QuadExt(-62, 44));
  }
  EXPECT_EQ(mismatches, 1);
}

TEST(Correlators, GoldenParsing) {
  const auto entries = nlbox::parse_golden("# comment\nline 2 -1+sqrt2\n\nloop 12 44-62*sqrt2 known-discrepancy\n");
  ASSERT_EQ(entries.size(), 2U);
  EXPECT_FALSE(entries[0].loop);
  EXPECT_EQ(entries[0].value, QuadExt(-1, 1));
  EXPECT_TRUE(entries[1].flagged);
  EXPECT_THROW(nlbox::parse_golden("ring 3 1\n"), nlbox::ParseError);
  EXPECT_THROW(nlbox::parse_golden("line x 1\n"), nlbox::ParseError);
  EXPECT_THROW(nlbox::load_golden("/nonexistent/golden.txt"), nlbox::Error);
}
