#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "correlators.hpp"
#include "network_dist.hpp"
#include "sampler.hpp"

using nlbox::CorrelatorTable;
using nlbox::Topology;

namespace {

const CorrelatorTable& table() {
  static const CorrelatorTable t = CorrelatorTable::canonical(16);
  return t;
}

}  // namespace

TEST(Sampler, EmptyRun) {
  const auto run = nlbox::sample(Topology::line(3), table(), 0, 1);
  EXPECT_TRUE(run.outcomes.empty());
  EXPECT_EQ(nlbox::count_forbidden(run), 0U);
}

TEST(Sampler, Deterministic) {
  const auto a = nlbox::sample(Topology::loop(6), table(), 10000, 42);
  const auto b = nlbox::sample(Topology::loop(6), table(), 10000, 42);
  const auto c = nlbox::sample(Topology::loop(6), table(), 10000, 43);
  EXPECT_EQ(a.outcomes, b.outcomes);
  EXPECT_NE(a.outcomes, c.outcomes);
  EXPECT_LE(a.renormalization_drift, 1e-12);
}

TEST(Sampler, ForbiddenPatternNeverDrawn) {
  const auto run = nlbox::sample(Topology::line(3), table(), 1000000, 5);
  EXPECT_EQ(nlbox::count_forbidden(run), 0U);
  std::map<uint64_t, int> seen;
  for (uint64_t x : run.outcomes) ++seen[x];
  EXPECT_EQ(seen.count(0b010), 0U);
}

TEST(Sampler, SquareOnlyAgreeingPairs) {
  const auto run = nlbox::sample(Topology::loop(2), table(), 10000, 9);
  for (uint64_t x : run.outcomes) EXPECT_TRUE(x == 0 || x == 3) << x;
}

TEST(Sampler, FrequenciesMatchProbabilities) {
  const Topology topo = Topology::line(5);
  const auto dist = nlbox::distribution(topo, table());
  const uint64_t count = 1000000;
  const auto run = nlbox::sample(topo, table(), count, 2024);
  std::vector<double> freq(dist.size(), 0.0);
  for (uint64_t x : run.outcomes) freq[x] += 1.0 / count;
  for (uint64_t x = 0; x < dist.size(); ++x) {
    const double p = dist.probability(x).to_double();
    if (p == 0) {
      EXPECT_EQ(freq[x], 0.0) << x;
    } else {
      EXPECT_LE(std::fabs(freq[x] - p), 5 * std::sqrt(p * (1 - p) / count)) << x;
    }
  }
}

TEST(Sampler, EstimateExamples) {
  const auto line = nlbox::sample(Topology::line(7), table(), 1000000, 1);
  const auto est = nlbox::estimate_correlators(line, table());
  ASSERT_EQ(est.size(), 7U);
  EXPECT_LE(std::fabs(est[1].estimate - 0.414214), 4e-3);
  EXPECT_LE(std::fabs(est[0].estimate), 4e-3);
  for (const auto& e : est) EXPECT_NEAR(e.standard_error, 1e-3, 1e-3);

  const auto loop = nlbox::sample(Topology::loop(7), table(), 1000000, 1);
  const auto lest = nlbox::estimate_correlators(loop, table());
  ASSERT_FALSE(lest.empty());
  EXPECT_TRUE(lest.back().full_cycle);
  EXPECT_LE(std::fabs(lest.back().estimate - 0.414214), 4e-3);
}

TEST(SamplerProperty, WithinToleranceAcrossSeeds) {
  const uint64_t count = 100000;
  const double tol = 4 / std::sqrt(static_cast<double>(count));
  for (bool loop : {false, true}) {
    const Topology topo = loop ? Topology::loop(7) : Topology::line(7);
    int good = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
      const auto est = nlbox::estimate_correlators(nlbox::sample(topo, table(), count, seed), table());
      bool ok = true;
      for (const auto& e : est) ok = ok && std::fabs(e.estimate - e.exact) <= tol;
      good += ok;
    }
    EXPECT_GE(good, 99) << topo.name();
  }
}
