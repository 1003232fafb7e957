#include "sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace nlbox {

SampleRun sample(const Topology& topology, const CorrelatorTable& table, uint64_t count, uint64_t seed) {
  SampleRun run{topology, count, seed, {}, 0.0};
  if (count == 0) return run;

  const ExactDistribution dist = distribution(topology, table);
  const double scale = std::ldexp(1.0, -topology.n);
  std::vector<double> cdf(dist.size());
  double total = 0;
  for (uint64_t x = 0; x < dist.size(); ++x) {
    total += std::max(dist.q(x).to_double(), 0.0) * scale;
    cdf[x] = total;
  }
  run.renormalization_drift = std::abs(total - 1.0);
  if (!(total > 0)) throw ValidationError("distribution has no positive mass");
  for (double& c : cdf) c /= total;
  // Last outcome with positive mass; guards against u landing past the end.
  uint64_t last = dist.size() - 1;
  while (last > 0 && cdf[last] == cdf[last - 1]) --last;

  std::mt19937_64 gen(seed);
  run.outcomes.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const uint64_t x = std::min(static_cast<uint64_t>(it - cdf.begin()), last);
    run.outcomes.push_back(x);
  }
  return run;
}

std::vector<CorrelatorEstimate> estimate_correlators(const SampleRun& run, const CorrelatorTable& table) {
  if (run.outcomes.empty()) throw ValidationError("correlator estimates need a nonempty run");
  const int n = run.topology.n;
  const bool loop = run.topology.is_loop();
  const double count = static_cast<double>(run.outcomes.size());
  std::vector<CorrelatorEstimate> out;
  for (int len = 1; len <= n; ++len) {
    CorrelatorEstimate e;
    e.length = len;
    e.full_cycle = loop && len == n;
    std::vector<uint64_t> windows;
    if (e.full_cycle) {
      windows.push_back((uint64_t{1} << n) - 1);
    } else {
      const int starts = loop ? n : n - len + 1;
      for (int s = 0; s < starts; ++s) {
        uint64_t w = 0;
        for (int i = 0; i < len; ++i) w |= uint64_t{1} << ((s + i) % n);
        windows.push_back(w);
      }
    }
    double sum = 0;
    double sum_sq = 0;
    for (uint64_t x : run.outcomes) {
      double avg = 0;
      for (uint64_t w : windows) avg += std::popcount(w & x) % 2 == 0 ? 1.0 : -1.0;
      avg /= static_cast<double>(windows.size());
      sum += avg;
      sum_sq += avg * avg;
    }
    e.estimate = sum / count;
    const double var = std::max(sum_sq / count - e.estimate * e.estimate, 0.0);
    e.standard_error = std::sqrt(var / count);
    e.exact = (e.full_cycle ? table.loop(n) : table.line(len)).to_double();
    out.push_back(e);
  }
  return out;
}

uint64_t count_forbidden(const SampleRun& run) {
  const int n = run.topology.n;
  const int triples = run.topology.is_loop() ? n : std::max(n - 2, 0);
  uint64_t hits = 0;
  for (uint64_t x : run.outcomes) {
    const Outcome o(n, x);
    for (int i = 0; i < triples; ++i) {
      if (o.value(i % n) > 0 && o.value((i + 1) % n) < 0 && o.value((i + 2) % n) > 0) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace nlbox
