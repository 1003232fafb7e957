#include "network_dist.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <thread>

#include "errors.hpp"

namespace nlbox {

namespace {

constexpr int kMaxTopologySize = 62;
constexpr int kMaxEnumerationLimit = 24;
constexpr size_t kMaxListedViolations = 16;

int initial_enumeration_limit() {
  if (const char* env = std::getenv("NLBOX_ENUM_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= kMaxEnumerationLimit) {
      return static_cast<int>(v);
    }
  }
  return 16;
}

std::atomic<int>& limit_storage() {
  static std::atomic<int> limit{initial_enumeration_limit()};
  return limit;
}

uint64_t low_mask(int bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

int parity_sign(uint64_t bits) { return std::popcount(bits) % 2 == 0 ? 1 : -1; }

auto line_weight(const CorrelatorTable& table) {
  return [&table](int len) { return table.line(len); };
}

std::vector<int> cyclic_segment(std::span<const int> signs, int start, int len) {
  const int n = static_cast<int>(signs.size());
  std::vector<int> out;
  out.reserve(static_cast<size_t>(std::max(len, 0)));
  for (int i = 0; i < len; ++i) out.push_back(signs[static_cast<size_t>(((start + i) % n + n) % n)]);
  return out;
}

void require_table(const Topology& topology, const CorrelatorTable& table) {
  if (table.n_max() < topology.n) {
    throw RangeError("correlator table of size " + std::to_string(table.n_max()) +
                     " cannot serve " + topology.name());
  }
}

QuadExt loop_q(std::span<const int> s, const CorrelatorTable& table) {
  const int n = static_cast<int>(s.size());
  int all = 1;
  for (int v : s) all *= v;
  QuadExt q = all > 0 ? table.loop(n) : -table.loop(n);

  // Line q of every cyclic segment, indexed [start][len].
  std::vector<std::vector<QuadExt>> seg;
  seg.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    const std::vector<int> run = cyclic_segment(s, a, n);
    seg.push_back(line_q_prefixes<QuadExt>(run, line_weight(table)));
  }

  // Position 0 excluded: the cycle opens into a line on 1..n-1.
  q += seg[static_cast<size_t>(1 % n)][static_cast<size_t>(n - 1)];

  // Position 0 inside an arc of length len < n starting at -t.
  for (int len = 1; len <= n - 1; ++len) {
    const QuadExt& e = table.line(len);
    for (int t = 0; t < len; ++t) {
      const int start = (n - t) % n;
      int sign = 1;
      for (int i = 0; i < len; ++i) sign *= s[static_cast<size_t>((start + i) % n)];
      const int rest_len = n - len - 2;
      QuadExt term = e;
      if (rest_len > 0) term *= seg[static_cast<size_t>((start + len + 1) % n)][static_cast<size_t>(rest_len)];
      if (sign > 0) {
        q += term;
      } else {
        q -= term;
      }
    }
  }
  return q;
}

}  // namespace

Topology Topology::line(int n) {
  if (n < 1 || n > kMaxTopologySize) throw RangeError("line size must be in [1, 62]");
  return {TopologyKind::Line, n};
}

Topology Topology::loop(int n) {
  if (n < 1 || n > kMaxTopologySize) throw RangeError("loop size must be in [1, 62]");
  return {TopologyKind::Loop, n};
}

Topology Topology::parse(std::string_view kind, int n) {
  if (kind == "line") return line(n);
  if (kind == "loop") return loop(n);
  throw ParseError("unknown topology '" + std::string(kind) + "' (expected line or loop)");
}

std::string Topology::name() const {
  return std::string(is_loop() ? "loop" : "line") + " n=" + std::to_string(n);
}

Outcome::Outcome(int n, uint64_t minus_mask) : n_(n), mask_(minus_mask) {
  if (n < 0 || n > kMaxTopologySize) throw RangeError("outcome length must be in [0, 62]");
  if ((minus_mask & ~low_mask(n)) != 0) throw RangeError("outcome mask has bits beyond its length");
}

Outcome Outcome::parse(std::string_view text) {
  int n = 0;
  uint64_t mask = 0;
  for (char c : text) {
    if (c == '+' || c == '-') {
      if (n >= kMaxTopologySize) throw RangeError("outcome too long");
      if (c == '-') mask |= uint64_t{1} << n;
      ++n;
    } else if (c != ',' && c != '(' && c != ')' && c != ' ') {
      throw ParseError("unexpected character in outcome '" + std::string(text) + "'");
    }
  }
  if (n == 0) throw ParseError("empty outcome");
  return Outcome(n, mask);
}

std::vector<int> Outcome::signs() const {
  std::vector<int> out(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] = value(j);
  return out;
}

Outcome Outcome::flipped() const { return Outcome(n_, ~mask_ & low_mask(n_)); }

std::string Outcome::to_string() const {
  std::string out;
  for (int j = 0; j < n_; ++j) out.push_back(value(j) > 0 ? '+' : '-');
  return out;
}

RunDecomposition run_decompose(uint64_t subset, const Topology& topology) {
  const int n = topology.n;
  if ((subset & ~low_mask(n)) != 0) throw RangeError("subset exceeds topology size");
  RunDecomposition out;
  if (topology.is_loop() && subset == low_mask(n)) {
    out.full_cycle = true;
    return out;
  }
  // On a loop, start scanning just after an excluded position so no run wraps.
  int offset = 0;
  if (topology.is_loop()) {
    while ((subset >> offset) & 1U) ++offset;
    offset = (offset + 1) % n;
  }
  int run = 0;
  for (int i = 0; i < n; ++i) {
    const int pos = (offset + i) % n;
    if ((subset >> pos) & 1U) {
      ++run;
    } else if (run > 0) {
      out.runs.push_back(run);
      run = 0;
    }
  }
  if (run > 0) out.runs.push_back(run);
  return out;
}

QuadExt subset_weight(uint64_t subset, const Topology& topology, const CorrelatorTable& table) {
  require_table(topology, table);
  const RunDecomposition d = run_decompose(subset, topology);
  if (d.full_cycle) return table.loop(topology.n);
  QuadExt w(1);
  for (int len : d.runs) {
    const QuadExt& e = table.line(len);
    if (e.is_zero()) return QuadExt(0);
    w *= e;
  }
  return w;
}

QuadExt q_value(const Outcome& outcome, const Topology& topology, const CorrelatorTable& table) {
  if (outcome.size() != topology.n) throw RangeError("outcome length does not match topology");
  require_table(topology, table);
  const std::vector<int> s = outcome.signs();
  if (topology.is_loop()) return loop_q(s, table);
  return line_q<QuadExt>(s, line_weight(table));
}

QuadExt line_q_prefix_recursion(const Outcome& outcome, const CorrelatorTable& table) {
  const int n = outcome.size();
  std::vector<QuadExt> q{QuadExt(1)};
  // prefix_sign[k] = x_1 ... x_k
  std::vector<int> prefix_sign{1};
  for (int j = 0; j < n; ++j) prefix_sign.push_back(prefix_sign.back() * outcome.value(j));
  for (int k = 0; k < n; ++k) {
    QuadExt remainder(0);
    for (int i = 0; i < k; ++i) {
      QuadExt term = q[static_cast<size_t>(i)] * table.line(k - i);
      if (prefix_sign[static_cast<size_t>(i + 1)] > 0) {
        remainder += term;
      } else {
        remainder -= term;
      }
    }
    QuadExt tail = table.line(k + 1) + remainder;
    QuadExt next = q.back();
    if (prefix_sign[static_cast<size_t>(k + 1)] > 0) {
      next += tail;
    } else {
      next -= tail;
    }
    q.push_back(std::move(next));
  }
  return q.back();
}

QuadExt loop_q_recursion(const Outcome& outcome, const CorrelatorTable& table) {
  const int size = outcome.size();
  if (size < 2) throw RangeError("loop recursion needs at least 2 boxes");
  const int n = size - 1;  // the cycle has n + 1 boxes, x_1..x_{n+1}
  const std::vector<int> s = outcome.signs();
  auto x = [&](int j) { return s[static_cast<size_t>(((j - 1) % size + size) % size)]; };

  QuadExt q = line_q<QuadExt>(std::span<const int>(s.data(), static_cast<size_t>(n)), line_weight(table));
  int all = 1;
  for (int v : s) all *= v;
  q += all > 0 ? table.loop(size) : -table.loop(size);

  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= k; ++l) {
      int sign = 1;
      for (int j = n + 1 - k + l; j <= n + l; ++j) sign *= x(j);
      QuadExt term = table.line(k);
      const int rest = n - 1 - k;
      if (rest > 0) {
        std::vector<int> seg;
        for (int j = l + 1; j <= l + rest; ++j) seg.push_back(x(j));
        term *= line_q<QuadExt>(seg, line_weight(table));
      }
      if (sign > 0) {
        q += term;
      } else {
        q -= term;
      }
    }
  }
  return q;
}

int enumeration_limit() { return limit_storage().load(); }

void set_enumeration_limit(int limit) {
  if (limit < 1 || limit > kMaxEnumerationLimit) {
    throw RangeError("enumeration limit must be in [1, " + std::to_string(kMaxEnumerationLimit) + "]");
  }
  limit_storage().store(limit);
}

ExactDistribution::ExactDistribution(Topology topology, std::vector<QuadExt> q)
    : topology_(topology), q_(std::move(q)) {
  if (q_.size() != topology_.outcome_count()) {
    throw ValidationError("distribution needs one q value per outcome");
  }
}

QuadExt ExactDistribution::probability(uint64_t mask) const {
  return q(mask) / QuadExt(BigRational(mpz_class(1) << topology_.n), BigRational(0));
}

ExactDistribution distribution(const Topology& topology, const CorrelatorTable& table) {
  if (topology.n > enumeration_limit()) {
    throw ResourceError(topology.name() + " exceeds the enumeration limit of " +
                        std::to_string(enumeration_limit()));
  }
  require_table(topology, table);
  const uint64_t size = topology.outcome_count();
  std::vector<QuadExt> w;
  w.reserve(size);
  for (uint64_t s = 0; s < size; ++s) w.push_back(subset_weight(s, topology, table));

  // q(X) = sum_S (-1)^{|S & X|} w(S)
  for (uint64_t bit = 1; bit < size; bit <<= 1) {
    for (uint64_t i = 0; i < size; ++i) {
      if (i & bit) continue;
      QuadExt sum = w[i];
      sum += w[i | bit];
      w[i | bit] = w[i] - w[i | bit];
      w[i] = std::move(sum);
    }
  }
  return ExactDistribution(topology, std::move(w));
}

ExactDistribution flip_outputs(const ExactDistribution& dist) {
  const uint64_t full = dist.size() - 1;
  std::vector<QuadExt> q;
  q.reserve(dist.size());
  for (uint64_t x = 0; x < dist.size(); ++x) q.push_back(dist.q(x ^ full));
  return ExactDistribution(dist.topology(), std::move(q));
}

void CheckResult::fail(std::string what) {
  passed = false;
  ++violation_count;
  if (violations.size() < kMaxListedViolations) violations.push_back(std::move(what));
}

CheckResult verify_nonnegativity(const ExactDistribution& dist, int workers) {
  CheckResult result{"nonnegativity"};
  const int n = dist.topology().n;
  const uint64_t size = dist.size();
  const uint64_t chunks = static_cast<uint64_t>(std::clamp(workers, 1, 64));
  std::vector<std::vector<uint64_t>> bad(chunks);
  auto sweep = [&](uint64_t c) {
    const uint64_t begin = size * c / chunks;
    const uint64_t end = size * (c + 1) / chunks;
    for (uint64_t x = begin; x < end; ++x) {
      if (dist.q(x).sign() < 0) bad[c].push_back(x);
    }
  };
  if (chunks == 1) {
    sweep(0);
  } else {
    std::vector<std::jthread> pool;
    for (uint64_t c = 0; c < chunks; ++c) pool.emplace_back(sweep, c);
  }
  for (const auto& list : bad) {
    for (uint64_t x : list) result.fail(Outcome(n, x).to_string() + " q=" + dist.q(x).to_string());
  }
  result.checked = size;
  return result;
}

CheckResult verify_normalization(const ExactDistribution& dist) {
  CheckResult result{"normalization"};
  QuadExt total(0);
  for (const QuadExt& v : dist.values()) total += v;
  const QuadExt expected(BigRational(mpz_class(1) << dist.topology().n), BigRational(0));
  if (total != expected) result.fail("sum q = " + total.to_string() + ", expected " + expected.to_string());
  result.checked = dist.size();
  return result;
}

CheckResult verify_marginals(const ExactDistribution& dist) {
  CheckResult result{"marginals"};
  const int n = dist.topology().n;
  for (int j = 0; j < n; ++j) {
    QuadExt total(0);
    for (uint64_t x = 0; x < dist.size(); ++x) {
      if ((x >> j) & 1U) {
        total -= dist.q(x);
      } else {
        total += dist.q(x);
      }
    }
    if (!total.is_zero()) result.fail("x_" + std::to_string(j + 1) + ": sum = " + total.to_string());
    ++result.checked;
  }
  return result;
}

CheckResult verify_windows(const ExactDistribution& dist, const CorrelatorTable& table) {
  CheckResult result{"window correlators"};
  const Topology& topo = dist.topology();
  const int n = topo.n;
  const QuadExt scale(BigRational(mpz_class(1) << n), BigRational(0));
  auto check = [&](uint64_t window, int len, const QuadExt& expected) {
    QuadExt total(0);
    for (uint64_t x = 0; x < dist.size(); ++x) {
      if (parity_sign(window & x) > 0) {
        total += dist.q(x);
      } else {
        total -= dist.q(x);
      }
    }
    ++result.checked;
    if (total != scale * expected) {
      result.fail("window of length " + std::to_string(len) + " mask " + std::to_string(window) +
                  ": " + (total / scale).to_string() + " != " + expected.to_string());
    }
  };
  for (int len = 1; len <= n; ++len) {
    if (topo.is_loop() && len == n) {
      check(low_mask(n), n, table.loop(n));
      continue;
    }
    const int starts = topo.is_loop() ? n : n - len + 1;
    for (int start = 0; start < starts; ++start) {
      uint64_t w = 0;
      for (int i = 0; i < len; ++i) w |= uint64_t{1} << ((start + i) % n);
      check(w, len, table.line(len));
    }
  }
  return result;
}

CheckResult verify_forbidden_pattern(const ExactDistribution& dist) {
  CheckResult result{"forbidden pattern +-+"};
  const Topology& topo = dist.topology();
  const int n = topo.n;
  const int triples = topo.is_loop() ? n : std::max(n - 2, 0);
  for (uint64_t x = 0; x < dist.size(); ++x) {
    const Outcome o(n, x);
    bool forbidden = false;
    for (int i = 0; i < triples && !forbidden; ++i) {
      forbidden = o.value(i % n) > 0 && o.value((i + 1) % n) < 0 && o.value((i + 2) % n) > 0;
    }
    if (!forbidden) continue;
    ++result.checked;
    if (!dist.q(x).is_zero()) result.fail(o.to_string() + " q=" + dist.q(x).to_string());
  }
  return result;
}

CheckResult verify_factorization(const ExactDistribution& dist, const CorrelatorTable& table) {
  CheckResult result{"factorization"};
  const Topology& topo = dist.topology();
  if (topo.is_loop()) throw ValidationError("factorization applies to line topologies");
  const int n = topo.n;
  std::map<std::pair<int, uint64_t>, QuadExt> cache;
  auto sub_q = [&](int len, uint64_t mask) -> const QuadExt& {
    auto [it, inserted] = cache.try_emplace({len, mask});
    if (inserted) {
      it->second = len == 0 ? QuadExt(1) : q_value(Outcome(len, mask), Topology::line(len), table);
    }
    return it->second;
  };
  for (uint64_t x = 0; x < dist.size(); ++x) {
    const Outcome o(n, x);
    // j is the 0-based index of the '-' that follows a '+'.
    for (int j = 1; j + 1 < n; ++j) {
      if (!(o.value(j - 1) > 0 && o.value(j) < 0 && o.value(j + 1) < 0)) continue;
      const int left = j + 1;
      const int right = n - j - 2;
      const QuadExt rhs = QuadExt(2) * sub_q(left, x & low_mask(left)) * sub_q(right, x >> (j + 2));
      ++result.checked;
      if (rhs != dist.q(x)) {
        result.fail(o.to_string() + " split after position " + std::to_string(left) + ": " +
                    dist.q(x).to_string() + " != " + rhs.to_string());
      }
    }
  }
  return result;
}

CheckResult verify_recursions(const ExactDistribution& dist, const CorrelatorTable& table) {
  CheckResult result{"recursion cross-check"};
  const Topology& topo = dist.topology();
  for (uint64_t x = 0; x < dist.size(); ++x) {
    const Outcome o(topo.n, x);
    const QuadExt& dense = dist.q(x);
    ++result.checked;
    if (q_value(o, topo, table) != dense) result.fail(o.to_string() + ": dynamic programming differs");
    if (topo.is_loop()) {
      if (topo.n >= 2 && loop_q_recursion(o, table) != dense) {
        result.fail(o.to_string() + ": opened-loop recursion differs");
      }
    } else if (line_q_prefix_recursion(o, table) != dense) {
      result.fail(o.to_string() + ": prefix recursion differs");
    }
  }
  return result;
}

bool BoundaryProbabilities::passed() const {
  return all_plus == expected_all_plus && plus_then_minus == expected_edge &&
         minus_then_plus == expected_edge && minus_plus_minus == expected_minus_plus_minus &&
         all_plus.sign() > 0 && plus_then_minus.sign() > 0 && minus_plus_minus.sign() > 0;
}

BoundaryProbabilities boundary_probabilities(int n, const CorrelatorTable& table) {
  if (n < 1) throw RangeError("boundary probabilities need n >= 1");
  auto prob = [&](const Outcome& o) {
    const QuadExt q = q_value(o, Topology::line(o.size()), table);
    return q / QuadExt(BigRational(mpz_class(1) << o.size()), BigRational(0));
  };
  const uint64_t first = 1;
  BoundaryProbabilities b;
  b.n = n;
  b.all_plus = prob(Outcome(n, 0));
  b.plus_then_minus = prob(Outcome(n + 1, first << n));
  b.minus_then_plus = prob(Outcome(n + 1, first));
  b.minus_plus_minus = prob(Outcome(n + 2, first | (first << (n + 1))));

  const QuadExt two(2);
  const QuadExt inv_root = QuadExt(1) / QuadExt::sqrt2();
  const QuadExt scale = QuadExt(1) / pow_sqrt2(static_cast<unsigned>(n + 1));
  b.expected_all_plus = pow_sqrt2(static_cast<unsigned>(n - 1)) / pow(two, static_cast<unsigned>(n));
  b.expected_edge = scale * (QuadExt(1) - inv_root);
  b.expected_minus_plus_minus =
      scale * (QuadExt(1) - two / QuadExt::sqrt2() * (QuadExt(1) - inv_root) - QuadExt(BigRational(1, 2)));
  return b;
}

LoopAllMinus loop_all_minus(int n, const CorrelatorTable& table) {
  if (n < 3) throw RangeError("all-minus loop check needs n >= 3");
  LoopAllMinus r;
  r.n = n;
  const Outcome minus(n, low_mask(n));
  r.engine = q_value(minus, Topology::loop(n), table);
  QuadExt arcs(0);
  for (int k = 2; k <= n - 1; ++k) {
    if (k % 2 == 0) {
      arcs += table.line(k);
    } else {
      arcs -= table.line(k);
    }
  }
  r.single_arc = QuadExt(1) + QuadExt(n) * arcs + (n % 2 == 0 ? table.loop(n) : -table.loop(n));
  r.difference = r.engine - r.single_arc;
  return r;
}

}  // namespace nlbox
