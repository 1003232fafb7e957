#include "correlators.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace nlbox {

namespace {

std::vector<QuadExt> line_sequence(int n_max) {
  // E_0 = 1 lets the recursion start at E_3 = -E_2 + E_1 + (1 - E_2) E_0.
  std::vector<QuadExt> e{QuadExt(1), QuadExt(0), QuadExt(-1, 1), QuadExt(3, -2)};
  const QuadExt one_minus_e2 = QuadExt(1) - e[2];
  for (int n = 4; n <= n_max; ++n) {
    e.push_back(-e[n - 1] + e[n - 2] + one_minus_e2 * e[n - 3]);
  }
  e.resize(static_cast<size_t>(std::max(n_max, 0)) + 1);
  return e;
}

// E^o_{m+1} = sqrt2^{m-1} - sum_{k=1}^{m-2} k E_k sqrt2^{m-k-2} - m E_m - (m-1) E_{m-1}
QuadExt loop_from_line(int m, const std::vector<QuadExt>& e) {
  QuadExt value = pow_sqrt2(static_cast<unsigned>(m - 1));
  for (int k = 1; k <= m - 2; ++k) {
    value -= QuadExt(k) * e[k] * pow_sqrt2(static_cast<unsigned>(m - k - 2));
  }
  value -= QuadExt(m) * e[m] + QuadExt(m - 1) * e[m - 1];
  return value;
}

std::vector<QuadExt> loop_sequence(int n_max, const std::vector<QuadExt>& e) {
  std::vector<QuadExt> loop;
  for (int n = 1; n <= n_max; ++n) {
    if (n == 1) {
      loop.emplace_back(0);
    } else if (n == 2) {
      loop.emplace_back(1);
    } else {
      loop.push_back(loop_from_line(n - 1, e));
    }
  }
  return loop;
}

}  // namespace

CorrelatorTable CorrelatorTable::canonical(int n_max) {
  if (n_max < 1) throw RangeError("correlator table needs n_max >= 1");
  std::vector<QuadExt> e = line_sequence(n_max);
  std::vector<QuadExt> loop = loop_sequence(n_max, e);
  e.erase(e.begin());
  return CorrelatorTable(std::move(e), std::move(loop));
}

CorrelatorTable CorrelatorTable::custom(std::vector<QuadExt> line, std::vector<QuadExt> loop) {
  if (line.empty() || line.size() != loop.size()) {
    throw ValidationError("custom correlator table needs equal, non-empty line and loop lists");
  }
  return CorrelatorTable(std::move(line), std::move(loop));
}

const QuadExt& CorrelatorTable::line(int k) const {
  static const QuadExt kOne(1);
  if (k == 0) return kOne;
  if (k < 0 || k > n_max()) {
    throw RangeError("line correlator E_" + std::to_string(k) + " outside table of size " +
                     std::to_string(n_max()));
  }
  return line_[static_cast<size_t>(k - 1)];
}

const QuadExt& CorrelatorTable::loop(int k) const {
  if (k < 1 || k > n_max()) {
    throw RangeError("loop correlator E^o_" + std::to_string(k) + " outside table of size " +
                     std::to_string(n_max()));
  }
  return loop_[static_cast<size_t>(k - 1)];
}

CorrelatorTable CorrelatorTable::flipped() const {
  std::vector<QuadExt> line = line_;
  std::vector<QuadExt> loop = loop_;
  for (size_t i = 0; i < line.size(); i += 2) {
    line[i] = -line[i];
    loop[i] = -loop[i];
  }
  return CorrelatorTable(std::move(line), std::move(loop));
}

QuadExt line_correlator(int n) {
  if (n < 0) throw RangeError("line correlator index must be >= 0");
  return line_sequence(n).at(static_cast<size_t>(n));
}

QuadExt loop_correlator(int n) {
  if (n < 1) throw RangeError("loop correlator index must be >= 1");
  return loop_sequence(n, line_sequence(n)).back();
}

double mu() { return std::sqrt(5.0 + 4.0 * M_SQRT2); }

double line_correlator_closed(int n) {
  if (n < 1) throw RangeError("closed-form line correlator needs n >= 1");
  const double m = mu();
  return (std::pow(2.0 / (m - 1.0), n - 1) - std::pow(-2.0 / (m + 1.0), n - 1)) / m;
}

double loop_correlator_closed(int n) {
  if (n < 1) throw RangeError("closed-form loop correlator needs n >= 1");
  const double m = mu();
  return std::pow(2.0 / (m - 1.0), n) + std::pow(-2.0 / (m + 1.0), n);
}

std::vector<GoldenEntry> parse_golden(const std::string& text) {
  std::vector<GoldenEntry> out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string body = raw.substr(0, raw.find('#'));
    std::istringstream fields(body);
    std::string kind;
    if (!(fields >> kind)) continue;
    GoldenEntry entry;
    std::string value;
    if (!(fields >> entry.n >> value) || (kind != "line" && kind != "loop")) {
      throw ParseError("golden file line " + std::to_string(line_no) + ": expected '<line|loop> <n> <value>'");
    }
    entry.loop = kind == "loop";
    entry.value = QuadExt::parse(value);
    std::string flag;
    if (fields >> flag) {
      if (flag != "known-discrepancy") {
        throw ParseError("golden file line " + std::to_string(line_no) + ": unknown flag '" + flag + "'");
      }
      entry.flagged = true;
    }
    if (auto pos = raw.find('#'); pos != std::string::npos) entry.note = raw.substr(pos + 1);
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<GoldenEntry> load_golden(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open golden file '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_golden(buf.str());
}

std::vector<GoldenComparison> compare_golden(const CorrelatorTable& table,
                                             const std::vector<GoldenEntry>& golden) {
  std::vector<GoldenComparison> out;
  for (const GoldenEntry& entry : golden) {
    if (entry.n < 1 || entry.n > table.n_max()) continue;
    GoldenComparison cmp{entry, entry.loop ? table.loop(entry.n) : table.line(entry.n), false};
    cmp.match = cmp.computed == entry.value;
    out.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace nlbox
