#include "optimize.hpp"

#include <bit>
#include <cmath>
#include <set>

namespace nlbox {

namespace {

constexpr int kHexagonSize = 6;
constexpr int kMaxBisectionSteps = 60;

BigRational exact_from_double(double x) {
  BigRational r(x);  // exact binary value
  r.canonicalize();
  return r;
}

}  // namespace

template <class F>
LinearProgram<F> hexagon_lp(const F& e2) {
  LinearProgram<F> lp;
  for (const char* name : kHexagonVariables) lp.add_variable(name, F(-1), F(1));
  const Topology hex = Topology::loop(kHexagonSize);
  const uint64_t size = hex.outcome_count();
  for (uint64_t x = 0; x < size; ++x) {
    F constant(0);
    std::array<F, 4> coef{F(0), F(0), F(0), F(0)};
    for (uint64_t s = 0; s < size; ++s) {
      const int sign = std::popcount(s & x) % 2 == 0 ? 1 : -1;
      const RunDecomposition d = run_decompose(s, hex);
      if (d.full_cycle) {
        coef[3] += F(sign);
        continue;
      }
      int pairs = 0;
      int long_run = 0;
      bool vanishes = false;
      for (int len : d.runs) {
        if (len == 1) {
          vanishes = true;
        } else if (len == 2) {
          ++pairs;
        } else {
          long_run = len;  // at most one run of length >= 3 fits in six boxes
        }
      }
      if (vanishes) continue;
      F weight(sign);
      for (int p = 0; p < pairs; ++p) weight *= e2;
      if (long_run == 0) {
        constant += weight;
      } else {
        coef[static_cast<size_t>(long_run - 3)] += weight;
      }
    }
    std::vector<LinearTerm<F>> terms;
    for (size_t v = 0; v < coef.size(); ++v) {
      if (FieldOps<F>::sign(coef[v]) != 0) terms.push_back({v, coef[v]});
    }
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, F(-constant),
                      "q(" + Outcome(kHexagonSize, x).to_string() + ") >= 0");
  }
  return lp;
}

template LinearProgram<BigRational> hexagon_lp(const BigRational&);
template LinearProgram<QuadExt> hexagon_lp(const QuadExt&);
template LinearProgram<double> hexagon_lp(const double&);

LpResult<BigRational> hexagon_solve(const BigRational& e2) { return lp_solve(hexagon_lp(e2)); }
LpResult<QuadExt> hexagon_solve(const QuadExt& e2) { return lp_solve(hexagon_lp(e2)); }
LpResult<double> hexagon_solve(double e2) { return lp_solve(hexagon_lp(e2)); }

bool hexagon_feasible(double e2, SolveMode mode) {
  if (mode == SolveMode::Float) return hexagon_solve(e2).status == LpStatus::Feasible;
  return hexagon_solve(exact_from_double(e2)).status == LpStatus::Feasible;
}

CorrelatorTable hexagon_table(const BigRational& e2, const std::array<BigRational, 4>& witness) {
  std::vector<QuadExt> line{QuadExt(0), QuadExt(e2), QuadExt(witness[0]), QuadExt(witness[1]),
                            QuadExt(witness[2]), QuadExt(0)};
  std::vector<QuadExt> loop{QuadExt(0), QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(0), QuadExt(witness[3])};
  return CorrelatorTable::custom(std::move(line), std::move(loop));
}

BoundResult hexagon_max_e2(double tolerance) {
  if (!(tolerance > 0)) throw RangeError("bisection tolerance must be positive");
  BoundResult out;
  out.lower = 0;
  out.upper = 1;
  const BigRational tol = exact_from_double(tolerance);
  if (hexagon_solve(out.upper).status == LpStatus::Feasible) {
    out.lower = out.upper;
  } else {
    while (out.upper - out.lower > tol && out.iterations < kMaxBisectionSteps) {
      BigRational mid = (out.lower + out.upper) / 2;
      ++out.iterations;
      if (hexagon_solve(mid).status == LpStatus::Feasible) {
        out.lower = std::move(mid);
      } else {
        out.upper = std::move(mid);
      }
    }
  }
  const LpResult<BigRational> at_lower = hexagon_solve(out.lower);
  if (at_lower.status != LpStatus::Feasible) throw Error("hexagon program infeasible at the lower endpoint");
  for (size_t i = 0; i < out.witness.size(); ++i) out.witness[i] = at_lower.assignment[i];

  const QuadExt target(-1, 1);
  out.contains_target = QuadExt(out.lower) <= target && target <= QuadExt(out.upper);
  const CorrelatorTable table = hexagon_table(out.lower, out.witness);
  out.witness_check = verify_nonnegativity(distribution(Topology::loop(kHexagonSize), table));
  return out;
}

CertificateSearchResult certificate_search(const CertificateSearchOptions& options) {
  std::vector<std::pair<int, int>> pairs;
  if (options.reference_support_only) {
    const Certificate& pub = reference_certificate();
    for (size_t i = 0; i < pub.size(); ++i) pairs.emplace_back(pub.u[i], pub.v[i]);
  } else {
    for (int i = 1; i <= kNumP; ++i) {
      for (int j = 1; j <= kNumQ; ++j) pairs.emplace_back(i, j);
    }
  }

  // Each column is 2^14 P_i Q_j = q_{P_i} q_{Q_j}.
  std::vector<CorrPolynomial> columns;
  std::set<Monomial, GradedLex> monomials;
  for (auto [i, j] : pairs) {
    columns.push_back(symbolic_q(certificate_p(i)) * symbolic_q(certificate_q(j)));
    for (const auto& [m, c] : columns.back().terms()) monomials.insert(m);
  }
  const Monomial e3_squared = Monomial::symbol(3) * Monomial::symbol(3);

  LinearProgram<QuadExt> lp;
  for (auto [i, j] : pairs) lp.add_variable("P" + std::to_string(i) + "Q" + std::to_string(j));
  for (const Monomial& m : monomials) {
    if (m == Monomial::one()) continue;
    std::vector<LinearTerm<QuadExt>> row;
    for (size_t k = 0; k < columns.size(); ++k) {
      QuadExt c = columns[k].coefficient(m);
      if (!c.is_zero()) row.push_back({k, std::move(c)});
    }
    const bool normalised = m == e3_squared && !options.forbid_e3_squared;
    lp.add_constraint(std::move(row), Relation::Equal, QuadExt(normalised ? 1 : 0), m.to_string());
  }
  if (options.forbid_e3_squared) {
    std::vector<LinearTerm<QuadExt>> sum;
    for (size_t k = 0; k < columns.size(); ++k) sum.push_back({k, QuadExt(1)});
    lp.add_constraint(std::move(sum), Relation::Equal, QuadExt(1), "sum of weights");
  }
  std::vector<LinearTerm<QuadExt>> objective;
  for (size_t k = 0; k < columns.size(); ++k) objective.push_back({k, columns[k].constant()});
  lp.set_objective(std::move(objective), Sense::Minimize);

  CertificateSearchResult out;
  out.columns = columns.size();
  out.rows = lp.constraints().size();
  const LpResult<QuadExt> solved = lp_solve(lp);
  out.status = solved.status;
  if (solved.status != LpStatus::Feasible) return out;
  out.constant = solved.objective;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (solved.assignment[k].sign() > 0) {
      out.certificate.u.push_back(pairs[k].first);
      out.certificate.v.push_back(pairs[k].second);
      out.certificate.c.push_back(solved.assignment[k]);
    }
  }
  if (!options.forbid_e3_squared) out.check = certificate_verify(out.certificate);
  return out;
}

}  // namespace nlbox
