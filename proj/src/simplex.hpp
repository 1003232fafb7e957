#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quad_ext.hpp"

namespace nlbox {

/// Sign test per scalar field. Exact for BigRational and QuadExt; double uses
/// a fixed absolute tolerance.
template <class F>
struct FieldOps;

template <>
struct FieldOps<BigRational> {
  static int sign(const BigRational& x) { return sgn(x); }
};

template <>
struct FieldOps<QuadExt> {
  static int sign(const QuadExt& x) { return x.sign(); }
};

template <>
struct FieldOps<double> {
  static constexpr double kEpsilon = 1e-11;
  static int sign(double x) { return x > kEpsilon ? 1 : (x < -kEpsilon ? -1 : 0); }
};

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class LpStatus { Feasible, Infeasible, Unbounded };

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Feasible:
      return "feasible";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

template <class F>
struct LinearTerm {
  size_t var;
  F coef;
};

template <class F>
struct LpVariable {
  std::string name;
  std::optional<F> lower;
  std::optional<F> upper;
};

template <class F>
struct LpConstraint {
  std::vector<LinearTerm<F>> terms;
  Relation relation;
  F rhs;
  std::string label;
};

template <class F>
class LinearProgram {
 public:
  /// Variables default to x >= 0; pass std::nullopt for a free side.
  size_t add_variable(std::string name, std::optional<F> lower = F(0), std::optional<F> upper = std::nullopt) {
    variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
    return variables_.size() - 1;
  }

  void add_constraint(std::vector<LinearTerm<F>> terms, Relation relation, F rhs, std::string label = {}) {
    constraints_.push_back({std::move(terms), relation, std::move(rhs), std::move(label)});
  }

  void set_objective(std::vector<LinearTerm<F>> terms, Sense sense) {
    objective_ = std::move(terms);
    sense_ = sense;
  }

  const std::vector<LpVariable<F>>& variables() const { return variables_; }
  const std::vector<LpConstraint<F>>& constraints() const { return constraints_; }
  const std::optional<std::vector<LinearTerm<F>>>& objective() const { return objective_; }
  Sense sense() const { return sense_; }

  /// Throws ValidationError if a term names an undeclared variable or a
  /// variable has upper < lower.
  void validate() const {
    auto check_terms = [&](const std::vector<LinearTerm<F>>& terms, const std::string& where) {
      for (const auto& t : terms) {
        if (t.var >= variables_.size()) throw ValidationError(where + " references an undeclared variable");
      }
    };
    for (size_t i = 0; i < constraints_.size(); ++i) {
      check_terms(constraints_[i].terms, "constraint " + std::to_string(i));
    }
    if (objective_) check_terms(*objective_, "objective");
    for (const auto& v : variables_) {
      if (v.lower && v.upper && FieldOps<F>::sign(*v.upper - *v.lower) < 0) {
        throw ValidationError("variable " + v.name + " has upper bound below lower bound");
      }
    }
  }

  /// Evaluates every constraint at x; returns the index of the first one that
  /// fails by more than tol (exactly when tol is zero), or -1.
  long first_violated(const std::vector<F>& x, const F& tol = F(0)) const {
    for (size_t i = 0; i < constraints_.size(); ++i) {
      F lhs(0);
      for (const auto& t : constraints_[i].terms) lhs += t.coef * x[t.var];
      const F gap = lhs - constraints_[i].rhs;
      const bool ok = constraints_[i].relation == Relation::LessEqual      ? FieldOps<F>::sign(gap - tol) <= 0
                      : constraints_[i].relation == Relation::GreaterEqual ? FieldOps<F>::sign(gap + tol) >= 0
                                                                           : FieldOps<F>::sign(gap - tol) <= 0 &&
                                                                                 FieldOps<F>::sign(gap + tol) >= 0;
      if (!ok) return static_cast<long>(i);
    }
    for (size_t j = 0; j < variables_.size(); ++j) {
      const auto& v = variables_[j];
      if (v.lower && FieldOps<F>::sign(x[j] - *v.lower + tol) < 0) return static_cast<long>(constraints_.size() + j);
      if (v.upper && FieldOps<F>::sign(x[j] - *v.upper - tol) > 0) return static_cast<long>(constraints_.size() + j);
    }
    return -1;
  }

 private:
  std::vector<LpVariable<F>> variables_;
  std::vector<LpConstraint<F>> constraints_;
  std::optional<std::vector<LinearTerm<F>>> objective_;
  Sense sense_ = Sense::Minimize;
};

template <class F>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  /// One value per declared variable when feasible.
  std::vector<F> assignment;
  F objective{0};
  /// Farkas multipliers when infeasible: one per constraint, then one per
  /// upper-bound row in variable order. See farkas_certifies().
  std::vector<F> farkas;
  size_t pivots = 0;
};

namespace detail {

/// The LP rewritten over nonnegative columns: A y (rel) b with one row per
/// constraint followed by one row per finite upper bound. Slack columns are
/// appended after the structural ones.
template <class F>
struct StandardForm {
  struct Column {
    size_t var;
    int sign;  // x_var = offset + sign * column
  };
  std::vector<Column> structural;
  std::vector<F> offset;  // per declared variable
  std::vector<std::vector<F>> rows;
  std::vector<F> rhs;
  std::vector<Relation> relation;
  std::vector<long> slack_column;  // -1 for equality rows
  size_t num_columns = 0;
};

template <class F>
StandardForm<F> standardize(const LinearProgram<F>& lp) {
  StandardForm<F> sf;
  const auto& vars = lp.variables();
  std::vector<std::vector<std::pair<size_t, int>>> columns_of(vars.size());
  sf.offset.assign(vars.size(), F(0));
  std::vector<std::pair<size_t, F>> upper_rows;  // (var, bound on the shifted column)
  for (size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    auto add_column = [&](int sign) {
      columns_of[j].push_back({sf.structural.size(), sign});
      sf.structural.push_back({j, sign});
    };
    if (v.lower) {
      sf.offset[j] = *v.lower;
      add_column(1);
      if (v.upper) upper_rows.push_back({j, *v.upper - *v.lower});
    } else if (v.upper) {
      sf.offset[j] = *v.upper;
      add_column(-1);
    } else {
      add_column(1);
      add_column(-1);
    }
  }
  const size_t n_struct = sf.structural.size();
  auto new_row = [&](Relation rel, F b) {
    sf.rows.emplace_back(n_struct, F(0));
    sf.relation.push_back(rel);
    sf.rhs.push_back(std::move(b));
  };
  for (const auto& c : lp.constraints()) {
    F b = c.rhs;
    new_row(c.relation, F(0));
    auto& row = sf.rows.back();
    for (const auto& t : c.terms) {
      b -= t.coef * sf.offset[t.var];
      for (auto [col, sign] : columns_of[t.var]) {
        if (sign > 0) {
          row[col] += t.coef;
        } else {
          row[col] -= t.coef;
        }
      }
    }
    sf.rhs.back() = std::move(b);
  }
  for (auto& [var, bound] : upper_rows) {
    new_row(Relation::LessEqual, bound);
    sf.rows.back()[columns_of[var].front().first] = F(1);
  }
  size_t next = n_struct;
  for (Relation rel : sf.relation) {
    sf.slack_column.push_back(rel == Relation::Equal ? -1 : static_cast<long>(next++));
  }
  sf.num_columns = next;
  return sf;
}

template <class F>
class Tableau {
 public:
  Tableau(size_t rows, size_t cols) : m_(rows), n_(cols), t_(rows + 1, std::vector<F>(cols + 1, F(0))), basis_(rows) {}

  F& at(size_t r, size_t c) { return t_[r][c]; }
  const F& at(size_t r, size_t c) const { return t_[r][c]; }
  F& rhs(size_t r) { return t_[r][n_]; }
  F& cost(size_t c) { return t_[m_][c]; }
  size_t rows() const { return m_; }
  size_t cols() const { return n_; }
  std::vector<size_t>& basis() { return basis_; }

  void pivot(size_t r, size_t c) {
    const F inv = F(1) / t_[r][c];
    for (size_t j = 0; j <= n_; ++j) {
      if (FieldOps<F>::sign(t_[r][j]) != 0 || j == c) t_[r][j] *= inv;
    }
    t_[r][c] = F(1);
    for (size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const F factor = t_[i][c];
      if (FieldOps<F>::sign(factor) == 0) continue;
      for (size_t j = 0; j <= n_; ++j) {
        if (FieldOps<F>::sign(t_[r][j]) != 0) t_[i][j] -= factor * t_[r][j];
      }
      t_[i][c] = F(0);
    }
    basis_[r] = c;
  }

  /// Loads reduced costs c_j - c_B B^-1 A_j into the cost row.
  void price(const std::vector<F>& costs) {
    for (size_t j = 0; j <= n_; ++j) t_[m_][j] = j < n_ ? costs[j] : F(0);
    for (size_t i = 0; i < m_; ++i) {
      const F& cb = costs[basis_[i]];
      if (FieldOps<F>::sign(cb) == 0) continue;
      for (size_t j = 0; j <= n_; ++j) t_[m_][j] -= cb * t_[i][j];
    }
  }

  enum class Outcome { Optimal, Unbounded };

  /// Bland's rule: lowest-index improving column, ties in the ratio test go
  /// to the lowest basic index.
  Outcome run(const std::vector<bool>& allowed, size_t& pivots) {
    for (;;) {
      size_t enter = n_;
      for (size_t j = 0; j < n_; ++j) {
        if (allowed[j] && FieldOps<F>::sign(t_[m_][j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return Outcome::Optimal;
      size_t leave = m_;
      F best(0);
      for (size_t i = 0; i < m_; ++i) {
        if (FieldOps<F>::sign(t_[i][enter]) <= 0) continue;
        F ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_) {
          leave = i;
          best = std::move(ratio);
          continue;
        }
        const int cmp = FieldOps<F>::sign(ratio - best);
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return Outcome::Unbounded;
      pivot(leave, enter);
      ++pivots;
    }
  }

 private:
  size_t m_;
  size_t n_;
  std::vector<std::vector<F>> t_;  // last row: reduced costs, last column: rhs
  std::vector<size_t> basis_;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's rule. Exact for BigRational and
/// QuadExt scalars.
template <class F>
LpResult<F> lp_solve(const LinearProgram<F>& lp) {
  lp.validate();
  const detail::StandardForm<F> sf = detail::standardize(lp);
  const size_t m = sf.rows.size();
  const size_t n_struct = sf.structural.size();

  // Row orientation so every rhs is nonnegative; slack columns that end up
  // with +1 start in the basis, other rows get an artificial column.
  std::vector<int> flip(m, 1);
  std::vector<long> artificial(m, -1);
  size_t cols = sf.num_columns;
  for (size_t i = 0; i < m; ++i) {
    if (FieldOps<F>::sign(sf.rhs[i]) < 0) flip[i] = -1;
    const int slack_sign = sf.relation[i] == Relation::LessEqual ? 1 : -1;
    if (sf.slack_column[i] < 0 || slack_sign * flip[i] < 0) artificial[i] = static_cast<long>(cols++);
  }

  detail::Tableau<F> tab(m, cols);
  std::vector<size_t> initial_basis(m);
  for (size_t i = 0; i < m; ++i) {
    const F sign(flip[i]);
    for (size_t j = 0; j < n_struct; ++j) {
      if (FieldOps<F>::sign(sf.rows[i][j]) != 0) tab.at(i, j) = sign * sf.rows[i][j];
    }
    if (sf.slack_column[i] >= 0) {
      const int slack_sign = sf.relation[i] == Relation::LessEqual ? 1 : -1;
      tab.at(i, static_cast<size_t>(sf.slack_column[i])) = F(slack_sign * flip[i]);
    }
    tab.rhs(i) = sign * sf.rhs[i];
    if (artificial[i] >= 0) {
      tab.at(i, static_cast<size_t>(artificial[i])) = F(1);
      initial_basis[i] = static_cast<size_t>(artificial[i]);
    } else {
      initial_basis[i] = static_cast<size_t>(sf.slack_column[i]);
    }
  }
  tab.basis() = initial_basis;

  LpResult<F> result;
  std::vector<bool> is_artificial(cols, false);
  for (long a : artificial) {
    if (a >= 0) is_artificial[static_cast<size_t>(a)] = true;
  }

  // Phase 1: minimise the sum of artificials.
  std::vector<F> phase1(cols, F(0));
  for (size_t j = 0; j < cols; ++j) {
    if (is_artificial[j]) phase1[j] = F(1);
  }
  tab.price(phase1);
  std::vector<bool> all(cols, true);
  tab.run(all, result.pivots);
  const F infeasibility = -tab.cost(cols);
  if (FieldOps<F>::sign(infeasibility) > 0) {
    result.status = LpStatus::Infeasible;
    // Multipliers y with y^T A <= 0 and y^T b > 0, read off the reduced costs
    // of the initial basis: y_i = c_{B0(i)} - d_{B0(i)}.
    result.farkas.resize(m);
    for (size_t i = 0; i < m; ++i) {
      const size_t col = initial_basis[i];
      F y = phase1[col] - tab.cost(col);
      result.farkas[i] = flip[i] > 0 ? y : F(-y);
    }
    return result;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (size_t i = 0; i < m; ++i) {
    if (!is_artificial[tab.basis()[i]]) continue;
    for (size_t j = 0; j < sf.num_columns; ++j) {
      if (FieldOps<F>::sign(tab.at(i, j)) != 0) {
        tab.pivot(i, j);
        ++result.pivots;
        break;
      }
    }
  }

  std::vector<bool> allowed(cols, true);
  for (size_t j = 0; j < cols; ++j) allowed[j] = !is_artificial[j];
  if (lp.objective()) {
    std::vector<F> costs(cols, F(0));
    for (const auto& t : *lp.objective()) {
      for (size_t j = 0; j < n_struct; ++j) {
        if (sf.structural[j].var != t.var) continue;
        F c = sf.structural[j].sign > 0 ? t.coef : F(-t.coef);
        if (lp.sense() == Sense::Maximize) c = -c;
        costs[j] += c;
      }
    }
    tab.price(costs);
    if (tab.run(allowed, result.pivots) == detail::Tableau<F>::Outcome::Unbounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
  }

  std::vector<F> column_value(cols, F(0));
  for (size_t i = 0; i < m; ++i) column_value[tab.basis()[i]] = tab.rhs(i);
  result.assignment = sf.offset;
  for (size_t j = 0; j < n_struct; ++j) {
    const auto& col = sf.structural[j];
    if (col.sign > 0) {
      result.assignment[col.var] += column_value[j];
    } else {
      result.assignment[col.var] -= column_value[j];
    }
  }
  result.objective = F(0);
  if (lp.objective()) {
    for (const auto& t : *lp.objective()) result.objective += t.coef * result.assignment[t.var];
  }
  result.status = LpStatus::Feasible;
  return result;
}

/// Checks a Farkas certificate against the standard form of lp: every
/// column of y^T A is <= 0 (slacks included) and y^T b > 0, which rules out
/// any nonnegative solution.
template <class F>
bool farkas_certifies(const LinearProgram<F>& lp, const std::vector<F>& y) {
  const detail::StandardForm<F> sf = detail::standardize(lp);
  if (y.size() != sf.rows.size()) return false;
  for (size_t j = 0; j < sf.structural.size(); ++j) {
    F dot(0);
    for (size_t i = 0; i < y.size(); ++i) dot += y[i] * sf.rows[i][j];
    if (FieldOps<F>::sign(dot) > 0) return false;
  }
  F yb(0);
  for (size_t i = 0; i < y.size(); ++i) {
    if (sf.slack_column[i] >= 0) {
      const int s = sf.relation[i] == Relation::LessEqual ? 1 : -1;
      if (FieldOps<F>::sign(y[i]) * s > 0) return false;
    }
    yb += y[i] * sf.rhs[i];
  }
  return FieldOps<F>::sign(yb) > 0;
}

/// Copy of an exact program with double data, for float-mode solves.
template <class F>
LinearProgram<double> to_float(const LinearProgram<F>& lp, double (*convert)(const F&)) {
  LinearProgram<double> out;
  auto opt = [&](const std::optional<F>& v) -> std::optional<double> {
    return v ? std::optional<double>(convert(*v)) : std::nullopt;
  };
  for (const auto& v : lp.variables()) out.add_variable(v.name, opt(v.lower), opt(v.upper));
  auto terms = [&](const std::vector<LinearTerm<F>>& in) {
    std::vector<LinearTerm<double>> t;
    for (const auto& x : in) t.push_back({x.var, convert(x.coef)});
    return t;
  };
  for (const auto& c : lp.constraints()) out.add_constraint(terms(c.terms), c.relation, convert(c.rhs), c.label);
  if (lp.objective()) out.set_objective(terms(*lp.objective()), lp.sense());
  return out;
}

}  // namespace nlbox
