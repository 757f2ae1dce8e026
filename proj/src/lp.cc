// Copyright 2026 The stencil-osp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "osp/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osp {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-9;
constexpr double kRatioTieTolerance = 1e-12;

}  // namespace

int LpProblem::AddVariable(double objective, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("variable bounds must satisfy 0 <= lo <= hi < inf");
  }
  objective_.push_back(objective);
  lower_.push_back(lo);
  upper_.push_back(hi);
  fixed_.push_back(0);
  fixed_value_.push_back(0.0);
  return num_variables() - 1;
}

int LpProblem::AddConstraint(std::vector<LpTerm> terms, double rhs) {
  for (const LpTerm& term : terms) {
    if (term.var < 0 || term.var >= num_variables()) {
      throw std::invalid_argument("constraint references unknown variable " +
                                  std::to_string(term.var));
    }
  }
  rows_.push_back(std::move(terms));
  rhs_.push_back(rhs);
  return num_constraints() - 1;
}

void LpProblem::FixVariable(int var, double value) {
  if (var < 0 || var >= num_variables()) {
    throw std::out_of_range("no variable " + std::to_string(var));
  }
  if (value < lower_[var] || value > upper_[var]) {
    throw std::out_of_range("fixed value outside bounds of variable " +
                            std::to_string(var));
  }
  fixed_[var] = 1;
  fixed_value_[var] = value;
}

void LpProblem::Unfix(int var) { fixed_.at(var) = 0; }

int LpProblem::num_free_variables() const {
  return static_cast<int>(std::count(fixed_.begin(), fixed_.end(), 0));
}

double LpProblem::ObjectiveValue(const std::vector<double>& x) const {
  double value = 0.0;
  for (int j = 0; j < num_variables(); ++j) value += objective_[j] * x[j];
  return value;
}

double LpProblem::RowActivity(int r, const std::vector<double>& x) const {
  double activity = 0.0;
  for (const LpTerm& term : rows_[r]) activity += term.coeff * x[term.var];
  return activity;
}

double LpProblem::MaxViolation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
    if (fixed_[j]) worst = std::max(worst, std::abs(x[j] - fixed_value_[j]));
  }
  for (int r = 0; r < num_constraints(); ++r) {
    worst = std::max(worst, RowActivity(r, x) - rhs_[r]);
  }
  return worst;
}

LpProblem FixVariable(LpProblem problem, int var, double value) {
  problem.FixVariable(var, value);
  return problem;
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

namespace {

// Dense tableau over shifted variables (every lower bound is 0). Columns are
// structural variables, then one slack per row, then artificials.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        cells_(static_cast<size_t>(rows) * cols, 0.0),
        value_(rows, 0.0),
        basis_(rows, -1),
        upper_(cols, kInfinity),
        at_upper_(cols, 0),
        basic_row_(cols, -1),
        cost_(cols, 0.0),
        reduced_(cols, 0.0) {}

  double& at(int r, int c) { return cells_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const {
    return cells_[static_cast<size_t>(r) * cols_ + c];
  }

  void SetBasic(int r, int col, double value) {
    basis_[r] = col;
    basic_row_[col] = r;
    value_[r] = value;
  }
  void SetUpper(int col, double upper) { upper_[col] = upper; }

  void SetCosts(std::vector<double> cost) {
    cost_ = std::move(cost);
    for (int c = 0; c < cols_; ++c) {
      double d = cost_[c];
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, c);
        if (a != 0.0) d -= cost_[basis_[r]] * a;
      }
      reduced_[c] = basic_row_[c] >= 0 ? 0.0 : d;
    }
  }

  // Value of a column in the current basic solution.
  double ColumnValue(int col) const {
    if (basic_row_[col] >= 0) return value_[basic_row_[col]];
    return at_upper_[col] ? upper_[col] : 0.0;
  }

  // Runs primal simplex on the current cost row. Returns kOptimal,
  // kUnbounded or kIterationLimit.
  LpStatus Optimize(const SimplexOptions& options, int64_t limit,
                    int64_t& iterations) {
    const double tol = options.tolerance;
    bool bland = options.pricing == PricingRule::kBland;
    int degenerate_run = 0;
    std::vector<int> pivot_nonzeros;
    pivot_nonzeros.reserve(cols_);
    while (true) {
      if (iterations >= limit) return LpStatus::kIterationLimit;
      const int entering = ChooseEntering(tol, bland);
      if (entering < 0) return LpStatus::kOptimal;
      ++iterations;
      const double direction = at_upper_[entering] ? -1.0 : 1.0;

      // Ratio test; the entering column's own range is the bound-flip limit.
      double step = upper_[entering];
      int leave_row = -1;
      for (int r = 0; r < rows_; ++r) {
        const double alpha = at(r, entering);
        if (std::abs(alpha) < kPivotTolerance) continue;
        const double change = -direction * alpha;
        const int basic = basis_[r];
        double limit_r;
        if (change < 0.0) {
          limit_r = value_[r] / -change;
        } else {
          if (upper_[basic] == kInfinity) continue;
          limit_r = (upper_[basic] - value_[r]) / change;
        }
        limit_r = std::max(limit_r, 0.0);
        const bool better = limit_r < step - kRatioTieTolerance;
        const bool tie = !better && limit_r <= step + kRatioTieTolerance;
        if (better || (tie && leave_row >= 0 && basic < basis_[leave_row])) {
          step = limit_r;
          leave_row = r;
        }
      }
      if (step == kInfinity) return LpStatus::kUnbounded;

      for (int r = 0; r < rows_; ++r) {
        const double alpha = at(r, entering);
        if (alpha != 0.0) value_[r] -= direction * step * alpha;
      }
      if (step <= tol) {
        if (++degenerate_run >= options.degenerate_run_before_bland) bland = true;
      } else {
        degenerate_run = 0;
        bland = options.pricing == PricingRule::kBland;
      }

      if (leave_row < 0) {
        at_upper_[entering] = !at_upper_[entering];
        continue;
      }
      const int leaving = basis_[leave_row];
      const double change = -direction * at(leave_row, entering);
      at_upper_[leaving] = change > 0.0 ? 1 : 0;
      const double entering_value =
          (at_upper_[entering] ? upper_[entering] : 0.0) + direction * step;
      at_upper_[entering] = 0;
      basic_row_[leaving] = -1;
      Pivot(leave_row, entering, pivot_nonzeros);
      SetBasic(leave_row, entering, entering_value);
    }
  }

  int rows() const { return rows_; }
  int basis(int r) const { return basis_[r]; }
  double value(int r) const { return value_[r]; }

 private:
  int ChooseEntering(double tol, bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int c = 0; c < cols_; ++c) {
      if (basic_row_[c] >= 0) continue;
      const double d = reduced_[c];
      double score;
      if (at_upper_[c]) {
        score = -d;
      } else {
        if (upper_[c] <= 0.0) continue;
        score = d;
      }
      if (score <= tol) continue;
      if (bland) return c;
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    return best;
  }

  void Pivot(int pivot_row, int pivot_col, std::vector<int>& nonzeros) {
    double* prow = &at(pivot_row, 0);
    const double inv = 1.0 / prow[pivot_col];
    nonzeros.clear();
    for (int c = 0; c < cols_; ++c) {
      if (prow[c] != 0.0) {
        prow[c] *= inv;
        nonzeros.push_back(c);
      }
    }
    prow[pivot_col] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pivot_row) continue;
      double* row = &at(r, 0);
      const double factor = row[pivot_col];
      if (factor == 0.0) continue;
      for (int c : nonzeros) {
        double v = row[c] - factor * prow[c];
        if (std::abs(v) < 1e-14) v = 0.0;
        row[c] = v;
      }
      row[pivot_col] = 0.0;
    }
    const double factor = reduced_[pivot_col];
    if (factor != 0.0) {
      for (int c : nonzeros) reduced_[c] -= factor * prow[c];
    }
    reduced_[pivot_col] = 0.0;
  }

  int rows_;
  int cols_;
  std::vector<double> cells_;
  std::vector<double> value_;
  std::vector<int> basis_;
  std::vector<double> upper_;
  std::vector<char> at_upper_;
  std::vector<int> basic_row_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
};

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options) {
  const int n = problem.num_variables();
  const int m = problem.num_constraints();
  const double tol = options.tolerance;

  std::vector<int> column_of(n, -1);
  std::vector<int> free_vars;
  for (int j = 0; j < n; ++j) {
    if (!problem.is_fixed(j)) {
      column_of[j] = static_cast<int>(free_vars.size());
      free_vars.push_back(j);
    }
  }
  const int nf = static_cast<int>(free_vars.size());

  // Right-hand sides after folding fixed variables and shifting lower bounds.
  std::vector<double> rhs(m);
  int artificials = 0;
  for (int r = 0; r < m; ++r) {
    double b = problem.rhs(r);
    for (const LpTerm& term : problem.row(r)) {
      b -= term.coeff * (problem.is_fixed(term.var) ? problem.fixed_value(term.var)
                                                    : problem.lower(term.var));
    }
    rhs[r] = b;
    if (b < 0.0) ++artificials;
  }

  const int cols = nf + m + artificials;
  Tableau tableau(m, cols);
  for (int k = 0; k < nf; ++k) {
    tableau.SetUpper(k, problem.upper(free_vars[k]) - problem.lower(free_vars[k]));
  }
  int next_artificial = nf + m;
  for (int r = 0; r < m; ++r) {
    const double sign = rhs[r] < 0.0 ? -1.0 : 1.0;
    for (const LpTerm& term : problem.row(r)) {
      const int col = column_of[term.var];
      if (col >= 0) tableau.at(r, col) += sign * term.coeff;
    }
    tableau.at(r, nf + r) = sign;
    if (sign < 0.0) {
      tableau.at(r, next_artificial) = 1.0;
      tableau.SetBasic(r, next_artificial, -rhs[r]);
      ++next_artificial;
    } else {
      tableau.SetBasic(r, nf + r, rhs[r]);
    }
  }

  LpSolution solution;
  const int64_t limit = options.iteration_limit > 0
                            ? options.iteration_limit
                            : 100 * static_cast<int64_t>(m + cols) + 10000;

  if (artificials > 0) {
    std::vector<double> phase_one(cols, 0.0);
    for (int c = nf + m; c < cols; ++c) phase_one[c] = -1.0;
    tableau.SetCosts(std::move(phase_one));
    const LpStatus status = tableau.Optimize(options, limit, solution.iterations);
    if (status == LpStatus::kIterationLimit) {
      solution.status = status;
      return solution;
    }
    double infeasibility = 0.0;
    for (int c = nf + m; c < cols; ++c) infeasibility += tableau.ColumnValue(c);
    if (infeasibility > tol) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    for (int c = nf + m; c < cols; ++c) tableau.SetUpper(c, 0.0);
  }

  std::vector<double> phase_two(cols, 0.0);
  for (int k = 0; k < nf; ++k) phase_two[k] = problem.objective(free_vars[k]);
  tableau.SetCosts(std::move(phase_two));
  solution.status = tableau.Optimize(options, limit, solution.iterations);
  if (solution.status != LpStatus::kOptimal) return solution;

  solution.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (problem.is_fixed(j)) {
      solution.x[j] = problem.fixed_value(j);
      continue;
    }
    double v = problem.lower(j) + tableau.ColumnValue(column_of[j]);
    if (v < problem.lower(j) && v > problem.lower(j) - tol) v = problem.lower(j);
    if (v > problem.upper(j) && v < problem.upper(j) + tol) v = problem.upper(j);
    solution.x[j] = v;
  }
  solution.objective = problem.ObjectiveValue(solution.x);
  return solution;
}

}  // namespace osp
