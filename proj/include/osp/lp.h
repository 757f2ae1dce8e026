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


// Bounded-variable linear programs in inequality form,
//   maximize c.x  subject to  A x <= b,  lo <= x <= hi,
// solved with a dense-tableau primal simplex.

#ifndef OSP_LP_H_
#define OSP_LP_H_

#include <cstdint>
#include <string>
#include <vector>

namespace osp {

struct LpTerm {
  int var = 0;
  double coeff = 0.0;
};

class LpProblem {
 public:
  // Returns the new variable's index. Requires 0 <= lo <= hi < infinity.
  int AddVariable(double objective, double lo, double hi);
  // Adds sum(terms) <= rhs and returns the row index. Terms must reference
  // existing variables.
  int AddConstraint(std::vector<LpTerm> terms, double rhs);

  // Pins a variable to `value`; solves then treat it as a constant folded into
  // the right-hand sides and the objective. Throws std::out_of_range when the
  // value lies outside the variable's bounds.
  void FixVariable(int var, double value);
  void Unfix(int var);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  int num_free_variables() const;

  double objective(int var) const { return objective_[var]; }
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  bool is_fixed(int var) const { return fixed_[var]; }
  double fixed_value(int var) const { return fixed_value_[var]; }
  const std::vector<LpTerm>& row(int r) const { return rows_[r]; }
  double rhs(int r) const { return rhs_[r]; }

  double ObjectiveValue(const std::vector<double>& x) const;
  double RowActivity(int r, const std::vector<double>& x) const;
  // Largest violation of any row or bound (0 when feasible). Fixed variables
  // count as violated when x differs from the pinned value.
  double MaxViolation(const std::vector<double>& x) const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<char> fixed_;
  std::vector<double> fixed_value_;
  std::vector<std::vector<LpTerm>> rows_;
  std::vector<double> rhs_;
};

// Returns a copy of `problem` with `var` pinned to `value`.
LpProblem FixVariable(LpProblem problem, int var, double value);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // Values of all variables, fixed ones included.
  std::vector<double> x;
  double objective = 0.0;
  int64_t iterations = 0;
};

enum class PricingRule {
  // Smallest eligible index throughout.
  kBland,
  // Largest reduced cost, switching to Bland's rule after a run of
  // degenerate pivots until the objective moves again.
  kDantzigWithBlandFallback,
};

struct SimplexOptions {
  // Feasibility and reduced-cost tolerance.
  double tolerance = 1e-7;
  PricingRule pricing = PricingRule::kDantzigWithBlandFallback;
  int degenerate_run_before_bland = 50;
  // 0 picks a limit proportional to the problem size.
  int64_t iteration_limit = 0;
};

// Deterministic for a fixed problem and options.
LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace osp

#endif  // OSP_LP_H_
