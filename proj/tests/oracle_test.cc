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


#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "osp/evaluate.h"
#include "osp/generator.h"
#include "osp/oracle.h"
#include "osp/osp1d.h"
#include "test_util.h"

namespace osp {
namespace {

CharacterCandidate Plain(CandidateId id, Micron w, ShotCount usage) {
  CharacterCandidate c;
  c.id = id;
  c.pattern_width = w;
  c.pattern_height = 10;
  c.vsb_shots = 2;
  c.usage = {usage};
  return c;
}

Instance OneRow(std::vector<CharacterCandidate> cands, Micron width, int rows = 1) {
  Instance in;
  in.mode = Mode::k1D;
  in.stencil_width = width;
  in.row_count = rows;
  in.row_height = 20;
  in.stencil_height = 20 * rows;
  in.candidates = std::move(cands);
  return in;
}

// Best knapsack value over every (rows + 1)^n assignment.
double BruteKnapsack(const Instance& in, const std::vector<double>& profits,
                     bool fixed_blank) {
  const int n = static_cast<int>(in.candidates.size());
  const int rows = in.row_count;
  Micron max_s = 0;
  for (const auto& c : in.candidates) max_s = std::max(max_s, c.slack());
  std::vector<int> choice(n, -1);
  double best = 0.0;
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      std::vector<Micron> used(rows, 0), blank(rows, 0);
      double value = 0.0;
      for (int k = 0; k < n; ++k) {
        if (choice[k] < 0) continue;
        used[choice[k]] += in.candidates[k].width() - in.candidates[k].slack();
        blank[choice[k]] = std::max(blank[choice[k]], in.candidates[k].slack());
        value += profits[k];
      }
      for (int j = 0; j < rows; ++j) {
        if (used[j] + (fixed_blank ? max_s : blank[j]) > in.stencil_width) return;
      }
      best = std::max(best, value);
      return;
    }
    for (int j = -1; j < rows; ++j) {
      choice[i] = j;
      go(i + 1);
    }
  };
  go(0);
  return best;
}

// Smallest pattern span of a set over all orders.
Micron BruteSpan(const Instance& in, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  Micron best = std::numeric_limits<Micron>::max();
  do {
    Micron w = in.candidates[members.back()].width();
    for (size_t q = 0; q + 1 < members.size(); ++q) {
      w += HorizontalPitch(in.candidates[members[q]], in.candidates[members[q + 1]]);
    }
    best = std::min(best, w - in.candidates[members.front()].blank_left -
                              in.candidates[members.back()].blank_right);
  } while (std::next_permutation(members.begin(), members.end()));
  return best;
}

// Minimum writing time over every assignment to rows, each row checked by
// trying all of its orders.
ShotCount Brute1D(const Instance& in) {
  const int n = static_cast<int>(in.candidates.size());
  std::vector<int> choice(n, -1);
  ShotCount best = std::numeric_limits<ShotCount>::max();
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      std::vector<CandidateId> ids;
      for (int j = 0; j < in.row_count; ++j) {
        std::vector<int> members;
        for (int k = 0; k < n; ++k) {
          if (choice[k] == j) members.push_back(k);
        }
        if (!members.empty() && BruteSpan(in, members) > in.stencil_width) return;
        for (int k : members) ids.push_back(in.candidates[k].id);
      }
      best = std::min(best, Evaluate(in, ids).total);
      return;
    }
    for (int j = -1; j < in.row_count; ++j) {
      choice[i] = j;
      go(i + 1);
    }
  };
  go(0);
  return best;
}

TEST(KnapsackOracleTest, SingleRowExample) {
  const Instance in = OneRow({Plain(1, 5, 1), Plain(2, 5, 1), Plain(3, 6, 1)}, 10);
  const std::vector<double> profits = {5, 5, 9};
  const auto r = ExactKnapsack3Prime(in, profits);
  EXPECT_DOUBLE_EQ(r.optimum, 10.0);
  EXPECT_EQ(r.witness, (RowChoice{0, 0, -1}));
}

TEST(KnapsackOracleTest, ZeroCapacityAndEverythingFits) {
  const std::vector<double> profits = {5, 5, 9};
  EXPECT_DOUBLE_EQ(
      ExactKnapsack3Prime(OneRow({Plain(1, 5, 1), Plain(2, 5, 1), Plain(3, 6, 1)}, 0 + 4),
                          profits)
          .optimum,
      0.0);
  EXPECT_DOUBLE_EQ(
      ExactKnapsack3Prime(OneRow({Plain(1, 5, 1), Plain(2, 5, 1), Plain(3, 6, 1)}, 16),
                          profits)
          .optimum,
      19.0);
}

TEST(KnapsackOracleTest, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 0, 7));
    const int rows = static_cast<int>(UniformInt(rng, 1, 3));
    const Instance in = testing::RandomInstance1D(rng, n, 3, 80, rows);
    const std::vector<double> profits = BaselineProfits(in);
    const auto fixed = ExactKnapsack3Prime(in, profits);
    const auto simplified = ExactSimplified(in, profits);
    EXPECT_NEAR(fixed.optimum, BruteKnapsack(in, profits, true), 1e-6);
    EXPECT_NEAR(simplified.optimum, BruteKnapsack(in, profits, false), 1e-6);
    EXPECT_LE(fixed.optimum, simplified.optimum + 1e-9);
    // The simplified witness satisfies the row rule.
    RowAssignment a = RowAssignment::Empty(in);
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      if (simplified.witness[i] < 0) continue;
      ASSERT_TRUE(a.Fits(in, i, simplified.witness[i]));
      a.Assign(in, i, simplified.witness[i]);
      value += profits[i];
    }
    EXPECT_NEAR(value, simplified.optimum, 1e-6);
  }
}

TEST(OrderingOracleTest, SingleCandidate) {
  const std::vector<CharacterCandidate> row = {Plain(1, 12, 1)};
  EXPECT_EQ(ExactOrderings(row).optimum, 12);
}

TEST(OrderingOracleTest, WitnessMeasuresToOptimum) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto row = testing::RandomRow(rng, static_cast<int>(UniformInt(rng, 1, 10)));
    const auto r = ExactOrderings(row);
    const RowTriplet t = MeasureRow(row, r.witness.order);
    EXPECT_EQ(t.width, r.optimum);
    EXPECT_EQ(t.left, r.witness.left);
    EXPECT_EQ(t.right, r.witness.right);
    if (row.size() <= 8) {
      EXPECT_GE(r.optimum, ExactPermutationWidth(row));
    }
  }
}

TEST(Exact1DTest, SingleCandidate) {
  CharacterCandidate c = Plain(1, 10, 4);
  c.blank_left = c.blank_right = 3;
  c.vsb_shots = 5;
  const auto fits = Exact1D(OneRow({c}, 10));
  EXPECT_EQ(fits.optimum, 4);
  EXPECT_EQ(fits.witness.report.selected, std::vector<CandidateId>{1});
  const auto wide = Exact1D(OneRow({c}, 9));
  EXPECT_EQ(wide.optimum, 20);
  EXPECT_TRUE(wide.witness.report.selected.empty());
}

TEST(Exact1DTest, MatchesBruteForceWithValidWitness) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 0, 6));
    const int rows = static_cast<int>(UniformInt(rng, 1, 2));
    const Instance in = testing::RandomInstance1D(rng, n, 3, 70, rows);
    const auto r = Exact1D(in);
    EXPECT_EQ(r.optimum, Brute1D(in)) << "trial " << trial;
    const FeasibilityVerdict v = ValidatePlacement(in, r.witness.placement);
    ASSERT_TRUE(v.feasible) << DescribeViolation(v.violations[0]);
    EXPECT_EQ(Evaluate(in, r.witness.placement.SelectedIds()).total, r.optimum);
  }
}

TEST(Exact1DTest, InvariantToRelabeling) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    Instance in = testing::RandomInstance1D(rng, 8, 3, 90, 2);
    const ShotCount before = Exact1D(in).optimum;
    std::shuffle(in.candidates.begin(), in.candidates.end(), rng);
    for (auto& c : in.candidates) c.id = c.id * 7 + 100;
    EXPECT_EQ(Exact1D(in).optimum, before);
  }
}

TEST(Exact2DTest, SingleBlockAtOrigin) {
  std::mt19937_64 rng(35);
  Instance in = testing::RandomInstance2D(rng, 1, 1, 100, 100);
  in.candidates[0].usage = {3};
  in.candidates[0].vsb_shots = 4;
  const auto r = Exact2D(in);
  ASSERT_EQ(r.witness.placement.placed.size(), 1u);
  const PlacedCharacter& p = r.witness.placement.placed[0];
  EXPECT_EQ(p.x + in.candidates[0].blank_left, 0);
  EXPECT_EQ(p.y + in.candidates[0].blank_bottom, 0);
  EXPECT_EQ(r.optimum, 3);
}

TEST(Exact2DTest, TwoBlocksSideBySide) {
  CharacterCandidate a = Plain(1, 10, 2);
  CharacterCandidate b = Plain(2, 10, 2);
  a.blank_left = a.blank_right = b.blank_left = b.blank_right = 2;
  Instance in = OneRow({a, b}, 22);
  in.mode = Mode::k2D;
  in.stencil_height = 15;
  const auto r = Exact2D(in);
  EXPECT_EQ(r.witness.report.selected, (std::vector<CandidateId>{1, 2}));
  EXPECT_TRUE(ValidatePlacement(in, r.witness.placement).feasible);
  in.stencil_width = 21;
  EXPECT_EQ(Exact2D(in).witness.report.selected.size(), 1u);
}

TEST(Exact2DTest, AgreesWithGridEnumerationOnSnappedInstances) {
  std::mt19937_64 rng(36);
  testing::CandidateRanges r;
  r.pattern_min = 1;
  r.pattern_max = 4;
  r.blank_max = 2;
  for (int trial = 0; trial < 40; ++trial) {
    Instance in = testing::RandomInstance2D(rng, static_cast<int>(UniformInt(rng, 1, 3)), 2,
                                            5 * UniformInt(rng, 4, 12),
                                            5 * UniformInt(rng, 4, 12), r);
    for (auto& c : in.candidates) {
      for (Micron* v : {&c.pattern_width, &c.pattern_height, &c.blank_left, &c.blank_right,
                        &c.blank_top, &c.blank_bottom}) {
        *v *= 5;
      }
    }
    const auto exact = Exact2D(in);
    const auto grid = Exact2DGrid(in, 5);
    EXPECT_EQ(exact.optimum, grid.optimum) << "trial " << trial;
    EXPECT_TRUE(ValidatePlacement(in, exact.witness.placement).feasible);
    EXPECT_TRUE(ValidatePlacement(in, grid.witness.placement).feasible);
  }
}

TEST(Exact2DTest, WitnessIsFeasibleAndEvaluates) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance in = testing::RandomInstance2D(rng, 5, 3, 60, 50);
    const auto r = Exact2D(in);
    EXPECT_TRUE(ValidatePlacement(in, r.witness.placement).feasible);
    EXPECT_EQ(Evaluate(in, r.witness.placement.SelectedIds()).total, r.optimum);
  }
}

TEST(BaselineTest, EmptyInstances) {
  Instance one = OneRow({}, 100);
  EXPECT_TRUE(GreedyBaseline1D(one).placement.SelectedIds().empty());
  one.mode = Mode::k2D;
  EXPECT_TRUE(GreedyBaseline2D(one).placement.placed.empty());
}

TEST(BaselineTest, FeasibleOnRandomInstances) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 0, 80));
    const Instance a = testing::RandomInstance1D(rng, n, 4, 200, 3);
    const BaselineResult1D g1 = GreedyBaseline1D(a);
    ASSERT_TRUE(ValidatePlacement(a, g1.placement).feasible);
    EXPECT_EQ(g1.report, Evaluate(a, g1.placement.SelectedIds()));
    const Instance b = testing::RandomInstance2D(rng, n, 4, 200, 150);
    const BaselineResult2D g2 = GreedyBaseline2D(b);
    ASSERT_TRUE(ValidatePlacement(b, g2.placement).feasible);
    EXPECT_EQ(g2.report, Evaluate(b, g2.placement.SelectedIds()));
  }
}

TEST(BaselineTest, Deterministic) {
  const Instance in = GenerateInstance(Preset("small", Mode::k2D, 10), 3);
  EXPECT_EQ(GreedyBaseline2D(in).placement, GreedyBaseline2D(in).placement);
}

}  // namespace
}  // namespace osp
