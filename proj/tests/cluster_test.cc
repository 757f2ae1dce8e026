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


#include "osp/cluster.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "osp/evaluate.h"
#include "test_util.h"

namespace osp {
namespace {

ClusterNode Leaf(const Instance& in, int i, double profit) {
  ClusterNode n;
  n.candidate = i;
  n.shape = ShapeOf(in.candidates[i]);
  n.members = {i};
  n.reduction.assign(in.region_count, 0);
  n.profit = profit;
  return n;
}

std::vector<int> AllIndices(const Instance& in) {
  std::vector<int> all(in.candidates.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

TEST(MergeBlocksTest, IdenticalWideBlocksSitSideBySide) {
  CharacterCandidate c;
  c.id = 0;
  c.pattern_width = 6;
  c.pattern_height = 30;
  c.blank_left = c.blank_right = 2;
  c.blank_top = c.blank_bottom = 1;
  c.vsb_shots = 3;
  c.usage = {1};
  Instance in;
  in.mode = Mode::k2D;
  in.candidates = {c, c};
  in.candidates[1].id = 1;
  const ClusterNode m = MergeBlocks(Leaf(in, 0, 1), 0, Leaf(in, 1, 1), 1);
  EXPECT_EQ(m.orientation, MergeOrientation::kHorizontal);
  EXPECT_EQ(m.shape.width, 2 * 10 - 2);
  EXPECT_EQ(m.shape.height, 32);
  EXPECT_EQ(m.shape.blank_left, 2);
  EXPECT_EQ(m.shape.blank_right, 2);
  EXPECT_EQ(m.second_x - m.first_x, 8);
  EXPECT_EQ(m.members, (std::vector<int>{0, 1}));
}

TEST(ClusterTest, ThresholdAtSizeKeepsLeaves) {
  std::mt19937_64 rng(61);
  const Instance in = testing::RandomInstance2D(rng, 30, 2, 500, 500);
  const std::vector<double> profits(30, 1.0);
  const auto all = AllIndices(in);
  const Clustering c = ClusterCandidates(in, all, profits, 30);
  EXPECT_EQ(c.roots, all);
  EXPECT_EQ(c.stats.merges, 0);
  EXPECT_THROW(ClusterCandidates(in, all, profits, 31), std::invalid_argument);
}

// One round of the partner rule by linear scan.
std::vector<std::set<int>> FirstRoundPairs(const Instance& in,
                                           const std::vector<double>& profits,
                                           size_t threshold, const ClusterTolerances& tol) {
  const int n = static_cast<int>(in.candidates.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return profits[a] > profits[b]; });
  auto sig = [&](int i) {
    const auto& c = in.candidates[i];
    return std::array<double, 3>{double(SymmetricSlack(c.blank_left, c.blank_right)),
                                 double(SymmetricSlack(c.blank_bottom, c.blank_top)),
                                 profits[i]};
  };
  std::vector<char> pool(n, 1);
  size_t live = n;
  std::vector<std::set<int>> pairs;
  for (int node : order) {
    if (!pool[node]) continue;
    if (live <= threshold) break;
    pool[node] = 0;
    const auto p = sig(node);
    const double tols[3] = {tol.slack, tol.slack, tol.profit};
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (!pool[j]) continue;
      const auto q = sig(j);
      bool inside = true;
      for (int a = 0; a < 3; ++a) {
        inside = inside && std::abs(q[a] - p[a]) <= std::abs(p[a]) * tols[a];
      }
      if (!inside) continue;
      if (best < 0 || profits[j] > profits[best]) best = j;
    }
    if (best < 0) {
      pool[node] = 1;
      continue;
    }
    pool[best] = 0;
    pairs.push_back({node, best});
    --live;
  }
  return pairs;
}

TEST(ClusterTest, PartnersMatchExhaustiveScan) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 2, 120));
    const Instance in = testing::RandomInstance2D(rng, n, 2, 500, 500);
    std::vector<double> profits(n);
    for (double& p : profits) p = static_cast<double>(UniformInt(rng, 0, 12));
    const size_t threshold = UniformInt(rng, 0, n / 2);
    const Clustering c = ClusterCandidates(in, AllIndices(in), profits, threshold);
    const auto expected = FirstRoundPairs(in, profits, threshold, {});
    ASSERT_GE(c.nodes.size(), n + expected.size());
    for (size_t k = 0; k < expected.size(); ++k) {
      const ClusterNode& m = c.nodes[n + k];
      EXPECT_EQ((std::set<int>{m.first, m.second}), expected[k]) << "trial " << trial;
    }
  }
}

TEST(ClusterTest, RootsPartitionCandidatesAndMembersPack) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 1, 200));
    const Instance in = testing::RandomInstance2D(rng, n, 3, 1000, 1000);
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (UniformInt(rng, 0, 3) > 0) subset.push_back(i);
    }
    if (subset.empty()) continue;
    const std::vector<double> profits = BaselineProfits(in);
    const size_t threshold = UniformInt(rng, 1, subset.size());
    const Clustering c = ClusterCandidates(in, subset, profits, threshold);
    std::vector<int> seen;
    for (int root : c.roots) {
      const ClusterNode& node = c.nodes[root];
      seen.insert(seen.end(), node.members.begin(), node.members.end());
      // Members keep their gaps inside the merged box.
      const auto offsets = MemberOffsets(c, root);
      ASSERT_EQ(offsets.size(), node.members.size());
      for (size_t a = 0; a < offsets.size(); ++a) {
        const BlockShape sa = ShapeOf(in.candidates[offsets[a].candidate]);
        EXPECT_GE(offsets[a].x + sa.blank_left, node.shape.blank_left);
        EXPECT_LE(offsets[a].x + sa.width - sa.blank_right,
                  node.shape.width - node.shape.blank_right);
        for (size_t b = 0; b < offsets.size(); ++b) {
          if (a == b) continue;
          const BlockShape sb = ShapeOf(in.candidates[offsets[b].candidate]);
          const bool apart = offsets[b].x - offsets[a].x >= HorizontalPitch(sa, sb) ||
                             offsets[a].x - offsets[b].x >= HorizontalPitch(sb, sa) ||
                             offsets[b].y - offsets[a].y >= VerticalPitch(sa, sb) ||
                             offsets[a].y - offsets[b].y >= VerticalPitch(sb, sa);
          EXPECT_TRUE(apart);
        }
      }
      std::vector<int> pos, neg;
      ExpandSequences(c, root, pos, neg);
      std::vector<int> sorted = pos;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(sorted, node.members);
      std::sort(neg.begin(), neg.end());
      EXPECT_EQ(neg, node.members);
    }
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, subset);
  }
}

TEST(ClusterTest, ExpandedSequencesPackFeasibly) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance in = testing::RandomInstance2D(rng, 40, 2, 5000, 5000);
    const Clustering c =
        ClusterCandidates(in, AllIndices(in), BaselineProfits(in), 5);
    std::vector<int> pos, neg;
    for (int root : c.roots) ExpandSequences(c, root, pos, neg);
    std::vector<CandidateId> p, q;
    for (int i : pos) p.push_back(in.candidates[i].id);
    for (int i : neg) q.push_back(in.candidates[i].id);
    const Placement2D placement = SpPack(in, p, q);
    EXPECT_TRUE(ValidatePlacement(in, placement).feasible);
  }
}

TEST(ClusterTest, ProbeCountGrowsLikeNLogN) {
  std::vector<double> constants;
  for (int n : {250, 500, 1000, 2000}) {
    std::mt19937_64 rng(65);
    const Instance in = testing::RandomInstance2D(rng, n, 4, 10000, 10000);
    const Clustering c =
        ClusterCandidates(in, AllIndices(in), BaselineProfits(in), n / 2);
    constants.push_back(static_cast<double>(c.stats.probes) / (n * std::log2(n)));
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  EXPECT_LE(*hi, 2.0 * *lo) << "C from " << *lo << " to " << *hi;
}

}  // namespace
}  // namespace osp
