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


#include "osp/sequence_pair.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "osp/evaluate.h"
#include "test_util.h"

namespace osp {
namespace {

BlockShape Box(Micron w, Micron h, Micron l, Micron r, Micron b, Micron t) {
  return {w, h, l, r, t, b};
}

// True when some pair of blocks is neither horizontally nor vertically
// separated by its pitch.
bool Overlaps(std::span<const BlockShape> blocks, const PackedBlocks& p) {
  for (size_t i = 0; i < blocks.size(); ++i) {
    for (size_t j = 0; j < blocks.size(); ++j) {
      if (i == j) continue;
      const bool apart_x = p.x[j] - p.x[i] >= HorizontalPitch(blocks[i], blocks[j]);
      const bool apart_y = p.y[j] - p.y[i] >= VerticalPitch(blocks[i], blocks[j]);
      const bool other_x = p.x[i] - p.x[j] >= HorizontalPitch(blocks[j], blocks[i]);
      const bool other_y = p.y[i] - p.y[j] >= VerticalPitch(blocks[j], blocks[i]);
      if (!apart_x && !apart_y && !other_x && !other_y) return true;
    }
  }
  return false;
}

TEST(SequencePairTest, SingleBlockAtOrigin) {
  const std::vector<BlockShape> blocks = {Box(10, 8, 1, 2, 1, 1)};
  const PackedBlocks p = SpPack(blocks, SequencePair::Identity(1));
  EXPECT_EQ(p.x, std::vector<Micron>{0});
  EXPECT_EQ(p.y, std::vector<Micron>{0});
}

TEST(SequencePairTest, SameOrderPlacesSecondAtPitch) {
  const std::vector<BlockShape> blocks = {Box(10, 8, 1, 3, 0, 0), Box(12, 6, 2, 1, 0, 0)};
  const PackedBlocks p = SpPack(blocks, {{0, 1}, {0, 1}});
  EXPECT_EQ(p.x[1], 10 - 2);
  EXPECT_EQ(p.y[1], 0);
  // Reversed positive order puts the first block above the second.
  const PackedBlocks q = SpPack(blocks, {{0, 1}, {1, 0}});
  EXPECT_EQ(q.x[0], 0);
  EXPECT_EQ(q.y[0], 6);
}

TEST(SequencePairTest, RejectsNonPermutations) {
  const std::vector<BlockShape> blocks(2, Box(4, 4, 0, 0, 0, 0));
  EXPECT_THROW(SpPack(blocks, {{0, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(SpPack(blocks, {{0, 1}, {0}}), std::invalid_argument);
  EXPECT_TRUE(SpPack({}, {}).x.empty());
}

std::vector<BlockShape> RandomBlocks(std::mt19937_64& rng, int n) {
  std::vector<BlockShape> blocks;
  for (int i = 0; i < n; ++i) {
    const Micron l = UniformInt(rng, 0, 5), r = UniformInt(rng, 0, 5);
    const Micron b = UniformInt(rng, 0, 5), t = UniformInt(rng, 0, 5);
    blocks.push_back(
        Box(l + r + UniformInt(rng, 1, 20), b + t + UniformInt(rng, 1, 20), l, r, b, t));
  }
  return blocks;
}

SequencePair RandomPair(std::mt19937_64& rng, int n) {
  SequencePair sp = SequencePair::Identity(n);
  std::shuffle(sp.positive.begin(), sp.positive.end(), rng);
  std::shuffle(sp.negative.begin(), sp.negative.end(), rng);
  return sp;
}

TEST(SequencePairTest, RandomPairsPackWithoutOverlap) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 500; ++trial) {
    const auto blocks = RandomBlocks(rng, 6);
    const SequencePair sp = RandomPair(rng, 6);
    ASSERT_TRUE(sp.IsValid(6));
    const PackedBlocks p = SpPack(blocks, sp);
    ASSERT_FALSE(Overlaps(blocks, p)) << "trial " << trial;
    for (int i = 0; i < 6; ++i) {
      EXPECT_GE(p.x[i], 0);
      EXPECT_GE(p.y[i], 0);
    }
  }
}

TEST(SequencePairTest, AddingABlockNeverMovesOthersDownOrLeft) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 1, 8));
    auto blocks = RandomBlocks(rng, n);
    SequencePair sp = RandomPair(rng, n);
    const PackedBlocks before = SpPack(blocks, sp);
    blocks.push_back(RandomBlocks(rng, 1)[0]);
    sp.positive.insert(sp.positive.begin() + UniformInt(rng, 0, n), n);
    sp.negative.insert(sp.negative.begin() + UniformInt(rng, 0, n), n);
    const PackedBlocks after = SpPack(blocks, sp);
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(after.x[i], before.x[i]);
      EXPECT_GE(after.y[i], before.y[i]);
    }
  }
}

TEST(SequencePairTest, InstancePackingRecordsIds) {
  std::mt19937_64 rng(53);
  const Instance in = testing::RandomInstance2D(rng, 4, 2, 500, 500);
  const std::vector<CandidateId> pos = {3, 1, 0, 2};
  const std::vector<CandidateId> neg = {1, 0, 2, 3};
  const Placement2D p = SpPack(in, pos, neg);
  EXPECT_EQ(p.seq_positive, pos);
  EXPECT_EQ(p.seq_negative, neg);
  EXPECT_TRUE(ValidatePlacement(in, p).feasible);
  const std::vector<CandidateId> bad = {3, 1, 0, 99};
  EXPECT_THROW(SpPack(in, bad, neg), UnknownIdError);
}

}  // namespace
}  // namespace osp
