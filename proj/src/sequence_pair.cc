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
#include <stdexcept>
#include <unordered_map>

namespace osp {

BlockShape ShapeOf(const CharacterCandidate& c) {
  return {c.width(),       c.height(),    c.blank_left,
          c.blank_right,   c.blank_top,   c.blank_bottom};
}

SequencePair SequencePair::Identity(int n) {
  SequencePair pair;
  pair.positive.resize(n);
  std::iota(pair.positive.begin(), pair.positive.end(), 0);
  pair.negative = pair.positive;
  return pair;
}

bool SequencePair::IsValid(int n) const {
  auto is_permutation = [n](const std::vector<int>& seq) {
    if (static_cast<int>(seq.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : seq) {
      if (v < 0 || v >= n || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  };
  return is_permutation(positive) && is_permutation(negative);
}

PackedBlocks SpPack(std::span<const BlockShape> blocks, const SequencePair& pair) {
  const int n = static_cast<int>(blocks.size());
  if (!pair.IsValid(n)) {
    throw std::invalid_argument("sequence pair is not a pair of permutations");
  }
  std::vector<int> pos_rank(n), neg_rank(n);
  for (int k = 0; k < n; ++k) {
    pos_rank[pair.positive[k]] = k;
    neg_rank[pair.negative[k]] = k;
  }
  PackedBlocks packed;
  packed.x.assign(n, 0);
  packed.y.assign(n, 0);
  // Left-of predecessors come earlier in the positive sequence.
  for (int k = 0; k < n; ++k) {
    const int b = pair.positive[k];
    Micron x = 0;
    for (int q = 0; q < k; ++q) {
      const int a = pair.positive[q];
      if (neg_rank[a] < neg_rank[b]) {
        x = std::max(x, packed.x[a] + HorizontalPitch(blocks[a], blocks[b]));
      }
    }
    packed.x[b] = x;
  }
  // Below predecessors come earlier in the negative sequence.
  for (int k = 0; k < n; ++k) {
    const int b = pair.negative[k];
    Micron y = 0;
    for (int q = 0; q < k; ++q) {
      const int a = pair.negative[q];
      if (pos_rank[a] > pos_rank[b]) {
        y = std::max(y, packed.y[a] + VerticalPitch(blocks[a], blocks[b]));
      }
    }
    packed.y[b] = y;
  }
  return packed;
}

Placement2D SpPack(const Instance& instance, std::span<const CandidateId> positive,
                   std::span<const CandidateId> negative) {
  const CandidateIndex index(instance);
  std::vector<BlockShape> blocks;
  std::vector<CandidateId> ids(positive.begin(), positive.end());
  std::unordered_map<CandidateId, int> local;
  for (size_t k = 0; k < ids.size(); ++k) {
    blocks.push_back(ShapeOf(instance.candidates[index.at(ids[k])]));
    local.emplace(ids[k], static_cast<int>(k));
  }
  SequencePair pair;
  pair.positive.resize(ids.size());
  std::iota(pair.positive.begin(), pair.positive.end(), 0);
  for (CandidateId id : negative) {
    auto it = local.find(id);
    if (it == local.end()) {
      index.at(id);
      throw std::invalid_argument("negative sequence id " + std::to_string(id) +
                                  " missing from positive sequence");
    }
    pair.negative.push_back(it->second);
  }
  const PackedBlocks packed = SpPack(blocks, pair);
  Placement2D placement;
  for (size_t k = 0; k < ids.size(); ++k) {
    placement.placed.push_back({ids[k], packed.x[k], packed.y[k]});
  }
  placement.seq_positive = ids;
  placement.seq_negative.assign(negative.begin(), negative.end());
  return placement;
}

}  // namespace osp
