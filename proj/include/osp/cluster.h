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


// Pairwise clustering of similar characters into merged blocks. Each round
// visits the live blocks by decreasing profit and merges each one with the
// most profitable unvisited block whose (horizontal slack, vertical slack,
// profit) signature lies in a relative box around its own.

#ifndef OSP_CLUSTER_H_
#define OSP_CLUSTER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "osp/model.h"
#include "osp/sequence_pair.h"

namespace osp {

enum class MergeOrientation { kLeaf, kHorizontal, kVertical };

struct ClusterNode {
  // Index of the candidate for a leaf, -1 for a merge.
  int candidate = -1;
  // Children of a merge. Horizontal: first is left of second. Vertical: first
  // is below second.
  int first = -1;
  int second = -1;
  MergeOrientation orientation = MergeOrientation::kLeaf;
  BlockShape shape;
  // Lower-left corners of the children's boxes inside this box.
  Micron first_x = 0;
  Micron first_y = 0;
  Micron second_x = 0;
  Micron second_y = 0;
  // Leaf candidate indices, ascending.
  std::vector<int> members;
  // Per-region shot reduction summed over members.
  std::vector<ShotCount> reduction;
  double profit = 0.0;
};

struct ClusterTolerances {
  // Relative half-widths of the similarity box.
  double slack = 0.25;
  double profit = 0.5;
};

struct ClusterStats {
  int rounds = 0;
  int merges = 0;
  // k-d tree nodes touched by partner searches and updates.
  int64_t probes = 0;
};

struct Clustering {
  std::vector<ClusterNode> nodes;
  // Top-level blocks, by node index.
  std::vector<int> roots;
  ClusterStats stats;
};

// Merge geometry for `a` then `b`: the four arrangements (a|b, b|a, a below b,
// b below a) are tried and the smallest box wins, earlier ones on ties.
// Exposed blanks of the merged box are the largest blank any member still
// needs past the union of the patterns.
ClusterNode MergeBlocks(const ClusterNode& a, int a_index, const ClusterNode& b,
                        int b_index);

// Leaves for `candidates` (indices into the instance) with the given profits
// (indexed like the instance), then merge rounds until at most `threshold`
// blocks remain or a round merges nothing.
Clustering ClusterCandidates(const Instance& instance, std::span<const int> candidates,
                             std::span<const double> profits, size_t threshold,
                             const ClusterTolerances& tolerances = {});

// Leaf candidates of `node` with their box corners relative to `node`'s box.
struct MemberOffset {
  int candidate;
  Micron x;
  Micron y;
};
std::vector<MemberOffset> MemberOffsets(const Clustering& clustering, int node);

// Appends the members of `node` to both sequences so that the merge
// relations are reproduced.
void ExpandSequences(const Clustering& clustering, int node,
                     std::vector<int>& positive, std::vector<int>& negative);

}  // namespace osp

#endif  // OSP_CLUSTER_H_
