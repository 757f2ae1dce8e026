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


// Sequence-pair decoding with overlap-aware pitches. Block a is left of b
// when a precedes b in both sequences, and below b when a follows b in the
// positive sequence but precedes it in the negative one. Coordinates are the
// longest paths in the two constraint graphs, where the edge a -> b weighs
// w_a - min(sr_a, sl_b) horizontally and h_a - min(st_a, sb_b) vertically.

#ifndef OSP_SEQUENCE_PAIR_H_
#define OSP_SEQUENCE_PAIR_H_

#include <span>
#include <vector>

#include "osp/model.h"

namespace osp {

// Blank-inclusive box with its four blanks; characters and merged clusters
// share this shape.
struct BlockShape {
  Micron width = 0;
  Micron height = 0;
  Micron blank_left = 0;
  Micron blank_right = 0;
  Micron blank_top = 0;
  Micron blank_bottom = 0;

  Micron pattern_width() const { return width - blank_left - blank_right; }
  Micron pattern_height() const { return height - blank_bottom - blank_top; }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

BlockShape ShapeOf(const CharacterCandidate& c);

inline Micron HorizontalPitch(const BlockShape& left, const BlockShape& right) {
  return left.width - std::min(left.blank_right, right.blank_left);
}
inline Micron VerticalPitch(const BlockShape& below, const BlockShape& above) {
  return below.height - std::min(below.blank_top, above.blank_bottom);
}

// Permutations of block indices 0..n-1.
struct SequencePair {
  std::vector<int> positive;
  std::vector<int> negative;

  static SequencePair Identity(int n);
  bool IsValid(int n) const;
};

struct PackedBlocks {
  std::vector<Micron> x;
  std::vector<Micron> y;
};

// Lower-left compacted coordinates; blocks with no predecessor sit at 0.
// Throws std::invalid_argument when `pair` is not a pair of permutations of
// the block indices.
PackedBlocks SpPack(std::span<const BlockShape> blocks, const SequencePair& pair);

// Same decoding over instance characters given by id. The placement records
// the sequence pair as ids. Throws UnknownIdError.
Placement2D SpPack(const Instance& instance, std::span<const CandidateId> positive,
                   std::span<const CandidateId> negative);

}  // namespace osp

#endif  // OSP_SEQUENCE_PAIR_H_
