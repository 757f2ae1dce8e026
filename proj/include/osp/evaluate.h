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

#ifndef OSP_EVALUATE_H_
#define OSP_EVALUATE_H_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "osp/model.h"

namespace osp {

// Writing time of every region when `selected` are printed by character
// projection (one shot per repeat) and everything else by VSB. The system
// time is the slowest region. Throws UnknownIdError.
WritingTimeReport Evaluate(const Instance& instance,
                           std::span<const CandidateId> selected);

// Weights each candidate's shot reduction by how close its regions are to the
// current bottleneck:
//   profit_i = sum_c (T_c / T_max) * (n_i - 1) * t_ic.
// Returns all zeros when every region is already at zero time.
std::vector<double> ComputeProfits(const Instance& instance,
                                   const WritingTimeReport& current);

// Profits at the all-VSB state (nothing selected).
std::vector<double> BaselineProfits(const Instance& instance);

// Minimum centre-to-centre pitch when `left` sits immediately left of
// `right`: the two share min(blank_right, blank_left) of blank.
inline Micron HorizontalPitch(const CharacterCandidate& left,
                              const CharacterCandidate& right) {
  return left.width() - std::min(left.blank_right, right.blank_left);
}

inline Micron VerticalPitch(const CharacterCandidate& below,
                            const CharacterCandidate& above) {
  return below.height() - std::min(below.blank_top, above.blank_bottom);
}

struct Violation {
  enum class Kind {
    kUnknownId,
    kDuplicateId,
    kOverlap,
    kOutline,
    kRowIndex,
    kRowHeight,
    kSequencePair,
  };
  Kind kind;
  CandidateId first = 0;
  CandidateId second = 0;
  std::string detail;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Adjacent characters in a row must keep their patterns at least
// max(facing blanks) apart; patterns must lie within [0, W]. Blanks may hang
// past the stencil edge.
FeasibilityVerdict ValidatePlacement(const Instance& instance,
                                     const Placement1D& placement);

// Every pair must be separated horizontally or vertically by at least the
// larger of the facing blanks, and every pattern must lie within
// [0, W] x [0, H]. The sequence pair, when present, must be two permutations
// of the placed ids.
FeasibilityVerdict ValidatePlacement(const Instance& instance,
                                     const Placement2D& placement);

std::string DescribeViolation(const Violation& violation);

}  // namespace osp

#endif  // OSP_EVALUATE_H_
