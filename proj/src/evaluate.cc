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


#include "osp/evaluate.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace osp {

WritingTimeReport Evaluate(const Instance& instance,
                           std::span<const CandidateId> selected) {
  const CandidateIndex index(instance);
  const int regions = instance.region_count;
  WritingTimeReport report;
  report.vsb.assign(regions, 0);
  for (const CharacterCandidate& c : instance.candidates) {
    for (int r = 0; r < regions; ++r) report.vsb[r] += c.usage[r] * c.vsb_shots;
  }
  report.per_region = report.vsb;

  std::unordered_set<CandidateId> unique;
  for (CandidateId id : selected) {
    const CharacterCandidate& c = instance.candidates[index.at(id)];
    if (!unique.insert(id).second) continue;
    for (int r = 0; r < regions; ++r) report.per_region[r] -= c.reduction(r);
    report.selected.push_back(id);
  }
  std::sort(report.selected.begin(), report.selected.end());
  for (ShotCount t : report.per_region) {
    report.total = std::max(report.total, t);
    report.sum_shots += t;
  }
  return report;
}

std::vector<double> ComputeProfits(const Instance& instance,
                                   const WritingTimeReport& current) {
  std::vector<double> profits(instance.candidates.size(), 0.0);
  if (current.total <= 0) return profits;
  const double t_max = static_cast<double>(current.total);
  for (size_t i = 0; i < instance.candidates.size(); ++i) {
    const CharacterCandidate& c = instance.candidates[i];
    double profit = 0.0;
    for (int r = 0; r < instance.region_count; ++r) {
      profit += (static_cast<double>(current.per_region[r]) / t_max) *
                static_cast<double>(c.reduction(r));
    }
    profits[i] = profit;
  }
  return profits;
}

std::vector<double> BaselineProfits(const Instance& instance) {
  return ComputeProfits(instance, Evaluate(instance, {}));
}

namespace {

// Resolves ids and flags unknown and duplicate entries. Returns indices, -1
// for unknown ids.
std::vector<int> ResolveIds(const CandidateIndex& index,
                            const std::vector<CandidateId>& ids,
                            FeasibilityVerdict& verdict) {
  std::vector<int> resolved;
  resolved.reserve(ids.size());
  std::unordered_set<CandidateId> seen;
  for (CandidateId id : ids) {
    if (!index.contains(id)) {
      verdict.violations.push_back(
          {Violation::Kind::kUnknownId, id, id, "not in instance"});
      resolved.push_back(-1);
      continue;
    }
    if (!seen.insert(id).second) {
      verdict.violations.push_back(
          {Violation::Kind::kDuplicateId, id, id, "placed more than once"});
    }
    resolved.push_back(index.at(id));
  }
  return resolved;
}

void CheckHorizontalOutline(const Instance& instance,
                            const CharacterCandidate& c, Micron x,
                            FeasibilityVerdict& verdict) {
  const Micron left = x + c.blank_left;
  const Micron right = left + c.pattern_width;
  if (left < 0 || right > instance.stencil_width) {
    verdict.violations.push_back(
        {Violation::Kind::kOutline, c.id, c.id,
         "pattern x-span [" + std::to_string(left) + ", " +
             std::to_string(right) + "] outside [0, " +
             std::to_string(instance.stencil_width) + "]"});
  }
}

}  // namespace

FeasibilityVerdict ValidatePlacement(const Instance& instance,
                                     const Placement1D& placement) {
  FeasibilityVerdict verdict;
  const CandidateIndex index(instance);
  if (static_cast<int>(placement.rows.size()) > instance.row_count) {
    verdict.violations.push_back(
        {Violation::Kind::kRowIndex, 0, 0,
         std::to_string(placement.rows.size()) + " rows used, stencil has " +
             std::to_string(instance.row_count)});
  }
  const std::vector<int> resolved =
      ResolveIds(index, placement.SelectedIds(), verdict);
  size_t cursor = 0;
  for (const auto& row : placement.rows) {
    const CharacterCandidate* prev = nullptr;
    Micron prev_x = 0;
    for (const RowSlot& slot : row) {
      const int i = resolved[cursor++];
      if (i < 0) {
        prev = nullptr;
        continue;
      }
      const CharacterCandidate& c = instance.candidates[i];
      if (c.height() > instance.row_height) {
        verdict.violations.push_back({Violation::Kind::kRowHeight, c.id, c.id,
                                      "taller than row"});
      }
      CheckHorizontalOutline(instance, c, slot.x, verdict);
      if (prev != nullptr && slot.x - prev_x < HorizontalPitch(*prev, c)) {
        verdict.violations.push_back(
            {Violation::Kind::kOverlap, prev->id, c.id,
             "pitch " + std::to_string(slot.x - prev_x) + " < required " +
                 std::to_string(HorizontalPitch(*prev, c))});
      }
      prev = &c;
      prev_x = slot.x;
    }
  }
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

FeasibilityVerdict ValidatePlacement(const Instance& instance,
                                     const Placement2D& placement) {
  FeasibilityVerdict verdict;
  const CandidateIndex index(instance);
  const std::vector<CandidateId> ids = placement.SelectedIds();
  const std::vector<int> resolved = ResolveIds(index, ids, verdict);

  for (size_t a = 0; a < placement.placed.size(); ++a) {
    if (resolved[a] < 0) continue;
    const CharacterCandidate& c = instance.candidates[resolved[a]];
    const PlacedCharacter& p = placement.placed[a];
    CheckHorizontalOutline(instance, c, p.x, verdict);
    const Micron bottom = p.y + c.blank_bottom;
    const Micron top = bottom + c.pattern_height;
    if (bottom < 0 || top > instance.stencil_height) {
      verdict.violations.push_back(
          {Violation::Kind::kOutline, c.id, c.id,
           "pattern y-span [" + std::to_string(bottom) + ", " +
               std::to_string(top) + "] outside [0, " +
               std::to_string(instance.stencil_height) + "]"});
    }
  }
  for (size_t a = 0; a < placement.placed.size(); ++a) {
    if (resolved[a] < 0) continue;
    const CharacterCandidate& ca = instance.candidates[resolved[a]];
    const PlacedCharacter& pa = placement.placed[a];
    for (size_t b = a + 1; b < placement.placed.size(); ++b) {
      if (resolved[b] < 0) continue;
      const CharacterCandidate& cb = instance.candidates[resolved[b]];
      const PlacedCharacter& pb = placement.placed[b];
      const bool separated = pb.x - pa.x >= HorizontalPitch(ca, cb) ||
                             pa.x - pb.x >= HorizontalPitch(cb, ca) ||
                             pb.y - pa.y >= VerticalPitch(ca, cb) ||
                             pa.y - pb.y >= VerticalPitch(cb, ca);
      if (!separated) {
        verdict.violations.push_back({Violation::Kind::kOverlap, ca.id, cb.id,
                                      "patterns closer than facing blanks"});
      }
    }
  }

  const bool has_pair =
      !placement.seq_positive.empty() || !placement.seq_negative.empty();
  if (has_pair) {
    auto sorted = [](std::vector<CandidateId> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    const std::vector<CandidateId> expected = sorted(ids);
    if (sorted(placement.seq_positive) != expected ||
        sorted(placement.seq_negative) != expected) {
      verdict.violations.push_back(
          {Violation::Kind::kSequencePair, 0, 0,
           "sequence pair is not a pair of permutations of the placed ids"});
    }
  }
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

std::string DescribeViolation(const Violation& violation) {
  const char* kind = "";
  switch (violation.kind) {
    case Violation::Kind::kUnknownId: kind = "unknown-id"; break;
    case Violation::Kind::kDuplicateId: kind = "duplicate-id"; break;
    case Violation::Kind::kOverlap: kind = "overlap"; break;
    case Violation::Kind::kOutline: kind = "outline"; break;
    case Violation::Kind::kRowIndex: kind = "row-index"; break;
    case Violation::Kind::kRowHeight: kind = "row-height"; break;
    case Violation::Kind::kSequencePair: kind = "sequence-pair"; break;
  }
  return std::string(kind) + " (" + std::to_string(violation.first) + ", " +
         std::to_string(violation.second) + "): " + violation.detail;
}

}  // namespace osp
