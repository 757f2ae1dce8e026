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


// Acceptance harness. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "osp/evaluate.h"
#include "osp/generator.h"
#include "osp/instance_io.h"
#include "osp/kdtree.h"
#include "osp/oracle.h"
#include "osp/osp1d.h"
#include "osp/osp2d.h"
#include "test_util.h"

namespace osp {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

// Violations seen by any solver in any criterion.
int g_violations = 0;
int g_placements = 0;

template <typename Placement>
void Audit(const Instance& in, const Placement& p) {
  ++g_placements;
  const FeasibilityVerdict v = ValidatePlacement(in, p);
  g_violations += static_cast<int>(v.violations.size());
  if (!v.feasible && v.violations.empty()) ++g_violations;
}

// Shots fired per region, repeat by repeat.
std::vector<ShotCount> Simulate(const Instance& in, const std::vector<CandidateId>& ids) {
  std::vector<ShotCount> t(in.region_count, 0);
  for (const CharacterCandidate& c : in.candidates) {
    const bool stencil = std::find(ids.begin(), ids.end(), c.id) != ids.end();
    for (int r = 0; r < in.region_count; ++r) {
      for (ShotCount k = 0; k < c.usage[r]; ++k) t[r] += stencil ? 1 : c.vsb_shots;
    }
  }
  return t;
}

Outcome WritingTimeModel() {
  std::mt19937_64 rng(1001);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(UniformInt(rng, 0, 50));
    const int regions = static_cast<int>(UniformInt(rng, 1, 10));
    const Instance in = testing::RandomInstance2D(rng, n, regions, 1000, 1000);
    std::vector<CandidateId> ids;
    for (const auto& c : in.candidates) {
      if (UniformInt(rng, 0, 1)) ids.push_back(c.id);
    }
    const WritingTimeReport r = Evaluate(in, ids);
    const std::vector<ShotCount> t = Simulate(in, ids);
    const ShotCount total = t.empty() ? 0 : *std::max_element(t.begin(), t.end());
    if (r.per_region != t || r.total != total) ++mismatches;
  }
  return {mismatches == 0, Format("%.0f mismatches in 500 instances", mismatches)};
}

Micron BruteForceWidth(const std::vector<CharacterCandidate>& row) {
  std::vector<int> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  Micron best = std::numeric_limits<Micron>::max();
  do {
    Micron w = 0;
    for (size_t q = 0; q < order.size(); ++q) {
      const CharacterCandidate& c = row[order[q]];
      w += c.width();
      if (q > 0) w -= std::min(row[order[q - 1]].blank_right, c.blank_left);
    }
    best = std::min(best, w);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

Outcome SymmetricRowOrdering() {
  std::mt19937_64 rng(1002);
  testing::CandidateRanges ranges;
  ranges.symmetric = true;
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto row = testing::RandomRow(rng, static_cast<int>(UniformInt(rng, 1, 8)), ranges);
    Micron sum_w = 0, sum_s = 0, max_s = 0;
    for (const auto& c : row) {
      sum_w += c.width();
      sum_s += c.slack();
      max_s = std::max(max_s, c.slack());
    }
    const Micron closed = sum_w - (sum_s - max_s);
    const Micron greedy = GreedyRowOrderIndices(row).width;
    if (greedy != closed || BruteForceWidth(row) != closed) ++bad;
  }
  return {bad == 0, Format("%.0f of 1000 rows differ", bad)};
}

Outcome RefinementOptimality() {
  std::mt19937_64 rng(1003);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto row = testing::RandomRow(rng, static_cast<int>(UniformInt(rng, 1, 12)));
    if (RefineRow(row).triplet.width != ExactOrderings(row).optimum) ++bad;
  }
  return {bad == 0, Format("%.0f of 1000 rows differ", bad)};
}

double SelectedProfit(const RowAssignment& a, const std::vector<double>& profits) {
  double sum = 0.0;
  for (size_t i = 0; i < profits.size(); ++i) {
    if (a.row_of[i] >= 0) sum += profits[i];
  }
  return sum;
}

Instance TinyRowInstance(std::mt19937_64& rng) {
  const int n = static_cast<int>(UniformInt(rng, 1, 12));
  const int rows = static_cast<int>(UniformInt(rng, 1, 3));
  Instance in = testing::RandomInstance1D(rng, n, 3, UniformInt(rng, 40, 100), rows);
  // Every candidate carries profit so that the ratio spread is finite.
  for (auto& c : in.candidates) {
    c.vsb_shots = std::max<ShotCount>(c.vsb_shots, 2);
    c.usage[0] = std::max<ShotCount>(c.usage[0], 1);
  }
  return in;
}

Outcome RoundingBound() {
  std::mt19937_64 rng(1004);
  int bound_failures = 0, duality_failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = TinyRowInstance(rng);
    const std::vector<double> profits = BaselineProfits(in);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = 0; i < profits.size(); ++i) {
      const double ratio =
          profits[i] / static_cast<double>(in.candidates[i].width() - in.candidates[i].slack());
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const double alpha = hi / lo;
    SuccRoundingStats stats;
    const RowAssignment a = SuccRounding(in, {}, &stats);
    const double rounded = SelectedProfit(a, profits);
    const double knapsack = ExactKnapsack3Prime(in, profits).optimum;
    const double integer = ExactSimplified(in, profits).optimum;
    if (rounded < 0.5 / alpha * knapsack) ++bound_failures;
    if (stats.first_lp_objective + 1e-6 < integer) ++duality_failures;
    if (knapsack > 0) worst = std::min(worst, rounded / knapsack * alpha);
  }
  return {bound_failures == 0 && duality_failures == 0,
          Format("%.0f bound and %.0f duality failures; min rounded*alpha/opt %.3f",
                 bound_failures, duality_failures, worst)};
}

Outcome EqualRatioRegime() {
  std::mt19937_64 rng(1005);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    Instance in = TinyRowInstance(rng);
    // One region with profit = (n - 1) * t = k * (w - s) for all candidates.
    const ShotCount k = UniformInt(rng, 1, 5);
    in.region_count = 1;
    for (auto& c : in.candidates) {
      c.vsb_shots = c.width() - c.slack() + 1;
      c.usage = {k};
    }
    const std::vector<double> profits = BaselineProfits(in);
    const double rounded = SelectedProfit(SuccRounding(in, {}), profits);
    const double optimum = ExactKnapsack3Prime(in, profits).optimum;
    if (rounded < 0.5 * optimum) ++failures;
    if (optimum > 0) worst = std::min(worst, rounded / optimum);
  }
  return {failures == 0, Format("%.0f failures; min rounded/opt %.3f", failures, worst)};
}

Outcome Dominance1D() {
  double ratio_sum = 0.0, slowest = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance in = GenerateInstance(Preset("small", Mode::k1D, 10), seed);
    const BaselineResult1D greedy = GreedyBaseline1D(in);
    const auto start = Clock::now();
    const Solve1DResult ours = Solve1D(in);
    slowest = std::max(slowest, Seconds(start));
    Audit(in, greedy.placement);
    Audit(in, ours.placement);
    ratio_sum += static_cast<double>(ours.report.total) / greedy.report.total;
  }
  const double mean = ratio_sum / 10;
  return {mean <= 0.90 && slowest <= 120.0,
          Format("mean ratio %.4f (target <= 0.90), slowest %.2f s", mean, slowest)};
}

Outcome Dominance2D() {
  double ratio_sum = 0.0, slowest = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance in = GenerateInstance(Preset("small", Mode::k2D, 10), seed);
    const BaselineResult2D greedy = GreedyBaseline2D(in);
    const auto start = Clock::now();
    const Solve2DResult ours = Solve2D(in);
    slowest = std::max(slowest, Seconds(start));
    Audit(in, greedy.placement);
    Audit(in, ours.placement);
    ratio_sum += static_cast<double>(ours.report.total) / greedy.report.total;
  }
  const double mean = ratio_sum / 10;
  return {mean <= 0.95 && slowest <= 300.0,
          Format("mean ratio %.4f (target <= 0.95), slowest %.2f s", mean, slowest)};
}

Outcome KdTreeEquivalence() {
  using Tree = KdTree<3>;
  std::mt19937_64 rng(1009);
  auto coord = [&] { return static_cast<double>(UniformInt(rng, 0, 15)); };
  struct Entry {
    Tree::Point p;
    double w;
  };
  std::map<int64_t, Entry> live;
  Tree tree;
  int64_t next = 0;
  int mismatches = 0;
  for (int op = 0; op < 10000; ++op) {
    const int kind = static_cast<int>(UniformInt(rng, 0, 3));
    if (kind == 0 || live.empty()) {
      const Tree::Point p{coord(), coord(), coord()};
      const double w = static_cast<double>(UniformInt(rng, 0, 9));
      tree.Insert(p, next, w);
      live[next++] = {p, w};
    } else if (kind == 1) {
      auto it = std::next(live.begin(), UniformInt(rng, 0, live.size() - 1));
      if (!tree.Erase(it->second.p, it->first)) ++mismatches;
      live.erase(it);
    } else if (kind == 2) {
      Tree::Box box;
      for (int a = 0; a < 3; ++a) {
        const double u = coord(), v = coord();
        box.lo[a] = std::min(u, v);
        box.hi[a] = std::max(u, v);
      }
      std::vector<int64_t> inside;
      for (const auto& [id, e] : live) {
        if (box.Contains(e.p)) inside.push_back(id);
      }
      if (tree.Range(box) != inside) ++mismatches;
    } else {
      const Tree::Point q{coord(), coord(), coord()};
      std::optional<int64_t> best;
      double best_d = 0.0;
      for (const auto& [id, e] : live) {
        double d = 0.0;
        for (int a = 0; a < 3; ++a) d += (q[a] - e.p[a]) * (q[a] - e.p[a]);
        if (!best || d < best_d) {
          best = id;
          best_d = d;
        }
      }
      if (tree.Nearest(q) != best) ++mismatches;
    }
    if (tree.size() != live.size()) ++mismatches;
  }
  if (!tree.CheckInvariants()) ++mismatches;
  return {mismatches == 0, Format("%.0f mismatches in 10000 operations", mismatches)};
}

Outcome TinyGapAudit() {
  std::mt19937_64 rng(1010);
  int unsound = 0;
  double gap1 = 0.0, gap2 = 0.0;
  const int count1 = 100, count2 = 60;
  for (int trial = 0; trial < count1; ++trial) {
    const Instance in = testing::RandomInstance1D(
        rng, static_cast<int>(UniformInt(rng, 1, 10)), 3, UniformInt(rng, 40, 100),
        static_cast<int>(UniformInt(rng, 1, 2)));
    const auto exact = Exact1D(in);
    const Solve1DResult ours = Solve1D(in);
    Audit(in, exact.witness.placement);
    Audit(in, ours.placement);
    if (exact.optimum > ours.report.total) ++unsound;
    gap1 += exact.optimum > 0
                ? static_cast<double>(ours.report.total - exact.optimum) / exact.optimum
                : 0.0;
  }
  for (int trial = 0; trial < count2; ++trial) {
    const Instance in = testing::RandomInstance2D(
        rng, static_cast<int>(UniformInt(rng, 1, 5)), 3, UniformInt(rng, 30, 80),
        UniformInt(rng, 30, 80));
    const auto exact = Exact2D(in);
    Solve2DParams params;
    params.sa.moves = 5000;
    const Solve2DResult ours = Solve2D(in, params);
    Audit(in, exact.witness.placement);
    Audit(in, ours.placement);
    if (exact.optimum > ours.report.total) ++unsound;
    gap2 += exact.optimum > 0
                ? static_cast<double>(ours.report.total - exact.optimum) / exact.optimum
                : 0.0;
  }
  return {unsound == 0, Format("%.0f unsound; mean gap 1D %.4f, 2D %.4f", unsound,
                               gap1 / count1, gap2 / count2)};
}

Outcome Feasibility() {
  return {g_violations == 0, Format("%.0f violations over %.0f placements", g_violations,
                                    g_placements)};
}

std::string StripRuntime(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);) {
    if (line.find("\"runtime_ms\"") == std::string::npos) out << line << '\n';
  }
  return out.str();
}

Outcome Determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "osp_acceptance";
  fs::create_directories(dir);
  const std::string bin = OSP_BINARY;
  int differing = 0, errors = 0;
  for (const char* mode : {"1d", "2d"}) {
    const std::string inst = (dir / (std::string(mode) + ".json")).string();
    const std::string gen = bin + " gen --preset small --mode " + mode + " --seed 7 --out " + inst;
    if (std::system(gen.c_str()) != 0) ++errors;
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      const std::string report =
          (dir / (std::string(mode) + "_" + std::to_string(run) + ".json")).string();
      const std::string solve = bin + " solve " + inst + " --out " + report;
      if (std::system(solve.c_str()) != 0) ++errors;
      reports[run] = StripRuntime(report);
    }
    if (reports[0] != reports[1] || reports[0].empty()) ++differing;
  }
  fs::remove_all(dir);
  return {differing == 0 && errors == 0,
          Format("%.0f modes differ, %.0f command failures", differing, errors)};
}

}  // namespace
}  // namespace osp

int main() {
  using osp::Outcome;
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  // Feasibility runs after every solver-producing criterion.
  const Criterion criteria[] = {
      {"writing-time model matches shot simulation", 5, osp::WritingTimeModel},
      {"symmetric-blank greedy row order is optimal", 30, osp::SymmetricRowOrdering},
      {"refinement equals exhaustive orderings", 60, osp::RefinementOptimality},
      {"rounding bound and weak duality", 120, osp::RoundingBound},
      {"equal-ratio rounding reaches half the optimum", 60, osp::EqualRatioRegime},
      {"1D pipeline dominates greedy", 1200, osp::Dominance1D},
      {"2D pipeline dominates greedy", 3000, osp::Dominance2D},
      {"every emitted placement is feasible", 0, nullptr},
      {"k-d tree matches linear scan", 10, osp::KdTreeEquivalence},
      {"exact oracles never beaten on tiny instances", 0, osp::TinyGapAudit},
      {"solve reports are deterministic", 0, osp::Determinism},
  };
  Outcome results[11];
  double elapsed[11] = {};
  const int order[] = {0, 1, 2, 3, 4, 5, 6, 8, 9, 7, 10};
  for (int k : order) {
    const auto start = osp::Clock::now();
    results[k] = k == 7 ? osp::Feasibility() : criteria[k].run();
    elapsed[k] = osp::Seconds(start);
    if (criteria[k].limit_s > 0 && elapsed[k] > criteria[k].limit_s) {
      results[k].pass = false;
      results[k].detail += "; over time limit";
    }
  }
  int failed = 0;
  for (int k = 0; k < 11; ++k) {
    failed += results[k].pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%s; %.2f s)\n", results[k].pass ? "PASS" : "FAIL",
                k + 1, criteria[k].name, results[k].detail.c_str(), elapsed[k]);
  }
  return failed == 0 ? 0 : 1;
}
