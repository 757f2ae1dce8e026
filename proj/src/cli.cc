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


#include "osp/cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "osp/evaluate.h"
#include "osp/generator.h"
#include "osp/instance_io.h"
#include "osp/oracle.h"
#include "osp/osp1d.h"
#include "osp/osp2d.h"

namespace osp {
namespace {

// A file that is missing or unreadable; a usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveFlags {
  double th_inv = 0.9;
  size_t refine_cap = 4096;
  double keep = Solve2DParams{}.keep_fraction;
  int cluster_threshold = -1;
  int64_t sa_moves = SaParams{}.moves;
  uint64_t sa_seed = SaParams{}.seed;
};

Solve1DParams Params1D(const SolveFlags& f) {
  Solve1DParams p;
  p.th_inv = f.th_inv;
  p.refine_cap = f.refine_cap;
  return p;
}

Solve2DParams Params2D(const SolveFlags& f) {
  Solve2DParams p;
  p.keep_fraction = f.keep;
  p.cluster_threshold = f.cluster_threshold;
  p.sa.moves = f.sa_moves;
  p.sa.seed = f.sa_seed;
  return p;
}

void AddSolveFlags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--th-inv", f.th_inv, "Rounding threshold (0, 1]")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--refine-cap", f.refine_cap, "Refinement solution cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--keep", f.keep, "2D pre-filter keep fraction (0, 1]")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--cluster-threshold", f.cluster_threshold,
                  "2D block count at which clustering stops (default: half)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--sa-moves", f.sa_moves, "Annealing move budget")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--sa-seed", f.sa_seed, "Annealing seed");
}

Instance Load(const std::string& path) {
  if (!std::filesystem::exists(path)) throw UsageError("no such file: " + path);
  return LoadInstance(path);
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

double CpuSeconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

std::string ReportText(const WritingTimeReport& report, double runtime_ms,
                       const std::string& format) {
  if (format == "csv") {
    std::ostringstream s;
    s << "t_total,sum_shots,char,runtime_ms\n"
      << report.total << ',' << report.sum_shots << ',' << report.selected.size() << ','
      << runtime_ms << '\n';
    return s.str();
  }
  return ReportToJson(report, runtime_ms).dump(1) + "\n";
}

int PrintViolations(const FeasibilityVerdict& verdict, std::ostream& err) {
  for (const Violation& v : verdict.violations) {
    err << "violation: " << DescribeViolation(v) << '\n';
  }
  return verdict.feasible ? kExitOk : kExitInvalid;
}

struct Solved {
  Json placement;
  WritingTimeReport report;
  FeasibilityVerdict verdict;
};

Solved SolveInstance(const Instance& instance, const SolveFlags& flags) {
  Solved s;
  if (instance.mode == Mode::k1D) {
    const Solve1DResult r = Solve1D(instance, Params1D(flags));
    s.placement = PlacementToJson(r.placement);
    s.report = r.report;
    s.verdict = ValidatePlacement(instance, r.placement);
  } else {
    const Solve2DResult r = Solve2D(instance, Params2D(flags));
    s.placement = PlacementToJson(r.placement);
    s.report = r.report;
    s.verdict = ValidatePlacement(instance, r.placement);
  }
  return s;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Overlap-aware stencil planning"};
  app.require_subcommand(1);

  std::string preset = "small";
  std::string mode = "1d";
  uint64_t seed = 1;
  int regions = 10;
  std::string out_path;
  std::string format = "json";
  std::string instance_path;
  std::string placement_path;
  std::string which = "auto";
  int seeds = 3;
  SolveFlags flags;

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "Stencil mode")->check(CLI::IsMember({"1d", "2d"}));
  };
  auto add_preset = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Generator preset")
        ->check(CLI::IsMember({"small", "large"}));
    cmd->add_option("--regions", regions, "Region count")->check(CLI::PositiveNumber);
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  add_preset(gen);
  add_mode(gen);
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out_path, "Instance file (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance_path, "Instance file")->required();
  AddSolveFlags(solve, flags);
  solve->add_option("--out", out_path, "Report file (default stdout)");
  solve->add_option("--placement", placement_path, "Placement file");
  solve->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* eval = app.add_subcommand("eval", "Check and evaluate a placement");
  eval->add_option("instance", instance_path, "Instance file")->required();
  eval->add_option("placement", placement_path, "Placement file")->required();
  eval->add_option("--out", out_path, "Report file (default stdout)");
  eval->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* oracle = app.add_subcommand("oracle", "Exact or baseline reference solve");
  oracle->add_option("instance", instance_path, "Instance file")->required();
  oracle->add_option("--which", which, "Reference solver")
      ->check(CLI::IsMember({"auto", "exact", "greedy"}));
  oracle->add_option("--out", out_path, "Report file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Greedy vs pipeline over seeds");
  add_preset(bench);
  add_mode(bench);
  bench->add_option("--seed", seed, "First seed");
  bench->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  AddSolveFlags(bench, flags);
  bench->add_option("--out", out_path, "CSV file (default stdout)");
  bench->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      const Mode m = mode == "2d" ? Mode::k2D : Mode::k1D;
      const Instance instance = GenerateInstance(Preset(preset, m, regions), seed);
      Emit(SerializeInstance(instance), out_path, out);
      return kExitOk;
    }
    if (*solve) {
      const Instance instance = Load(instance_path);
      const auto start = std::chrono::steady_clock::now();
      const Solved s = SolveInstance(instance, flags);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      if (!placement_path.empty()) WriteTextFile(placement_path, s.placement.dump(1) + "\n");
      Emit(ReportText(s.report, ms, format), out_path, out);
      return PrintViolations(s.verdict, err);
    }
    if (*eval) {
      const Instance instance = Load(instance_path);
      if (!std::filesystem::exists(placement_path)) {
        throw UsageError("no such file: " + placement_path);
      }
      const Json doc = ReadJsonFile(placement_path);
      FeasibilityVerdict verdict;
      std::vector<CandidateId> ids;
      if (instance.mode == Mode::k1D) {
        const Placement1D p = Placement1DFromJson(doc);
        verdict = ValidatePlacement(instance, p);
        ids = p.SelectedIds();
      } else {
        const Placement2D p = Placement2DFromJson(doc);
        verdict = ValidatePlacement(instance, p);
        ids = p.SelectedIds();
      }
      if (!verdict.feasible) return PrintViolations(verdict, err);
      Emit(ReportText(Evaluate(instance, ids), 0.0, format), out_path, out);
      return kExitOk;
    }
    if (*oracle) {
      const Instance instance = Load(instance_path);
      // Exact solvers only cover desk-scale instances.
      const size_t n = instance.candidates.size();
      const bool small = instance.mode == Mode::k1D ? n <= 12 && instance.row_count <= 3 : n <= 6;
      const bool greedy = which == "greedy" || (which == "auto" && !small);
      Json doc;
      if (instance.mode == Mode::k1D) {
        if (greedy) {
          const BaselineResult1D r = GreedyBaseline1D(instance);
          doc = {{"oracle", "greedy_1d"}, {"report", ReportToJson(r.report, 0.0)},
                 {"placement", PlacementToJson(r.placement)}};
        } else {
          const auto r = Exact1D(instance);
          doc = {{"oracle", "exact_1d"}, {"optimum", r.optimum}, {"explored", r.explored},
                 {"report", ReportToJson(r.witness.report, 0.0)},
                 {"placement", PlacementToJson(r.witness.placement)}};
        }
      } else {
        if (greedy) {
          const BaselineResult2D r = GreedyBaseline2D(instance);
          doc = {{"oracle", "greedy_2d"}, {"report", ReportToJson(r.report, 0.0)},
                 {"placement", PlacementToJson(r.placement)}};
        } else {
          const auto r = Exact2D(instance);
          doc = {{"oracle", "exact_2d"}, {"optimum", r.optimum}, {"explored", r.explored},
                 {"report", ReportToJson(r.witness.report, 0.0)},
                 {"placement", PlacementToJson(r.witness.placement)}};
        }
      }
      Emit(doc.dump(1) + "\n", out_path, out);
      return kExitOk;
    }
    if (*bench) {
      const Mode m = mode == "2d" ? Mode::k2D : Mode::k1D;
      std::ostringstream csv;
      csv << "instance,seed,algorithm,shot,char,cpu_s\n";
      int status = kExitOk;
      for (int k = 0; k < seeds; ++k) {
        const uint64_t s = seed + static_cast<uint64_t>(k);
        const Instance instance = GenerateInstance(Preset(preset, m, regions), s);
        const std::string name = preset + "-" + mode + "-" + std::to_string(s);
        auto row = [&](const char* algorithm, const WritingTimeReport& report, double cpu) {
          csv << name << ',' << s << ',' << algorithm << ',' << report.total << ','
              << report.selected.size() << ',' << std::fixed << std::setprecision(3) << cpu
              << std::defaultfloat << '\n';
        };
        double t0 = CpuSeconds();
        FeasibilityVerdict greedy_verdict;
        WritingTimeReport greedy_report;
        if (m == Mode::k1D) {
          const BaselineResult1D g = GreedyBaseline1D(instance);
          greedy_verdict = ValidatePlacement(instance, g.placement);
          greedy_report = g.report;
        } else {
          const BaselineResult2D g = GreedyBaseline2D(instance);
          greedy_verdict = ValidatePlacement(instance, g.placement);
          greedy_report = g.report;
        }
        row("greedy", greedy_report, CpuSeconds() - t0);
        t0 = CpuSeconds();
        const Solved solved = SolveInstance(instance, flags);
        row("pipeline", solved.report, CpuSeconds() - t0);
        if (PrintViolations(greedy_verdict, err) != kExitOk ||
            PrintViolations(solved.verdict, err) != kExitOk) {
          status = kExitInvalid;
        }
      }
      Emit(csv.str(), out_path, out);
      return status;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownIdError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace osp
