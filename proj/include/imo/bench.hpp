#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imo/solver.hpp"

namespace imo {

struct CampaignSpec {
  std::vector<std::string> problems;
  std::vector<DirectionKind> solvers = {DirectionKind::Newton};
  int runs_per_problem = 100;
  uint64_t seed = 42;
  SolverParams params;
  int jobs = 0;  // 0 = hardware concurrency
};

struct RunRecord {
  std::string problem;
  DirectionKind solver = DirectionKind::Newton;
  int run_index = 0;
  Vec x0;
  int iterations = 0;
  double cpu_seconds = 0.0;
  SolveStatus status = SolveStatus::Critical;
};

/// Runs every (problem, run_index) pair; the initial point is drawn from a
/// per-run stream of (seed, problem, run_index), so all solvers share the
/// same x0 for a pair and parallel execution cannot change results. Failures
/// are recorded in the status field, never thrown.
std::vector<RunRecord> run_campaign(const CampaignSpec& spec);

struct SummaryStats {
  double min = 0, max = 0, mean = 0, median = 0, mode = 0, std_dev = 0;
};

enum class Metric { Iterations, CpuSeconds };

const char* to_string(Metric m);

/// Min/Max/Mean/Median/Mode/Std.Dev. over the chosen field. Mode is the
/// smallest most-frequent value; std_dev uses the N-1 divisor.
SummaryStats summarize(const std::vector<RunRecord>& records, Metric metric);

struct ProfileCurve {
  DirectionKind solver;
  Metric metric;
  std::vector<double> zeta;  // ascending grid starting at 1
  std::vector<double> rho;   // nondecreasing, ends at 1
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  int excluded_problems = 0;  // problems dropped because a solver never solved them
};

/// Dolan-More performance profiles over per-(problem, solver) averages:
/// ratio R_ps = avg_ps / min_s avg_ps, rho(zeta) = fraction of problems with
/// R_ps <= zeta, on a 200-point grid over [1, max ratio]. By default failed
/// runs contribute their consumed effort; pass successful_only to drop them.
ProfileResult performance_profile(const std::vector<RunRecord>& records,
                                  Metric metric, bool successful_only = false);

}  // namespace imo
