#pragma once

#include <string>
#include <utility>
#include <vector>

#include "imo/interval.hpp"
#include "imo/ivm.hpp"

namespace imo {

/// A multiobjective interval optimization instance: m interval-valued
/// objectives over the box lb <= x <= ub.
struct ProblemDef {
  std::string name;
  int m = 0;
  int n = 0;
  Vec lb, ub;
  std::vector<Ivm> objectives;

  std::vector<Interval> evaluate(const Vec& x) const;
};

/// Names in registry order: the 20 corpus problems plus "portfolio".
const std::vector<std::string>& problem_names();

/// Lookup by name; throws std::out_of_range listing valid names.
ProblemDef get_problem(const std::string& name);

/// Two-asset portfolio reduced to one variable:
///   min ( [3x-6, 2x-4], [5x^2-6x+2, 5x^2-6x+3] )  on x in [0,1].
/// Reported solutions append the second weight 1-x.
ProblemDef portfolio_problem();

/// Closed-form solution of the weighted-sum scalarization of I-BK1.
struct WeightedSumSolution {
  double alpha;
  Vec x;                              // closed-form minimizer
  std::pair<Interval, Interval> G;    // I-BK1 objective values at x
};

/// Evaluates the closed form
///   x1 = 2.1667a / (0.3 + 0.13334a),  x2 = 3a / (0.43334 + 0.16666a)
/// and cross-checks it against an independent 1-D numeric minimization of
/// the scalarized objective (agreement within 1e-4, else logic_error).
WeightedSumSolution bk1_weighted_solution(double alpha);

struct RegionSamples {
  std::vector<Vec> points;
  std::vector<std::vector<Interval>> values;  // G(x) per point
  int skipped = 0;                            // evaluation failures
};

/// Uniform box samples (seeded, deterministic) with objective rectangles,
/// for plotting the objective feasible region.
RegionSamples sample_feasible_region(const ProblemDef& problem, int count,
                                     uint64_t seed);

}  // namespace imo
