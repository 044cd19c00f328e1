#pragma once

#include <string>
#include <vector>

#include "imo/direction.hpp"
#include "imo/problems.hpp"

namespace imo {

enum class DirectionKind { Newton, SteepestDescent };

const char* to_string(DirectionKind k);

struct SolverParams {
  double eta = 0.5;       // step length reduction factor, in (0,1)
  double sigma = 0.001;   // line search parameter, in (0,1)
  double eps = 1e-6;      // stopping tolerance on -xi
  int max_iters = 500;
  int min_step_backtracks = 40;  // declare failure below eta^40
  DirectionKind direction_kind = DirectionKind::Newton;
  double subproblem_tol = 1e-8;

  void validate() const;
};

struct IterateRecord {
  int k = 0;
  Vec x;
  std::vector<Interval> G_values;
  double xi = 0.0;
  Vec v;
  double t = 0.0;      // accepted step from this iterate; 0 on the final one
  int backtracks = 0;
  bool left_box = false;     // iterate outside [lb, ub] (never projected)
  bool in_level_set = true;  // G_i(x^k) dominated by G_i(x^0) for all i
  double regularization_shift = 0.0;
};

enum class SolveStatus { Critical, MaxIterations, LineSearchFailed };

const char* to_string(SolveStatus s);

struct SolveReport {
  std::string problem;
  SolverParams params;
  Vec x0;
  std::vector<IterateRecord> iterates;
  SolveStatus status = SolveStatus::Critical;
  Vec final_x;
  double wall_seconds = 0.0;
  double subproblem_seconds = 0.0;

  int iterations() const { return static_cast<int>(iterates.size()) - 1; }
};

std::string to_json(const SolveReport& r);
std::string to_csv(const SolveReport& r);

/// Backtracking step length: largest t in {1, eta, eta^2, ...} satisfying
/// both endpoint inequalities
///   G_lower(x+tv) <= G_lower(x) + sigma t xi  and same for G_upper,
/// for every objective. Returns t and the number of backtracks; t = 0 if the
/// floor eta^min_step_backtracks was reached without acceptance. Objective
/// evaluation failures along the ray count as rejections.
std::pair<double, int> armijo_step(const ProblemDef& problem, const Vec& x,
                                   const Vec& v, double xi,
                                   const SolverParams& params);

/// The Newton iteration: direction subproblem, stopping rule xi > -eps,
/// Armijo backtracking, x <- x + t v. Iterates are never projected onto the
/// box; leaving it is recorded per iterate.
SolveReport solve(const ProblemDef& problem, const Vec& x0,
                  const SolverParams& params);

struct CriticalityCertificate {
  double xi;
  bool is_critical;
  Vec v;
};

/// One direction solve; critical iff xi > -eps.
CriticalityCertificate criticality_certificate(const ProblemDef& problem,
                                               const Vec& x, double eps);

/// Builds the variable-scaled problem G(T^{-1} x) by composing every basis
/// function with T^{-1}, solves the direction subproblem at Tx on it, and
/// returns ||v_scaled(Tx) - T v(x)||. Rejects T with condition number >= 1e8.
double check_scaling_invariance(const ProblemDef& problem, const Vec& x,
                                const Mat& T);

/// Pairwise objective-vector dominance classification of a point list.
std::vector<std::vector<DominanceRelation>> mutual_nondominance(
    const ProblemDef& problem, const std::vector<Vec>& points);

/// Vector-level comparison of two objective vectors: StrictlyDominates when
/// every component strictly dominates, Dominates when all components are <=
/// with at least one strict, Equal when identical.
DominanceRelation compare_objective_vectors(const std::vector<Interval>& a,
                                            const std::vector<Interval>& b);

}  // namespace imo
