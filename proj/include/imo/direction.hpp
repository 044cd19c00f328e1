#pragma once

#include <string>

#include "imo/model.hpp"

namespace imo {

enum class DirectionStatus { Converged, MaxIterations, Infeasible };

const char* to_string(DirectionStatus s);

/// Solution of the direction subproblem at a point.
struct DirectionResult {
  Vec v;                    // direction
  double xi = 0.0;          // model optimal value, always <= 0
  Vec u;                    // |v| surrogate from the smooth reformulation
  double tau = 0.0;         // epigraph variable at the solver's last iterate
  DirectionStatus status = DirectionStatus::Converged;
  double kkt_residual = 0.0;
  double regularization_shift = 0.0;  // largest Levenberg shift applied
  int barrier_newton_iterations = 0;
};

std::string to_json(const DirectionResult& r);

/// Newton direction: minimizes the scalarized quadratic interval model
/// max_i upper(g_x^i(v)) through the epigraph reformulation
///   min tau  s.t.  q_i(v,u) <= tau,  -u_j <= v_j <= u_j,
/// solved by a primal log-barrier interior-point method (damped Newton inner
/// steps, barrier reduction factor 0.2). Blocks that fail the positive
/// semidefiniteness check get a Levenberg shift, recorded in the result.
DirectionResult newton_direction(const PointData& p, double tol = 1e-8);

/// First-order baseline: same subproblem with every Hessian block replaced
/// by the identity, i.e. min over v of max_i [first-order terms] + 1/2|v|^2.
DirectionResult steepest_direction(const PointData& p, double tol = 1e-8);

/// Brute-force reference: coarse grid scan of the scalarized model over
/// [-radius, radius]^n followed by pattern-search polish. Test oracle only;
/// rejects n > 3.
DirectionResult oracle_direction(const PointData& p, double radius, int grid);

}  // namespace imo
