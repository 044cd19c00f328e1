#pragma once

#include <vector>

#include "imo/interval.hpp"
#include "imo/ivm.hpp"
#include "imo/scalar_field.hpp"

namespace imo {

/// Boundary-decomposed gH-gradients and gH-Hessians of every objective at a
/// fixed point x: the data the Newton-direction subproblem consumes.
struct PointData {
  Vec x;
  struct Objective {
    Vec grad_lo, grad_hi;   // componentwise endpoints of the gH-gradient
    Mat hess_lo, hess_hi;   // entrywise endpoints of the gH-Hessian
  };
  std::vector<Objective> objectives;

  int dim() const { return static_cast<int>(x.size()); }
  int num_objectives() const { return static_cast<int>(objectives.size()); }
};

PointData make_point_data(const std::vector<Ivm>& objectives, const Vec& x);

/// Value of the quadratic interval model g_x^i at direction v.
struct ModelValue {
  double lower;
  double upper;
};

/// Exact evaluation of the model boundary pair:
///   1/2 (glo+ghi)'v -/+ 1/2 (ghi-glo)'|v|
///   + 1/4 v'(Hlo+Hhi)v -/+ 1/4 |v|'(Hhi-Hlo)|v|
/// with - for the lower and + for the upper boundary.
ModelValue eval_model(const PointData& p, int objective, const Vec& v);

/// max over objectives of the upper model boundary at v.
double scalarized_value(const PointData& p, const Vec& v);

}  // namespace imo
