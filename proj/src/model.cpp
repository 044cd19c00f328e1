#include "imo/model.hpp"

#include <limits>

#include "imo/errors.hpp"

namespace imo {

PointData make_point_data(const std::vector<Ivm>& objectives, const Vec& x) {
  PointData p;
  p.x = x;
  const int n = static_cast<int>(x.size());
  for (const Ivm& g : objectives) {
    const IntervalVector grad = g.gh_gradient(x);
    const IntervalMatrix hess = g.gh_hessian(x);
    PointData::Objective o;
    o.grad_lo.resize(n);
    o.grad_hi.resize(n);
    o.hess_lo.resize(n, n);
    o.hess_hi.resize(n, n);
    for (int r = 0; r < n; ++r) {
      o.grad_lo[r] = grad[r].lo();
      o.grad_hi[r] = grad[r].hi();
      for (int s = 0; s < n; ++s) {
        o.hess_lo(r, s) = hess(r, s).lo();
        o.hess_hi(r, s) = hess(r, s).hi();
      }
    }
    p.objectives.push_back(std::move(o));
  }
  return p;
}

ModelValue eval_model(const PointData& p, int objective, const Vec& v) {
  if (v.size() != p.x.size())
    throw EvalError("eval_model: direction dimension mismatch");
  const PointData::Objective& o = p.objectives.at(objective);
  const Vec av = v.cwiseAbs();
  const double mid = 0.5 * (o.grad_lo + o.grad_hi).dot(v);
  const double rad = 0.5 * (o.grad_hi - o.grad_lo).dot(av);
  const double qmid = 0.25 * v.dot((o.hess_lo + o.hess_hi) * v);
  const double qrad = 0.25 * av.dot((o.hess_hi - o.hess_lo) * av);
  return {mid - rad + qmid - qrad, mid + rad + qmid + qrad};
}

double scalarized_value(const PointData& p, const Vec& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.num_objectives(); ++i)
    best = std::max(best, eval_model(p, i, v).upper);
  return best;
}

}  // namespace imo
