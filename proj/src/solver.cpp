#include "imo/solver.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <sstream>

#include "imo/errors.hpp"

namespace imo {

const char* to_string(DirectionKind k) {
  return k == DirectionKind::Newton ? "newton" : "steepest";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Critical: return "Critical";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::LineSearchFailed: return "LineSearchFailed";
  }
  return "?";
}

void SolverParams::validate() const {
  if (!(eta > 0 && eta < 1)) throw std::invalid_argument("params: eta outside (0,1)");
  if (!(sigma > 0 && sigma < 1))
    throw std::invalid_argument("params: sigma outside (0,1)");
  if (!(eps > 0)) throw std::invalid_argument("params: eps must be positive");
  if (max_iters < 0) throw std::invalid_argument("params: max_iters negative");
}

std::pair<double, int> armijo_step(const ProblemDef& problem, const Vec& x,
                                   const Vec& v, double xi,
                                   const SolverParams& params) {
  const std::vector<Interval> gx = problem.evaluate(x);
  double t = 1.0;
  for (int b = 0; b <= params.min_step_backtracks; ++b) {
    bool ok = true;
    try {
      const std::vector<Interval> gn = problem.evaluate(x + t * v);
      for (size_t i = 0; i < gx.size(); ++i) {
        const double slack = params.sigma * t * xi;
        if (!(gn[i].lo() <= gx[i].lo() + slack &&
              gn[i].hi() <= gx[i].hi() + slack)) {
          ok = false;
          break;
        }
      }
    } catch (const EvalError&) {
      ok = false;  // ray left the domain; shrink
    }
    if (ok) return {t, b};
    t *= params.eta;
  }
  return {0.0, params.min_step_backtracks + 1};
}

namespace {

DirectionResult run_direction(const std::vector<Ivm>& objectives, const Vec& x,
                              const SolverParams& params) {
  const PointData pd = make_point_data(objectives, x);
  return params.direction_kind == DirectionKind::Newton
             ? newton_direction(pd, params.subproblem_tol)
             : steepest_direction(pd, params.subproblem_tol);
}

bool inside_box(const ProblemDef& p, const Vec& x) {
  for (int j = 0; j < p.n; ++j)
    if (x[j] < p.lb[j] || x[j] > p.ub[j]) return false;
  return true;
}

bool dominated_by(const std::vector<Interval>& a,
                  const std::vector<Interval>& b) {
  // every component of a is <= the corresponding component of b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].lo() > b[i].lo() || a[i].hi() > b[i].hi()) return false;
  return true;
}

}  // namespace

SolveReport solve(const ProblemDef& problem, const Vec& x0,
                  const SolverParams& params) {
  params.validate();
  if (x0.size() != problem.n)
    throw std::invalid_argument("solve: x0 dimension mismatch");

  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();

  SolveReport rep;
  rep.problem = problem.name;
  rep.params = params;
  rep.x0 = x0;

  Vec x = x0;
  std::vector<Interval> g0;
  double subproblem_seconds = 0.0;

  for (int k = 0; k <= params.max_iters; ++k) {
    IterateRecord rec;
    rec.k = k;
    rec.x = x;
    DirectionResult dir;
    try {
      rec.G_values = problem.evaluate(x);
      if (k == 0) g0 = rec.G_values;
      rec.left_box = !inside_box(problem, x);
      rec.in_level_set = dominated_by(rec.G_values, g0);

      const auto t_sub = clock::now();
      dir = run_direction(problem.objectives, x, params);
      subproblem_seconds +=
          std::chrono::duration<double>(clock::now() - t_sub).count();
    } catch (const EvalError& e) {
      throw EvalError(problem.name + " at iteration " + std::to_string(k) +
                      ": " + e.what());
    }
    rec.xi = dir.xi;
    rec.v = dir.v;
    rec.regularization_shift = dir.regularization_shift;

    if (dir.xi > -params.eps) {
      rep.iterates.push_back(std::move(rec));
      rep.status = SolveStatus::Critical;
      break;
    }
    if (k == params.max_iters) {
      rep.iterates.push_back(std::move(rec));
      rep.status = SolveStatus::MaxIterations;
      break;
    }

    auto [t, backtracks] = armijo_step(problem, x, dir.v, dir.xi, params);
    if (t == 0.0) {
      // Retry with a heavier Levenberg shift before giving up: on grossly
      // nonconvex spots the raw curvature can mislead the model into a
      // non-descent direction.
      bool rescued = false;
      for (double extra : {1e-2, 1.0, 1e2}) {
        const auto t_retry = clock::now();
        PointData pd = make_point_data(problem.objectives, x);
        for (auto& o : pd.objectives) {
          o.hess_lo.diagonal().array() += 2.0 * extra;
          o.hess_hi.diagonal().array() += 2.0 * extra;
        }
        DirectionResult retry =
            params.direction_kind == DirectionKind::Newton
                ? newton_direction(pd, params.subproblem_tol)
                : steepest_direction(pd, params.subproblem_tol);
        subproblem_seconds +=
            std::chrono::duration<double>(clock::now() - t_retry).count();
        if (retry.xi > -params.eps) continue;
        auto [tr, br] = armijo_step(problem, x, retry.v, retry.xi, params);
        if (tr > 0.0) {
          dir = retry;
          rec.xi = dir.xi;
          rec.v = dir.v;
          rec.regularization_shift = std::max(rec.regularization_shift, extra);
          t = tr;
          backtracks = br;
          rescued = true;
          break;
        }
      }
      if (!rescued) {
        rep.iterates.push_back(std::move(rec));
        rep.status = SolveStatus::LineSearchFailed;
        break;
      }
    }
    rec.t = t;
    rec.backtracks = backtracks;
    rep.iterates.push_back(std::move(rec));
    x = x + t * dir.v;
  }

  rep.final_x = rep.iterates.back().x;
  rep.subproblem_seconds = subproblem_seconds;
  rep.wall_seconds = std::chrono::duration<double>(clock::now() - t_start).count();
  return rep;
}

CriticalityCertificate criticality_certificate(const ProblemDef& problem,
                                               const Vec& x, double eps) {
  SolverParams params;
  const DirectionResult dir = run_direction(problem.objectives, x, params);
  return {dir.xi, dir.xi > -eps, dir.v};
}

double check_scaling_invariance(const ProblemDef& problem, const Vec& x,
                                const Mat& T) {
  const int n = problem.n;
  if (T.rows() != n || T.cols() != n)
    throw std::invalid_argument("scaling check: T has wrong shape");
  Eigen::JacobiSVD<Mat> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e8))
    throw std::invalid_argument("scaling check: T is ill-conditioned");
  const Mat Tinv = T.inverse();

  // Compose every basis function with T^{-1}.
  std::vector<Ivm> scaled;
  for (const Ivm& g : problem.objectives) {
    std::vector<Ivm::Term> terms;
    for (const Ivm::Term& t : g.terms()) {
      const ScalarField f = t.field;
      ScalarField composed{
          [f, Tinv](const Vec& y) { return f.eval(Tinv * y); },
          [f, Tinv](const Vec& y) { return Vec(Tinv.transpose() * f.grad(Tinv * y)); },
          [f, Tinv](const Vec& y) {
            return Mat(Tinv.transpose() * f.hess(Tinv * y) * Tinv);
          }};
      terms.push_back({t.coeff, std::move(composed)});
    }
    scaled.push_back(Ivm::combination(n, std::move(terms)));
  }

  const DirectionResult base = newton_direction(make_point_data(problem.objectives, x));
  const DirectionResult trans = newton_direction(make_point_data(scaled, T * x));
  return (trans.v - T * base.v).norm();
}

DominanceRelation compare_objective_vectors(const std::vector<Interval>& a,
                                            const std::vector<Interval>& b) {
  bool all_equal = true, a_below = true, b_below = true, all_strict_a = true,
       all_strict_b = true;
  for (size_t i = 0; i < a.size(); ++i) {
    const DominanceRelation r = compare(a[i], b[i]);
    if (r != DominanceRelation::Equal) all_equal = false;
    if (r != DominanceRelation::StrictlyDominates) all_strict_a = false;
    if (r != DominanceRelation::StrictlyDominatedBy) all_strict_b = false;
    if (r != DominanceRelation::Equal && r != DominanceRelation::StrictlyDominates)
      a_below = false;
    if (r != DominanceRelation::Equal && r != DominanceRelation::StrictlyDominatedBy)
      b_below = false;
  }
  if (all_equal) return DominanceRelation::Equal;
  if (all_strict_a) return DominanceRelation::StrictlyDominates;
  if (all_strict_b) return DominanceRelation::StrictlyDominatedBy;
  if (a_below) return DominanceRelation::Dominates;
  if (b_below) return DominanceRelation::DominatedBy;
  return DominanceRelation::Incomparable;
}

std::vector<std::vector<DominanceRelation>> mutual_nondominance(
    const ProblemDef& problem, const std::vector<Vec>& points) {
  std::vector<std::vector<Interval>> values;
  for (const Vec& x : points) values.push_back(problem.evaluate(x));
  const size_t n = points.size();
  std::vector<std::vector<DominanceRelation>> out(
      n, std::vector<DominanceRelation>(n, DominanceRelation::Equal));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      out[i][j] = compare_objective_vectors(values[i], values[j]);
  return out;
}

const char* to_string(DominanceRelation r) {
  switch (r) {
    case DominanceRelation::StrictlyDominates: return "StrictlyDominates";
    case DominanceRelation::Dominates: return "Dominates";
    case DominanceRelation::DominatedBy: return "DominatedBy";
    case DominanceRelation::StrictlyDominatedBy: return "StrictlyDominatedBy";
    case DominanceRelation::Equal: return "Equal";
    case DominanceRelation::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace {

void json_vec(std::ostringstream& os, const Vec& v) {
  os << "[";
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
}

}  // namespace

std::string to_json(const SolveReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"problem\":\"" << r.problem << "\",\"params\":{\"eta\":"
     << r.params.eta << ",\"sigma\":" << r.params.sigma
     << ",\"eps\":" << r.params.eps << ",\"max_iters\":" << r.params.max_iters
     << ",\"direction\":\"" << to_string(r.params.direction_kind) << "\"},";
  os << "\"x0\":";
  json_vec(os, r.x0);
  os << ",\"status\":\"" << to_string(r.status) << "\",\"final_x\":";
  json_vec(os, r.final_x);
  os << ",\"wall_seconds\":" << r.wall_seconds
     << ",\"subproblem_seconds\":" << r.subproblem_seconds << ",\"iterates\":[";
  for (size_t k = 0; k < r.iterates.size(); ++k) {
    const IterateRecord& it = r.iterates[k];
    if (k) os << ",";
    os << "{\"k\":" << it.k << ",\"x\":";
    json_vec(os, it.x);
    os << ",\"G\":[";
    for (size_t i = 0; i < it.G_values.size(); ++i)
      os << (i ? "," : "") << "[" << it.G_values[i].lo() << ","
         << it.G_values[i].hi() << "]";
    os << "],\"xi\":" << it.xi << ",\"v\":";
    json_vec(os, it.v);
    os << ",\"t\":" << it.t << ",\"backtracks\":" << it.backtracks
       << ",\"left_box\":" << (it.left_box ? "true" : "false")
       << ",\"in_level_set\":" << (it.in_level_set ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

std::string to_csv(const SolveReport& r) {
  std::ostringstream os;
  os.precision(12);
  const int n = static_cast<int>(r.x0.size());
  const int m = r.iterates.empty() ? 0 : static_cast<int>(r.iterates[0].G_values.size());
  os << "k";
  for (int j = 0; j < n; ++j) os << ",x" << (j + 1);
  for (int i = 0; i < m; ++i) os << ",G" << (i + 1) << "_lo,G" << (i + 1) << "_hi";
  os << ",xi,t\n";
  for (const IterateRecord& it : r.iterates) {
    os << it.k;
    for (int j = 0; j < n; ++j) os << "," << it.x[j];
    for (int i = 0; i < m; ++i)
      os << "," << it.G_values[i].lo() << "," << it.G_values[i].hi();
    os << "," << it.xi << "," << it.t << "\n";
  }
  return os.str();
}

}  // namespace imo
