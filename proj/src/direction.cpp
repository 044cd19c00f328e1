#include "imo/direction.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imo/errors.hpp"

namespace imo {

const char* to_string(DirectionStatus s) {
  switch (s) {
    case DirectionStatus::Converged: return "Converged";
    case DirectionStatus::MaxIterations: return "MaxIterations";
    case DirectionStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

namespace {

// Subproblem data in epigraph form:
//   min tau  s.t.  a_i'v + b_i'u + v'A_i v + u'B_i u <= tau,  -u <= v <= u.
struct Blocks {
  std::vector<Vec> a, b;
  std::vector<Mat> A, B;
  std::vector<double> a_shift;  // Levenberg shift applied to A_i
  std::vector<double> b_shift;
  int n = 0;
  int m = 0;
};

double eig_min(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Smallest shift from the doubling ladder 1e-8, 2e-8, ... that makes the
// block pass the PSD check (eigenvalue tolerance 1e-10). The ladder is not
// capped: corpus problems violate definiteness by O(100) at some points and
// the solver must still produce a usable direction.
double psd_shift(const Mat& block) {
  const double lmin = eig_min(block);
  if (lmin >= -1e-10) return 0.0;
  double mu = 1e-8;
  while (lmin + mu < -1e-10) {
    mu *= 2.0;
    if (!std::isfinite(mu)) throw EvalError("direction: non-finite model");
  }
  return mu;
}

Blocks make_blocks(const PointData& p, bool identity_hessians) {
  Blocks bl;
  bl.n = p.dim();
  bl.m = p.num_objectives();
  for (const PointData::Objective& o : p.objectives) {
    bl.a.push_back(0.5 * (o.grad_lo + o.grad_hi));
    bl.b.push_back(0.5 * (o.grad_hi - o.grad_lo));
    if (identity_hessians) {
      bl.A.push_back(0.5 * Mat::Identity(bl.n, bl.n));
      bl.B.push_back(Mat::Zero(bl.n, bl.n));
      bl.a_shift.push_back(0.0);
      bl.b_shift.push_back(0.0);
    } else {
      Mat A = 0.25 * (o.hess_lo + o.hess_hi);
      Mat B = 0.25 * (o.hess_hi - o.hess_lo);
      const double sa = psd_shift(A);
      const double sb = psd_shift(B);
      if (sa > 0) A += sa * Mat::Identity(bl.n, bl.n);
      if (sb > 0) B += sb * Mat::Identity(bl.n, bl.n);
      bl.A.push_back(std::move(A));
      bl.B.push_back(std::move(B));
      bl.a_shift.push_back(sa);
      bl.b_shift.push_back(sb);
    }
  }
  return bl;
}

struct BarrierResult {
  Vec v, u;
  double tau = 0.0;
  double kkt = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Primal log-barrier interior point on the epigraph problem. Data arrives
// pre-scaled to O(1); u components that appear in no constraint term are
// eliminated (their optimum is |v_j| and the barrier would otherwise push
// them to infinity).
BarrierResult solve_barrier(const Blocks& bl, double tol, int max_iters) {
  const int n = bl.n, m = bl.m;
  std::vector<int> umap;  // active u dims -> z index offset
  for (int j = 0; j < n; ++j) {
    bool active = false;
    for (int i = 0; i < m; ++i)
      if (bl.b[i][j] > 0 || bl.B[i](j, j) > 0) active = true;
    if (active) umap.push_back(j);
  }
  const int na = static_cast<int>(umap.size());
  const int dim = n + na + 1;
  const int ncon = m + 2 * na;

  auto q = [&](int i, const Vec& v, const Vec& ua) {
    double val = bl.a[i].dot(v) + v.dot(bl.A[i] * v);
    for (int k = 0; k < na; ++k) {
      val += bl.b[i][umap[k]] * ua[k];
      for (int l = 0; l < na; ++l)
        val += bl.B[i](umap[k], umap[l]) * ua[k] * ua[l];
    }
    return val;
  };

  Vec z = Vec::Zero(dim);
  for (int k = 0; k < na; ++k) z[n + k] = 1.0;
  {
    Vec v0 = Vec::Zero(n), u0 = Vec::Ones(na);
    double t0 = 0.0;
    for (int i = 0; i < m; ++i) t0 = std::max(t0, q(i, v0, u0));
    z[dim - 1] = t0 + 1.0;
  }

  auto slacks_ok = [&](const Vec& zz, std::vector<double>* sq) {
    const Vec v = zz.head(n);
    const Vec ua = zz.segment(n, na);
    const double tau = zz[dim - 1];
    for (int i = 0; i < m; ++i) {
      const double s = tau - q(i, v, ua);
      if (s <= 0) return false;
      if (sq) (*sq)[i] = s;
    }
    for (int k = 0; k < na; ++k) {
      if (ua[k] - v[umap[k]] <= 0 || ua[k] + v[umap[k]] <= 0) return false;
    }
    return true;
  };

  auto barrier_value = [&](const Vec& zz, double mu) {
    std::vector<double> sq(m);
    if (!slacks_ok(zz, &sq)) return std::numeric_limits<double>::infinity();
    const Vec v = zz.head(n);
    const Vec ua = zz.segment(n, na);
    double val = zz[dim - 1];
    for (int i = 0; i < m; ++i) val -= mu * std::log(sq[i]);
    for (int k = 0; k < na; ++k) {
      val -= mu * std::log(ua[k] - v[umap[k]]);
      val -= mu * std::log(ua[k] + v[umap[k]]);
    }
    return val;
  };

  BarrierResult res;
  double mu = 1.0;
  const double mu_final = 0.5 * tol / std::max(1, ncon);
  int iters = 0;
  double last_decrement = std::numeric_limits<double>::infinity();
  bool out_of_budget = false;

  while (true) {
    const bool final_stage = mu <= mu_final;
    for (int inner = 0; inner < 50; ++inner) {
      if (iters >= max_iters) { out_of_budget = true; break; }
      const Vec v = z.head(n);
      const Vec ua = z.segment(n, na);
      const double tau = z[dim - 1];

      Vec g = Vec::Zero(dim);
      Mat H = Mat::Zero(dim, dim);
      g[dim - 1] = 1.0;
      for (int i = 0; i < m; ++i) {
        const double s = tau - q(i, v, ua);
        Vec gc = Vec::Zero(dim);  // gradient of the slack tau - q_i
        gc.head(n) = -(bl.a[i] + 2.0 * bl.A[i] * v);
        for (int k = 0; k < na; ++k) {
          double d = bl.b[i][umap[k]];
          for (int l = 0; l < na; ++l)
            d += 2.0 * bl.B[i](umap[k], umap[l]) * ua[l];
          gc[n + k] = -d;
        }
        gc[dim - 1] = 1.0;
        g -= (mu / s) * gc;
        H += (mu / (s * s)) * (gc * gc.transpose());
        H.topLeftCorner(n, n) += (2.0 * mu / s) * bl.A[i];
        for (int k = 0; k < na; ++k)
          for (int l = 0; l < na; ++l)
            H(n + k, n + l) += (2.0 * mu / s) * bl.B[i](umap[k], umap[l]);
      }
      for (int k = 0; k < na; ++k) {
        const int j = umap[k];
        const double sm = ua[k] - v[j];
        const double sp = ua[k] + v[j];
        // d(u_k - v_j): -1 on v_j, +1 on u_k ; d(u_k + v_j): +1 on both
        g[j] += mu / sm - mu / sp;
        g[n + k] += -mu / sm - mu / sp;
        H(j, j) += mu / (sm * sm) + mu / (sp * sp);
        H(n + k, n + k) += mu / (sm * sm) + mu / (sp * sp);
        H(j, n + k) += -mu / (sm * sm) + mu / (sp * sp);
        H(n + k, j) += -mu / (sm * sm) + mu / (sp * sp);
      }
      H.diagonal().array() += 1e-13 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
      Vec dz = Eigen::LDLT<Mat>(H).solve(-g);
      if (!dz.allFinite()) dz = -g;
      const double decrement = -g.dot(dz);
      last_decrement = decrement;
      const double inner_tol = final_stage ? 1e-2 * mu : 0.25 * mu;
      if (decrement * 0.5 <= inner_tol && inner > 0) break;

      double alpha = 1.0;
      const double b0 = barrier_value(z, mu);
      int halvings = 0;
      while (halvings < 70) {
        const Vec zn = z + alpha * dz;
        const double bn = barrier_value(zn, mu);
        if (bn <= b0 + 1e-4 * alpha * g.dot(dz)) break;
        alpha *= 0.5;
        ++halvings;
      }
      if (halvings >= 70) { iters++; break; }  // stalled at this stage
      z += alpha * dz;
      ++iters;
      if (decrement * 0.5 <= inner_tol) break;
    }
    if (out_of_budget || final_stage) break;
    mu = std::max(0.2 * mu, mu_final);
  }

  res.v = z.head(n);
  res.u = Vec::Zero(n);
  const Vec ua = z.segment(n, na);
  for (int j = 0; j < n; ++j) res.u[j] = std::abs(res.v[j]);
  for (int k = 0; k < na; ++k) res.u[umap[k]] = ua[k];
  res.tau = z[dim - 1];
  // Affine-invariant stationarity surrogate (half Newton decrement) plus the
  // central-path duality gap bound.
  res.kkt = std::max(0.5 * std::max(last_decrement, 0.0), mu * ncon);
  res.iterations = iters;
  res.converged = !out_of_budget && res.kkt <= tol;
  return res;
}

DirectionResult solve_direction(const PointData& p, double tol,
                                bool identity_hessians) {
  if (tol <= 0) throw std::invalid_argument("direction: tol must be positive");
  const int n = p.dim();
  DirectionResult out;
  out.v = Vec::Zero(n);
  out.u = Vec::Zero(n);

  Blocks bl;
  try {
    bl = make_blocks(p, identity_hessians);
  } catch (const EvalError&) {
    out.status = DirectionStatus::Infeasible;
    return out;
  }
  for (double s : bl.a_shift)
    out.regularization_shift = std::max(out.regularization_shift, s);
  for (double s : bl.b_shift)
    out.regularization_shift = std::max(out.regularization_shift, s);

  // Scale the model to O(1); v and u are unaffected, tau scales back.
  double gamma = 1.0;
  for (int i = 0; i < bl.m; ++i) {
    gamma = std::max({gamma, bl.a[i].cwiseAbs().maxCoeff(),
                      bl.b[i].cwiseAbs().maxCoeff(),
                      bl.A[i].cwiseAbs().maxCoeff(),
                      bl.B[i].cwiseAbs().maxCoeff()});
  }
  Blocks scaled = bl;
  for (int i = 0; i < bl.m; ++i) {
    scaled.a[i] /= gamma;
    scaled.b[i] /= gamma;
    scaled.A[i] /= gamma;
    scaled.B[i] /= gamma;
  }

  const BarrierResult br = solve_barrier(scaled, tol, 200);
  out.v = br.v;
  out.u = br.u;
  out.tau = br.tau * gamma;
  out.kkt_residual = br.kkt;
  out.barrier_newton_iterations = br.iterations;
  out.status = br.converged ? DirectionStatus::Converged
                            : DirectionStatus::MaxIterations;

  auto report_value = [&](const Vec& v) {
    if (!identity_hessians) return scalarized_value(p, v);
    double best = -std::numeric_limits<double>::infinity();
    const Vec av = v.cwiseAbs();
    for (int i = 0; i < bl.m; ++i)
      best = std::max(best, bl.a[i].dot(v) + bl.b[i].dot(av));
    return best + 0.5 * v.squaredNorm();
  };
  out.xi = report_value(out.v);
  // v = 0 is always feasible with value 0; never report worse than it.
  if (!(out.xi <= 0.0)) {
    out.v = Vec::Zero(n);
    out.u = Vec::Zero(n);
    out.xi = 0.0;
  }
  return out;
}

}  // namespace

DirectionResult newton_direction(const PointData& p, double tol) {
  return solve_direction(p, tol, false);
}

DirectionResult steepest_direction(const PointData& p, double tol) {
  return solve_direction(p, tol, true);
}

DirectionResult oracle_direction(const PointData& p, double radius, int grid) {
  const int n = p.dim();
  if (n > 3)
    throw std::invalid_argument("oracle_direction: supports n <= 3 only");
  if (grid < 2 || radius <= 0)
    throw std::invalid_argument("oracle_direction: bad radius/grid");

  Vec best = Vec::Zero(n);
  double best_val = scalarized_value(p, best);
  std::vector<int> idx(n, 0);
  const double step = 2.0 * radius / (grid - 1);
  while (true) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = -radius + idx[k] * step;
    const double val = scalarized_value(p, v);
    if (val < best_val) { best_val = val; best = v; }
    int k = 0;
    while (k < n && ++idx[k] == grid) idx[k++] = 0;
    if (k == n) break;
  }

  // Pattern-search polish. The scalarized model is convex but piecewise
  // quadratic; kink ridges stall sparse direction fans, so use a dense fan
  // and finish each accepted move with a golden-section line minimization.
  std::vector<Vec> dirs;
  if (n == 1) {
    Vec d(1);
    d << 1;
    dirs.push_back(d);
    dirs.push_back(-d);
  } else if (n == 2) {
    for (int k = 0; k < 64; ++k) {
      Vec d(2);
      const double ang = 2.0 * M_PI * k / 64;
      d << std::cos(ang), std::sin(ang);
      dirs.push_back(d);
    }
  } else {
    std::vector<int> d(n, -1);
    while (true) {
      Vec dir(n);
      bool nonzero = false;
      for (int k = 0; k < n; ++k) {
        dir[k] = d[k];
        if (d[k] != 0) nonzero = true;
      }
      if (nonzero) dirs.push_back(dir.normalized());
      int k = 0;
      while (k < n && ++d[k] == 2) d[k++] = -1;
      if (k == n) break;
    }
    uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto mix = [&state] {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return (state >> 11) * 0x1.0p-53;
    };
    for (int k = 0; k < 96; ++k) {
      Vec dir(n);
      for (int j = 0; j < n; ++j) dir[j] = 2.0 * mix() - 1.0;
      if (dir.norm() > 1e-9) dirs.push_back(dir.normalized());
    }
  }

  auto line_min = [&](const Vec& from, const Vec& dir, double s_hint) {
    // bracket by doubling, then golden section (convex along any ray)
    double s_hi = s_hint;
    double f0 = scalarized_value(p, from);
    while (scalarized_value(p, from + 2.0 * s_hi * dir) <
               scalarized_value(p, from + s_hi * dir) &&
           s_hi < 1e6)
      s_hi *= 2.0;
    double a = 0.0, b = 2.0 * s_hi;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = scalarized_value(p, from + c1 * dir);
    double f2 = scalarized_value(p, from + c2 * dir);
    for (int it = 0; it < 120 && (b - a) > 1e-12 * (1.0 + s_hint); ++it) {
      if (f1 < f2) {
        b = c2; c2 = c1; f2 = f1;
        c1 = b - gr * (b - a);
        f1 = scalarized_value(p, from + c1 * dir);
      } else {
        a = c1; c1 = c2; f1 = f2;
        c2 = a + gr * (b - a);
        f2 = scalarized_value(p, from + c2 * dir);
      }
    }
    const double s = 0.5 * (a + b);
    const double fs = scalarized_value(p, from + s * dir);
    return fs < f0 ? std::make_pair(s, fs) : std::make_pair(0.0, f0);
  };

  // Kink ridges where two objectives tie stall fixed fans; probe along the
  // numerically estimated tangent of the tie manifold as well.
  auto ridge_tangents = [&](const Vec& at) {
    std::vector<Vec> out;
    if (n < 2 || p.num_objectives() < 2) return out;
    int i0 = 0, i1 = -1;
    double u0 = -std::numeric_limits<double>::infinity(), u1 = u0;
    for (int i = 0; i < p.num_objectives(); ++i) {
      const double u = eval_model(p, i, at).upper;
      if (u > u0) {
        u1 = u0; i1 = i0;
        u0 = u; i0 = i;
      } else if (u > u1) {
        u1 = u; i1 = i;
      }
    }
    if (i1 < 0 || u0 - u1 > 1e-4 * (1.0 + std::abs(u0))) return out;
    const double e = 1e-6 * (1.0 + at.norm());
    Vec w(n);
    for (int j = 0; j < n; ++j) {
      Vec zp = at, zm = at;
      zp[j] += e;
      zm[j] -= e;
      w[j] = (eval_model(p, i0, zp).upper - eval_model(p, i1, zp).upper -
              eval_model(p, i0, zm).upper + eval_model(p, i1, zm).upper) /
             (2 * e);
    }
    if (w.norm() < 1e-12) return out;
    w.normalize();
    if (n == 2) {
      Vec t(2);
      t << -w[1], w[0];
      out.push_back(t);
      out.push_back(-t);
    } else {
      const Vec a = std::abs(w[0]) < 0.9 ? Vec(Vec::Unit(n, 0)) : Vec(Vec::Unit(n, 1));
      const Vec t1 = (a - w.dot(a) * w).normalized();
      Vec t2(3);
      t2 << w[1] * t1[2] - w[2] * t1[1], w[2] * t1[0] - w[0] * t1[2],
          w[0] * t1[1] - w[1] * t1[0];
      t2.normalize();
      for (const Vec& t : {t1, t2, Vec((t1 + t2).normalized()),
                           Vec((t1 - t2).normalized())}) {
        out.push_back(t);
        out.push_back(-t);
      }
    }
    return out;
  };

  double delta = step;
  while (delta > 1e-9 * std::max(1.0, radius)) {
    Vec chosen;
    bool have_dir = false;
    double best_probe = best_val;
    std::vector<Vec> adaptive = ridge_tangents(best);
    for (const Vec& dir : adaptive) {
      const double val = scalarized_value(p, best + delta * dir);
      if (val < best_probe - 1e-15) {
        best_probe = val;
        chosen = dir;
        have_dir = true;
      }
    }
    for (const Vec& dir : dirs) {
      const double val = scalarized_value(p, best + delta * dir);
      if (val < best_probe - 1e-15) {
        best_probe = val;
        chosen = dir;
        have_dir = true;
      }
    }
    if (have_dir) {
      const auto [s, fs] = line_min(best, chosen, delta);
      if (fs < best_val - 1e-15) {
        best = best + s * chosen;
        best_val = fs;
      } else {
        delta *= 0.5;
      }
    } else {
      delta *= 0.5;
    }
  }

  DirectionResult out;
  out.v = best;
  out.xi = best_val;
  out.u = best.cwiseAbs();
  out.tau = best_val;
  out.status = DirectionStatus::Converged;
  return out;
}

std::string to_json(const DirectionResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"v\":[";
  for (int i = 0; i < r.v.size(); ++i) os << (i ? "," : "") << r.v[i];
  os << "],\"xi\":" << r.xi << ",\"u\":[";
  for (int i = 0; i < r.u.size(); ++i) os << (i ? "," : "") << r.u[i];
  os << "],\"tau\":" << r.tau << ",\"status\":\"" << to_string(r.status)
     << "\",\"kkt_residual\":" << r.kkt_residual
     << ",\"regularization_shift\":" << r.regularization_shift << "}";
  return os.str();
}

}  // namespace imo
