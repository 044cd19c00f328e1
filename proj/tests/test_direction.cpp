#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "imo/direction.hpp"
#include "imo/problems.hpp"
#include "imo/rng.hpp"

using namespace imo;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

PointData bk1_at(const Vec& x) {
  return make_point_data(get_problem("I-BK1").objectives, x);
}

// Random subproblem data with positive definite midpoint blocks and
// entrywise-nonnegative width blocks (so the scalarized model is convex and
// the grid oracle finds the global optimum).
PointData random_point_data(SplitMix64& rng, int n, int m) {
  PointData p;
  p.x = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    PointData::Objective o;
    o.grad_lo.resize(n);
    o.grad_hi.resize(n);
    for (int j = 0; j < n; ++j) {
      const double a = rng.uniform(-3, 3);
      const double w = rng.uniform(0, 2);
      o.grad_lo[j] = a;
      o.grad_hi[j] = a + w;
    }
    Mat q(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) q(r, s) = rng.uniform(-1, 1);
    o.hess_lo = q.transpose() * q + 0.3 * Mat::Identity(n, n);
    Vec w(n);
    for (int j = 0; j < n; ++j) w[j] = rng.uniform(0, 1);
    o.hess_hi = o.hess_lo + w * w.transpose();
    p.objectives.push_back(std::move(o));
  }
  return p;
}

double oracle_radius(const PointData& p) {
  double r = 1.0;
  for (const auto& o : p.objectives) {
    Eigen::SelfAdjointEigenSolver<Mat> es(o.hess_lo + o.hess_hi,
                                          Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin > 1e-9)
      r = std::max(r, 2.0 / lmin * (o.grad_lo.norm() + o.grad_hi.norm()) + 1.0);
  }
  return r;
}

}  // namespace

TEST_CASE("eval_model basics") {
  const PointData p = bk1_at(vec2(9.9862, -7.4332));
  const ModelValue at_zero = eval_model(p, 0, Vec::Zero(2));
  CHECK(at_zero.lower == 0.0);
  CHECK(at_zero.upper == 0.0);

  // Upper model at the known solver direction equals the explicit expansion
  // mid'v + rad'|v| + quarter quadratic terms.
  const Vec v = vec2(-1.6621, 2.4866);
  const ModelValue mv = eval_model(p, 0, v);
  const double expect = 2.99586 * v[0] - 2.97328 * v[1] +
                        0.99862 * std::abs(v[0]) + 1.48664 * std::abs(v[1]) +
                        0.15 * v[0] * v[0] + 0.2 * v[1] * v[1] +
                        0.05 * v[0] * v[0] + 0.1 * v[1] * v[1];
  CHECK(mv.upper == doctest::Approx(expect).epsilon(1e-9));
  CHECK(mv.lower <= mv.upper);
}

TEST_CASE("degenerate intervals give the classical quadratic model") {
  SplitMix64 rng(404);
  for (int k = 0; k < 50; ++k) {
    PointData p;
    p.x = Vec::Zero(2);
    PointData::Objective o;
    o.grad_lo = vec2(rng.uniform(-2, 2), rng.uniform(-2, 2));
    o.grad_hi = o.grad_lo;
    Mat q(2, 2);
    q << rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
        rng.uniform(-1, 1);
    o.hess_lo = q.transpose() * q;
    o.hess_hi = o.hess_lo;
    p.objectives.push_back(o);
    const Vec v = vec2(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const ModelValue mv = eval_model(p, 0, v);
    const double classical =
        p.objectives[0].grad_lo.dot(v) + 0.5 * v.dot(p.objectives[0].hess_lo * v);
    CHECK(mv.lower == doctest::Approx(classical).epsilon(1e-12));
    CHECK(mv.upper == doctest::Approx(classical).epsilon(1e-12));
  }
}

TEST_CASE("scalarized value at the reference directions") {
  const PointData p0 = bk1_at(vec2(9.9862, -7.4332));
  CHECK(scalarized_value(p0, Vec::Zero(2)) == 0.0);
  CHECK(scalarized_value(p0, vec2(-1.6621, 2.4866)) ==
        doctest::Approx(-3.920429).epsilon(1e-3));
  const PointData p1 = bk1_at(vec2(8.3241, -4.9466));
  CHECK(scalarized_value(p1, vec2(-1.1080, 1.9893)) ==
        doctest::Approx(-2.347010).epsilon(1e-3));
}

TEST_CASE("newton direction reproduces the reference subproblem solutions") {
  const DirectionResult r0 = newton_direction(bk1_at(vec2(9.9862, -7.4332)));
  CHECK(r0.status == DirectionStatus::Converged);
  CHECK(r0.v[0] == doctest::Approx(-1.6621).epsilon(1e-3));
  CHECK(r0.v[1] == doctest::Approx(2.4866).epsilon(1e-3));
  CHECK(r0.xi == doctest::Approx(-3.920429).epsilon(1e-3));
  CHECK(r0.kkt_residual <= 1e-8);
  CHECK(r0.barrier_newton_iterations <= 200);

  const DirectionResult r1 = newton_direction(bk1_at(vec2(8.3241, -4.9466)));
  CHECK(r1.v[0] == doctest::Approx(-1.1080).epsilon(1e-3));
  CHECK(r1.v[1] == doctest::Approx(1.9893).epsilon(1e-3));
  CHECK(r1.xi == doctest::Approx(-2.347010).epsilon(1e-3));
}

TEST_CASE("zero gradients give the zero direction") {
  PointData p;
  p.x = Vec::Zero(2);
  PointData::Objective o;
  o.grad_lo = Vec::Zero(2);
  o.grad_hi = Vec::Zero(2);
  o.hess_lo = Mat::Identity(2, 2);
  o.hess_hi = 2 * Mat::Identity(2, 2);
  p.objectives.push_back(o);
  const DirectionResult r = newton_direction(p);
  CHECK(r.v.norm() <= 1e-6);
  CHECK(r.xi == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("reformulation optimum: u matches |v| and tau matches xi") {
  SplitMix64 rng(808);
  for (int k = 0; k < 20; ++k) {
    const PointData p = random_point_data(rng, 2, 2);
    const DirectionResult r = newton_direction(p, 1e-8);
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(r.u[j] - std::abs(r.v[j])) <= 1e-4);
    CHECK(std::abs(scalarized_value(p, r.v) - r.xi) <= 1e-7);
    CHECK(std::abs(r.tau - r.xi) <= 1e-4 * (1 + std::abs(r.xi)));
    CHECK(r.xi <= 1e-12);
  }
}

TEST_CASE("direction norm bound from the smallest midpoint eigenvalue") {
  SplitMix64 rng(909);
  for (int k = 0; k < 30; ++k) {
    const PointData p = random_point_data(rng, 2, 2);
    const DirectionResult r = newton_direction(p);
    for (const auto& o : p.objectives) {
      Eigen::SelfAdjointEigenSolver<Mat> es(o.hess_lo + o.hess_hi,
                                            Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      if (lmin <= 1e-9) continue;
      CHECK(r.v.norm() <=
            2.0 / lmin * (o.grad_lo.norm() + o.grad_hi.norm()) + 1e-6);
    }
  }
}

TEST_CASE("first-order part is positively homogeneous") {
  SplitMix64 rng(333);
  for (int k = 0; k < 100; ++k) {
    PointData p = random_point_data(rng, 2, 2);
    for (auto& o : p.objectives) {
      o.hess_lo.setZero();
      o.hess_hi.setZero();
    }
    const Vec v = vec2(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double theta = rng.uniform(0.1, 5.0);
    CHECK(scalarized_value(p, theta * v) ==
          doctest::Approx(theta * scalarized_value(p, v)).epsilon(1e-9));
  }
}

TEST_CASE("oracle agrees with the interior point solver") {
  SplitMix64 rng(1234);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + int(rng.next() % 2);
    const PointData p = random_point_data(rng, n, 1 + int(rng.next() % 2));
    const DirectionResult newton = newton_direction(p);
    const DirectionResult oracle = oracle_direction(p, oracle_radius(p), 33);
    CHECK(std::abs(newton.xi - oracle.xi) <= 1e-3);
    // the oracle never beats the exact solver by more than its tolerance
    CHECK(oracle.xi >= newton.xi - 1e-4);
  }
}

TEST_CASE("single objective in one variable matches a plain grid scan") {
  SplitMix64 rng(555);
  for (int k = 0; k < 5; ++k) {
    const PointData p = random_point_data(rng, 1, 1);
    const DirectionResult newton = newton_direction(p);
    // brute scan of the scalarized model over [-10, 10] with step 1e-4
    double best = scalarized_value(p, Vec::Zero(1));
    Vec v(1);
    for (double t = -10.0; t <= 10.0; t += 1e-4) {
      v[0] = t;
      best = std::min(best, scalarized_value(p, v));
    }
    CHECK(std::abs(newton.xi - best) <= 1e-3);
  }
}

TEST_CASE("oracle reproduces the reference subproblem value") {
  const DirectionResult r =
      oracle_direction(bk1_at(vec2(9.9862, -7.4332)), 10.0, 41);
  CHECK(r.xi == doctest::Approx(-3.920429).epsilon(1e-3));
}

TEST_CASE("oracle on a zero-gradient instance and dimension guard") {
  PointData p;
  p.x = Vec::Zero(2);
  PointData::Objective o;
  o.grad_lo = Vec::Zero(2);
  o.grad_hi = Vec::Zero(2);
  o.hess_lo = Mat::Identity(2, 2);
  o.hess_hi = Mat::Identity(2, 2);
  p.objectives.push_back(o);
  const DirectionResult r = oracle_direction(p, 5.0, 21);
  CHECK(r.xi == doctest::Approx(0.0));
  CHECK(r.v.norm() <= 1e-6);

  PointData big;
  big.x = Vec::Zero(4);
  big.objectives.push_back(
      {Vec::Zero(4), Vec::Zero(4), Mat::Identity(4, 4), Mat::Identity(4, 4)});
  CHECK_THROWS_AS(oracle_direction(big, 1.0, 11), std::invalid_argument);
}

TEST_CASE("steepest direction") {
  // degenerate single objective: v = -g
  PointData p;
  p.x = Vec::Zero(2);
  PointData::Objective o;
  o.grad_lo = vec2(1.2, -0.7);
  o.grad_hi = o.grad_lo;
  o.hess_lo = Mat::Zero(2, 2);
  o.hess_hi = Mat::Zero(2, 2);
  p.objectives.push_back(o);
  const DirectionResult r = steepest_direction(p);
  CHECK(r.v[0] == doctest::Approx(-1.2).epsilon(1e-5));
  CHECK(r.v[1] == doctest::Approx(0.7).epsilon(1e-5));

  // zero gradients: zero direction, zero value
  PointData z;
  z.x = Vec::Zero(2);
  z.objectives.push_back(
      {Vec::Zero(2), Vec::Zero(2), Mat::Zero(2, 2), Mat::Zero(2, 2)});
  const DirectionResult rz = steepest_direction(z);
  CHECK(rz.v.norm() <= 1e-7);
  CHECK(rz.xi == doctest::Approx(0.0));

  // descent certificate on the corpus start: first-order parts all negative
  const PointData pb = bk1_at(vec2(9.9862, -7.4332));
  const DirectionResult rb = steepest_direction(pb);
  CHECK(rb.xi < 0);
  for (int i = 0; i < pb.num_objectives(); ++i) {
    const auto& ob = pb.objectives[i];
    const double first_order =
        0.5 * (ob.grad_lo + ob.grad_hi).dot(rb.v) +
        0.5 * (ob.grad_hi - ob.grad_lo).dot(rb.v.cwiseAbs());
    CHECK(first_order < 0);
  }
}

TEST_CASE("xi is never positive, across random and corpus data") {
  SplitMix64 rng(777);
  for (int k = 0; k < 50; ++k) {
    const PointData p = random_point_data(rng, 1 + int(rng.next() % 3),
                                          1 + int(rng.next() % 3));
    CHECK(newton_direction(p).xi <= 1e-12);
    CHECK(steepest_direction(p).xi <= 1e-12);
  }
}

TEST_CASE("direction result serializes to json") {
  const DirectionResult r = newton_direction(bk1_at(vec2(9.9862, -7.4332)));
  const std::string js = to_json(r);
  CHECK(js.find("\"v\":[") != std::string::npos);
  CHECK(js.find("\"xi\":") != std::string::npos);
  CHECK(js.find("\"kkt_residual\":") != std::string::npos);
  CHECK(js.find("\"regularization_shift\":") != std::string::npos);
}
