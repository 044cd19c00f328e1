#include <doctest.h>

#include <cmath>

#include "imo/errors.hpp"
#include "imo/rng.hpp"
#include "imo/solver.hpp"

using namespace imo;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("armijo accepts the full step on the reference iterations") {
  const ProblemDef bk1 = get_problem("I-BK1");
  SolverParams params;
  {
    auto [t, b] = armijo_step(bk1, vec2(9.9862, -7.4332), vec2(-1.6621, 2.4866),
                              -3.920429, params);
    CHECK(t == 1.0);
    CHECK(b == 0);
  }
  {
    auto [t, b] = armijo_step(bk1, vec2(8.3241, -4.9466), vec2(-1.1080, 1.9893),
                              -2.347010, params);
    CHECK(t == 1.0);
    CHECK(b == 0);
  }
}

TEST_CASE("armijo backtracks on an overlong step, cross-checked by scanning") {
  // single objective x^4 from x = 10 with a deliberately overlong direction
  ProblemDef p;
  p.name = "quartic";
  p.m = 1;
  p.n = 1;
  p.lb = vec1(-20);
  p.ub = vec1(20);
  p.objectives = {Ivm::combination(
      1, {{Interval(1, 1), sf_pow(sf_coordinate(1, 0), 4)}})};

  const Vec x = vec1(10.0);
  const Vec v = vec1(-25.0);  // full step overshoots to -15
  const double xi = -100.0;
  SolverParams params;
  auto [t, b] = armijo_step(p, x, v, xi, params);
  CHECK(t > 0);
  CHECK(t < 1.0);
  CHECK(t == doctest::Approx(std::pow(params.eta, b)));

  // exhaustive scan for the first acceptable backtrack count
  const Interval g0 = p.objectives[0].value(x);
  int expected_b = -1;
  for (int bb = 0; bb <= 40; ++bb) {
    const double tt = std::pow(params.eta, bb);
    const Interval g1 = p.objectives[0].value(x + tt * v);
    const double slack = params.sigma * tt * xi;
    if (g1.lo() <= g0.lo() + slack && g1.hi() <= g0.hi() + slack) {
      expected_b = bb;
      break;
    }
  }
  CHECK(b == expected_b);
}

TEST_CASE("solve reproduces the reference trajectory on I-BK1") {
  const ProblemDef bk1 = get_problem("I-BK1");
  SolverParams params;
  const SolveReport rep = solve(bk1, vec2(9.9862, -7.4332), params);
  CHECK(rep.status == SolveStatus::Critical);
  CHECK(rep.iterations() >= 9);
  CHECK(rep.iterations() <= 15);
  CHECK(std::abs(rep.final_x[0] - 3.914930) <= 5e-3);
  CHECK(std::abs(rep.final_x[1] - 1.428474) <= 5e-3);
  const double final_xi = rep.iterates.back().xi;
  CHECK(final_xi > -1e-6);
  CHECK(final_xi <= 0.0);

  // iteration-1 and iteration-2 records match the reference values
  CHECK(rep.iterates[0].v[0] == doctest::Approx(-1.6621).epsilon(1e-3));
  CHECK(rep.iterates[0].v[1] == doctest::Approx(2.4866).epsilon(1e-3));
  CHECK(rep.iterates[0].xi == doctest::Approx(-3.920429).epsilon(1e-3));
  CHECK(rep.iterates[0].t == 1.0);
  CHECK(rep.iterates[1].x[0] == doctest::Approx(8.324133).epsilon(1e-3));
  CHECK(rep.iterates[1].xi == doctest::Approx(-2.347010).epsilon(1e-3));
}

TEST_CASE("solve on the portfolio problem") {
  const ProblemDef p = portfolio_problem();
  SolverParams params;
  const SolveReport rep = solve(p, vec1(0.75), params);
  CHECK(rep.status == SolveStatus::Critical);
  CHECK(std::abs(rep.final_x[0] - 0.6) <= 1e-4);
}

TEST_CASE("starting at the minimizer stops immediately") {
  ProblemDef p;
  p.name = "bowl";
  p.m = 1;
  p.n = 2;
  p.lb = vec2(-5, -5);
  p.ub = vec2(5, 5);
  p.objectives = {Ivm::combination(
      2, {{Interval(1, 1),
           sf_shifted_square(2, 0, 0) + sf_shifted_square(2, 1, 0)}})};
  const SolveReport rep = solve(p, vec2(0, 0), SolverParams{});
  CHECK(rep.status == SolveStatus::Critical);
  CHECK(rep.iterations() == 0);
  CHECK(rep.iterates.size() == 1);
}

TEST_CASE("monotone descent and exact step bookkeeping") {
  const ProblemDef bk1 = get_problem("I-BK1");
  SolverParams params;
  const SolveReport rep = solve(bk1, vec2(7.5, 9.5), params);
  CHECK(rep.status == SolveStatus::Critical);
  for (size_t k = 0; k + 1 < rep.iterates.size(); ++k) {
    const IterateRecord& a = rep.iterates[k];
    const IterateRecord& b = rep.iterates[k + 1];
    CHECK(a.t == std::pow(params.eta, a.backtracks));
    CHECK(a.t > 0);
    CHECK(a.t <= 1.0);
    for (size_t i = 0; i < a.G_values.size(); ++i) {
      const double slack = params.sigma * a.t * a.xi;
      CHECK(b.G_values[i].lo() <= a.G_values[i].lo() + slack + 1e-12);
      CHECK(b.G_values[i].hi() <= a.G_values[i].hi() + slack + 1e-12);
      const DominanceRelation rel = compare(b.G_values[i], a.G_values[i]);
      CHECK((rel == DominanceRelation::StrictlyDominates ||
             rel == DominanceRelation::Equal));
    }
    CHECK(b.in_level_set);
  }
  CHECK(rep.iterates.back().xi > -params.eps);
}

TEST_CASE("solve is deterministic") {
  const ProblemDef bk1 = get_problem("I-BK1");
  SolverParams params;
  const SolveReport a = solve(bk1, vec2(9.9862, -7.4332), params);
  const SolveReport b = solve(bk1, vec2(9.9862, -7.4332), params);
  CHECK(a.iterates.size() == b.iterates.size());
  for (size_t k = 0; k < a.iterates.size(); ++k) {
    CHECK(a.iterates[k].x == b.iterates[k].x);
    CHECK(a.iterates[k].xi == b.iterates[k].xi);
    CHECK(a.iterates[k].t == b.iterates[k].t);
  }
}

TEST_CASE("parameter validation and dimension checks") {
  SolverParams bad;
  bad.eta = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SolverParams{};
  bad.sigma = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SolverParams{};
  bad.eps = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(solve(get_problem("I-BK1"), vec1(0), SolverParams{}),
                  std::invalid_argument);
}

TEST_CASE("evaluation failures carry iterate context") {
  ProblemDef p;
  p.name = "inverse";
  p.m = 1;
  p.n = 1;
  p.lb = vec1(-1);
  p.ub = vec1(1);
  p.objectives = {
      Ivm::combination(1, {{Interval(1, 2), sf_reciprocal_coord(1, 0)}})};
  try {
    solve(p, vec1(0.0), SolverParams{});
    FAIL("expected an EvalError");
  } catch (const EvalError& e) {
    const std::string what = e.what();
    CHECK(what.find("inverse") != std::string::npos);
    CHECK(what.find("iteration 0") != std::string::npos);
  }
}

TEST_CASE("x0 outside the box is recorded, not rejected") {
  const ProblemDef bk1 = get_problem("I-BK1");
  const SolveReport rep = solve(bk1, vec2(14.0, -12.0), SolverParams{});
  CHECK(rep.iterates.front().left_box);
  CHECK(rep.status == SolveStatus::Critical);
}

TEST_CASE("iteration cap yields MaxIterations with the full history") {
  const ProblemDef bk1 = get_problem("I-BK1");
  SolverParams params;
  params.max_iters = 2;
  const SolveReport rep = solve(bk1, vec2(9.9862, -7.4332), params);
  CHECK(rep.status == SolveStatus::MaxIterations);
  CHECK(rep.iterations() == 2);
  CHECK(rep.iterates.size() == 3);
}

TEST_CASE("criticality certificates") {
  const ProblemDef bk1 = get_problem("I-BK1");
  const CriticalityCertificate at_start =
      criticality_certificate(bk1, vec2(9.9862, -7.4332), 1e-6);
  CHECK(!at_start.is_critical);
  CHECK(at_start.xi == doctest::Approx(-3.920429).epsilon(1e-3));

  const CriticalityCertificate at_star =
      criticality_certificate(bk1, vec2(3.914930, 1.428474), 1e-6);
  CHECK(at_star.is_critical);

  ProblemDef bowl;
  bowl.name = "bowl";
  bowl.m = 1;
  bowl.n = 2;
  bowl.lb = vec2(-1, -1);
  bowl.ub = vec2(1, 1);
  bowl.objectives = {Ivm::combination(
      2, {{Interval(1, 2),
           sf_shifted_square(2, 0, 0) + sf_shifted_square(2, 1, 0)}})};
  const CriticalityCertificate origin = criticality_certificate(bowl, vec2(0, 0), 1e-6);
  CHECK(origin.is_critical);
  CHECK(origin.xi == doctest::Approx(0.0));
}

TEST_CASE("scaling invariance: identity, diagonal, and rejection") {
  const ProblemDef bk1 = get_problem("I-BK1");
  const Vec x0 = vec2(9.9862, -7.4332);
  CHECK(check_scaling_invariance(bk1, x0, Mat::Identity(2, 2)) <= 1e-6);

  Mat T = Mat::Zero(2, 2);
  T(0, 0) = 2.0;
  T(1, 1) = 0.5;
  CHECK(check_scaling_invariance(bk1, x0, T) <= 1e-5);

  const ProblemDef vu2 = get_problem("I-VU2");
  SplitMix64 rng(606);
  for (int k = 0; k < 3; ++k) {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = std::exp(rng.uniform(-1.5, 1.5));
    D(1, 1) = std::exp(rng.uniform(-1.5, 1.5));
    CHECK(check_scaling_invariance(vu2, vec2(1, 1), D) <= 1e-5);
  }

  Mat singularish = Mat::Identity(2, 2);
  singularish(1, 1) = 1e-12;
  CHECK_THROWS_AS(check_scaling_invariance(bk1, x0, singularish),
                  std::invalid_argument);
}

TEST_CASE("mutual nondominance matrix") {
  const ProblemDef bk1 = get_problem("I-BK1");
  const std::vector<Vec> single{vec2(1, 1)};
  const auto self = mutual_nondominance(bk1, single);
  CHECK(self[0][0] == DominanceRelation::Equal);

  // the origin minimizes the first objective and strictly improves both
  // objectives over its reflection
  const std::vector<Vec> pair{vec2(0, 0), vec2(-1, -1)};
  const auto rel = mutual_nondominance(bk1, pair);
  CHECK(rel[0][1] == DominanceRelation::StrictlyDominates);
  CHECK(rel[1][0] == DominanceRelation::StrictlyDominatedBy);

  const std::vector<Vec> incomp{vec2(3.914930, 1.428474), vec2(2.954564, 2.903207)};
  const auto rel2 = mutual_nondominance(bk1, incomp);
  CHECK(rel2[0][1] == DominanceRelation::Incomparable);
}

TEST_CASE("report serialization round trip fields") {
  const ProblemDef bk1 = get_problem("I-BK1");
  const SolveReport rep = solve(bk1, vec2(9.9862, -7.4332), SolverParams{});
  const std::string js = to_json(rep);
  CHECK(js.find("\"problem\":\"I-BK1\"") != std::string::npos);
  CHECK(js.find("\"status\":\"Critical\"") != std::string::npos);
  CHECK(js.find("\"iterates\":[") != std::string::npos);
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("k,x1,x2,G1_lo,G1_hi,G2_lo,G2_hi,xi,t\n", 0) == 0);
  // header + one line per iterate
  const size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == rep.iterates.size() + 1);
}
