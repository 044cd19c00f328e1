#include "imo/problems.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "imo/errors.hpp"
#include "imo/rng.hpp"

namespace imo {

std::vector<Interval> ProblemDef::evaluate(const Vec& x) const {
  std::vector<Interval> out;
  out.reserve(objectives.size());
  for (const Ivm& g : objectives) out.push_back(g.value(x));
  return out;
}

namespace {

using Term = Ivm::Term;

Interval C(double lo, double hi) { return Interval(lo, hi); }

// Shorthands bound to a fixed dimension while assembling one problem.
struct Builder {
  int n;

  ScalarField cst(double c = 1.0) const { return sf_constant(n, c); }
  ScalarField x(int r) const { return sf_coordinate(n, r); }
  ScalarField sq(int r, double c = 0.0) const { return sf_shifted_square(n, r, c); }
  ScalarField inv(int r) const { return sf_reciprocal_coord(n, r); }
  ScalarField lin(std::initializer_list<double> w, double c) const {
    Vec wv(n);
    int k = 0;
    for (double wi : w) wv[k++] = wi;
    return sf_affine(n, wv, c);
  }
  // exp(scale * (-(x_r1-c1)^2 - (x_r2-c2)^2 - ...))
  ScalarField gauss(double scale,
                    std::initializer_list<std::pair<int, double>> centers) const {
    ScalarField s = sf_constant(n, 0.0);
    for (const auto& [r, c] : centers) s = s + sq(r, c);
    return sf_exp(sf_scale(-scale, s));
  }
};

Ivm combo(int n, std::vector<Term> terms) {
  return Ivm::combination(n, std::move(terms));
}

ProblemDef bk1() {
  Builder b{2};
  ProblemDef p{"I-BK1", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -10, -10;
  p.ub << 10, 10;
  p.objectives = {
      combo(2, {{C(0.1, 0.2), b.sq(0)}, {C(0.1, 0.3), b.sq(1)}}),
      combo(2, {{C(0.1, 0.3), b.sq(0, 5)}, {C(0.1, 0.5), b.sq(1, 5)}})};
  return p;
}

ProblemDef vu2() {
  Builder b{2};
  ProblemDef p{"I-VU2", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -4, -4;
  p.ub << 4, 4;
  p.objectives = {
      combo(2, {{C(1, 1.5), b.x(0)}, {C(1, 1.5), b.x(1)}, {C(1, 1), b.cst()}}),
      combo(2, {{C(1, 1.5), b.sq(0)}, {C(2, 3), b.sq(1)}, {C(-1, -1), b.cst()}})};
  return p;
}

ProblemDef ch() {
  Builder b{2};
  ProblemDef p{"I-CH", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -5, -4;
  p.ub << 5, 4;
  p.objectives = {
      combo(2, {{C(1, 1), b.sq(0, 1) + b.sq(1, 2)}, {C(-1, 1), b.cst()}}),
      combo(2, {{C(2, 3), b.sq(0) + sf_scale(-1, b.x(1))}, {C(-2, 2), b.cst()}})};
  return p;
}

ProblemDef fon() {
  Builder b{2};
  const double r = std::sqrt(0.5);
  ProblemDef p{"I-FON", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -2, -2;
  p.ub << 2, 2;
  p.objectives = {
      combo(2, {{C(1, 1), b.cst()}, {C(-3, -1), b.gauss(1, {{0, r}, {1, r}})}}),
      combo(2, {{C(1, 1), b.cst()}, {C(-5, -1), b.gauss(1, {{0, -r}, {1, -r}})}})};
  return p;
}

ProblemDef kw2() {
  Builder b{2};
  ProblemDef p{"I-KW2", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -3, -1;
  p.ub << 0, 2;
  ScalarField g1a = sf_pow(b.lin({-1, 0}, 1), 2) * b.gauss(1, {{0, 0}, {1, -1}});
  ScalarField g1b = (sf_scale(0.2, b.x(0)) + sf_scale(-1, sf_pow(b.x(0), 3)) +
                     sf_scale(-1, sf_pow(b.x(1), 5))) *
                    b.gauss(1, {{0, 0}, {1, 0}});
  ScalarField g1c = b.gauss(1, {{0, -2}, {1, 0}});
  ScalarField g2a = sf_pow(b.lin({0, 1}, 1), 2) *
                    sf_exp(sf_scale(-1, b.sq(1) + b.sq(1, 1)));
  ScalarField g2b = (sf_scale(-0.2, b.x(1)) + sf_pow(b.x(1), 3) +
                     sf_pow(b.x(0), 5)) *
                    b.gauss(1, {{0, 0}, {1, 0}});
  ScalarField g2c = b.gauss(1, {{1, 2}, {0, 0}});
  p.objectives = {combo(2, {{C(-5, -3), g1a},
                            {C(10, 10), g1b},
                            {C(3, 5), g1c},
                            {C(-0.5, -0.5), b.lin({2, 1}, 0)}}),
                  combo(2, {{C(-5, -3), g2a}, {C(10, 10), g2b}, {C(3, 5), g2c}})};
  return p;
}

ProblemDef far1() {
  Builder b{2};
  ProblemDef p{"I-Far1", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -1, -1;
  p.ub << 1, 1;
  p.objectives = {
      combo(2, {{C(-2, -1), b.gauss(15, {{0, 0.1}, {1, 0}})},
                {C(-2, -1), b.gauss(20, {{0, 0.6}, {1, 0.6}})},
                {C(1, 3), b.gauss(20, {{0, -0.6}, {1, 0.6}})},
                {C(1, 2), b.gauss(20, {{0, 0.6}, {1, -0.6}})},
                {C(1, 2), b.gauss(20, {{0, -0.6}, {1, -0.6}})}}),
      combo(2, {{C(2, 4), b.gauss(20, {{0, 0}, {1, 0}})},
                {C(1, 2), b.gauss(20, {{0, 0.4}, {1, 0.6}})},
                {C(-2, -1), b.gauss(20, {{0, -0.5}, {1, 0.7}})},
                {C(-2, -1), b.gauss(20, {{0, 0.5}, {1, -0.7}})},
                {C(1, 5), b.gauss(20, {{0, -0.4}, {1, -0.8}})}})};
  return p;
}

ProblemDef hil1() {
  Builder b{2};
  const double tp = 2.0 * M_PI;
  ProblemDef p{"I-Hil1", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -1, -1;
  p.ub << 1, 1;
  ScalarField amp = b.cst() + sf_scale(0.5, sf_cos(sf_scale(tp, b.x(0))));
  auto angle = [&]() {
    return sf_scale(tp / 360.0,
                    b.cst(45.0) + sf_scale(40, sf_sin(sf_scale(tp, b.x(0)))) +
                        sf_scale(25, sf_sin(sf_scale(tp, b.x(1)))));
  };
  p.objectives = {combo(2, {{C(1, 2), amp * sf_cos(angle())}}),
                  combo(2, {{C(1, 3), amp * sf_sin(angle())}})};
  return p;
}

ProblemDef pnr() {
  Builder b{2};
  ProblemDef p{"I-PNR", 2, 2, Vec(2), Vec(2), {}};
  p.lb << -2, -2;
  p.ub << 2, 2;
  p.objectives = {
      combo(2, {{C(1, 1.5), sf_pow(b.x(0), 4) + sf_pow(b.x(1), 4)},
                {C(1, 2.6), b.sq(0) + b.sq(1)},
                {C(10, 10), b.x(0) * b.x(1)},
                {C(0.25, 0.25), b.x(0)},
                {C(20, 24), b.cst()}}),
      combo(2, {{C(1, 2), b.sq(0, 1)}, {C(1, 1.5), b.sq(1)}, {C(0, 2), b.cst()}})};
  return p;
}

ProblemDef deb() {
  Builder b{2};
  ProblemDef p{"I-Deb", 2, 2, Vec(2), Vec(2), {}};
  p.lb << 1, -1;
  p.ub << 3, 1;
  ScalarField spike_a =
      sf_exp(sf_scale(-1.0 / (0.004 * 0.004), b.sq(1, 0.2)));
  ScalarField spike_b = sf_exp(sf_scale(-1.0 / (0.4 * 0.4), b.sq(1, 0.6)));
  p.objectives = {
      combo(2, {{C(1, 2), b.x(0)}}),
      combo(2, {{C(2, 2), b.inv(0)},
                {C(-3, -1), spike_a * b.inv(0)},
                {C(-1.5, -0.8), spike_b * b.inv(0)}})};
  return p;
}

ProblemDef sd() {
  Builder b{4};
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  ProblemDef p{"I-SD", 2, 4, Vec(4), Vec(4), {}};
  p.lb << 1, s2, s2, 1;
  p.ub << 6, 6, 6, 6;
  p.objectives = {
      combo(4, {{C(2, 3), b.x(0)},
                {C(s2, s3), b.x(1)},
                {C(s2, s3), b.x(2)},
                {C(1, 3), b.x(3)}}),
      combo(4, {{C(2, 3), b.inv(0)},
                {C(2 * s2, 3 * s3), b.inv(1)},
                {C(2 * s2, 3 * s3), b.inv(2)},
                {C(2, 3), b.inv(3)}})};
  return p;
}

ProblemDef ikk1() {
  Builder b{2};
  ProblemDef p{"I-IKK1", 3, 2, Vec(2), Vec(2), {}};
  p.lb << -50, -50;
  p.ub << 50, 50;
  p.objectives = {
      combo(2, {{C(1, 1), b.sq(0)}, {C(0, 1), b.sq(1)}}),
      combo(2, {{C(1, 1), b.sq(0, 20)}, {C(0, 1), b.sq(1, 20)}}),
      combo(2, {{C(0, 1), b.sq(0)}, {C(1, 1), b.sq(1)}})};
  return p;
}

ProblemDef vfm1() {
  Builder b{2};
  ProblemDef p{"I-VFM1", 3, 2, Vec(2), Vec(2), {}};
  p.lb << -2, -2;
  p.ub << 2, 2;
  p.objectives = {
      combo(2, {{C(1, 2), b.sq(0)}, {C(1, 3), b.sq(1, 1)}}),
      combo(2, {{C(1, 3), b.sq(0)}, {C(1, 2), b.sq(1, -1)}, {C(1, 1), b.cst()}}),
      combo(2, {{C(1, 2), b.sq(0, 1)}, {C(1, 5), b.sq(1)}, {C(2, 2), b.cst()}})};
  return p;
}

ProblemDef mhhm2() {
  Builder b{2};
  ProblemDef p{"I-MHHM2", 3, 2, Vec(2), Vec(2), {}};
  p.lb << 0, 0;
  p.ub << 1, 1;
  p.objectives = {
      combo(2, {{C(2, 3), b.sq(0, 0.8)}, {C(1, 2), b.sq(1, 0.6)}}),
      combo(2, {{C(1, 2), b.sq(0, 0.85)}, {C(1, 1.5), b.sq(1, 0.7)}}),
      combo(2, {{C(2, 2.5), b.sq(0, 0.9)}, {C(1, 1.2), b.sq(1, 0.6)}})};
  return p;
}

ProblemDef viennet() {
  Builder b{2};
  ProblemDef p{"I-Viennet", 3, 2, Vec(2), Vec(2), {}};
  p.lb << -3, -3;
  p.ub << 3, 3;
  ScalarField r2 = b.sq(0) + b.sq(1);
  p.objectives = {
      combo(2, {{C(0.5, 1), r2}, {C(1, 2), sf_sin(r2)}}),
      combo(2, {{C(1.0 / 8, 1.0 / 4), sf_pow(b.lin({3, -2}, 4), 2)},
                {C(1.0 / 27, 1.0 / 9), sf_pow(b.lin({1, -1}, 1), 2)},
                {C(15, 16), b.cst()}}),
      combo(2, {{C(0.25, 0.5), sf_reciprocal(r2 + b.cst())},
                {C(-1.1, -0.9), b.gauss(1, {{0, 0}, {1, 0}})}})};
  return p;
}

ProblemDef ap1() {
  Builder b{2};
  ProblemDef p{"I-AP1", 3, 2, Vec(2), Vec(2), {}};
  p.lb << -100, -100;
  p.ub << 100, 100;
  p.objectives = {
      combo(2, {{C(0.25, 0.5),
                 sf_pow(b.lin({1, 0}, -1), 4) +
                     sf_scale(2, sf_pow(b.lin({0, 1}, -2), 4))}}),
      combo(2, {{C(1, 2), sf_exp(b.lin({0.5, 0.5}, 0))},
                {C(1, 1.5), b.sq(0) + b.sq(1)}}),
      combo(2, {{C(1.0 / 3, 0.5),
                 sf_exp(b.lin({-1, 0}, 0)) +
                     sf_scale(2, sf_exp(b.lin({0, -1}, 0)))}})};
  return p;
}

ProblemDef mop7() {
  Builder b{2};
  ProblemDef p{"I-MOP7", 3, 2, Vec(2), Vec(2), {}};
  p.lb << -400, -400;
  p.ub << 400, 400;
  p.objectives = {
      combo(2, {{C(0.25, 0.5), b.sq(0, 2)},
                {C(1.0 / 26, 1.0 / 13), b.sq(1, -1)},
                {C(2, 3), b.cst()}}),
      combo(2, {{C(1.0 / 9, 0.25), sf_pow(b.lin({1, 1}, -3), 2)},
                {C(1.0 / 16, 1.0 / 8), sf_pow(b.lin({-1, 1}, 2), 2)},
                {C(-20, -17), b.cst()}}),
      combo(2, {{C(1.0 / 25, 1.0 / 7), sf_pow(b.lin({1, 2}, -1), 2)},
                {C(1.0 / 34, 1.0 / 17), sf_pow(b.lin({-1, 2}, 0), 2)},
                {C(-15, -13), b.cst()}})};
  return p;
}

ProblemDef vfm2() {
  Builder b{3};
  ProblemDef p{"I-VFM2", 3, 3, Vec(3), Vec(3), {}};
  p.lb << -5, -5, -5;
  p.ub << 10, 10, 10;
  p.objectives = {
      combo(3, {{C(0.1, 0.2), b.sq(0)},
                {C(0.1, 0.3), b.sq(1)},
                {C(0.1, 0.2), b.sq(2)}}),
      combo(3, {{C(0.1, 0.3), b.sq(0, 5)},
                {C(0.1, 0.5), b.sq(1, 5)},
                {C(0.1, 0.4), b.sq(2, 5)}}),
      combo(3, {{C(0.1, 0.2), b.sq(0)},
                {C(-0.3, -0.1), b.sq(1)},
                {C(0.1, 0.2), b.sq(2)}})};
  return p;
}

ProblemDef tr1() {
  Builder b{3};
  ProblemDef p{"I-TR1", 3, 3, Vec(3), Vec(3), {}};
  p.lb << 1, 1, 1;
  p.ub << 4, 4, 4;
  auto cube = [&](int r) { return sf_pow(b.x(r), 3); };
  ScalarField p1 = cube(0) + b.sq(0) * b.lin({0, 1, 1}, 1) + cube(1) + cube(2);
  ScalarField p2 = cube(0) + sf_scale(2, cube(1)) +
                   b.sq(1) * b.lin({1, 0, 1}, 2) + cube(2);
  ScalarField p3 = cube(0) + cube(1) + sf_scale(3, cube(2)) +
                   b.sq(2) * b.lin({1, 1, 0}, 3);
  p.objectives = {combo(3, {{C(15, 30), b.cst()}, {C(-0.3, -0.1), p1}}),
                  combo(3, {{C(25, 45), b.cst()}, {C(-0.2, -0.1), p2}}),
                  combo(3, {{C(30, 60), b.cst()}, {C(-0.3, -0.1), p3}})};
  return p;
}

ProblemDef ap4() {
  Builder b{3};
  ProblemDef p{"I-AP4", 3, 3, Vec(3), Vec(3), {}};
  p.lb << -100, -100, -100;
  p.ub << 100, 100, 100;
  p.objectives = {
      combo(3, {{C(1.0 / 9, 1.0 / 3),
                 sf_pow(b.lin({1, 0, 0}, -1), 4) +
                     sf_scale(2, sf_pow(b.lin({0, 1, 0}, -2), 4)) +
                     sf_scale(3, sf_pow(b.lin({0, 0, 1}, -3), 4))}}),
      combo(3, {{C(2, 3), sf_exp(b.lin({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0))},
                {C(2, 5), b.sq(0) + b.sq(1) + b.sq(2)}}),
      combo(3, {{C(0.25, 1.0 / 3),
                 sf_scale(3, sf_exp(b.lin({-1, 0, 0}, 0))) +
                     sf_scale(4, sf_exp(b.lin({0, -1, 0}, 0))) +
                     sf_scale(3, sf_exp(b.lin({0, 0, -1}, 0)))}})};
  return p;
}

ProblemDef comet() {
  Builder b{3};
  ProblemDef p{"I-Comet", 3, 3, Vec(3), Vec(3), {}};
  p.lb << 1, -2, 0;
  p.ub << 3.5, 2, 1;
  ScalarField onez = b.lin({0, 0, 1}, 1);  // 1 + x3
  ScalarField core = sf_pow(b.x(0), 3) * b.sq(1);
  p.objectives = {
      combo(3, {{C(1, 1.5), onez * (core + b.lin({-10, -4, 0}, 0))}}),
      combo(3, {{C(1, 1.5), onez * (core + b.lin({-10, 4, 0}, 0))}}),
      combo(3, {{C(0.2, 1), onez * b.sq(0)}})};
  return p;
}

ProblemDef portfolio() {
  Builder b{1};
  ProblemDef p{"portfolio", 2, 1, Vec(1), Vec(1), {}};
  p.lb << 0;
  p.ub << 1;
  // [3x-6, 2x-4] encoded as [-3,-2].(2-x): single term, exact for x < 2,
  // with per-term gH-gradient [2,3] matching the boundary derivatives.
  p.objectives = {
      combo(1, {{C(-3, -2), b.lin({-1}, 2)}}),
      combo(1, {{C(1, 1), sf_scale(5, b.sq(0)) + b.lin({-6}, 2)},
                {C(0, 1), b.cst()}})};
  return p;
}

using Factory = ProblemDef (*)();

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> reg = {
      {"I-BK1", bk1},        {"I-VU2", vu2},     {"I-CH", ch},
      {"I-FON", fon},        {"I-KW2", kw2},     {"I-Far1", far1},
      {"I-Hil1", hil1},      {"I-PNR", pnr},     {"I-Deb", deb},
      {"I-SD", sd},          {"I-IKK1", ikk1},   {"I-VFM1", vfm1},
      {"I-MHHM2", mhhm2},    {"I-Viennet", viennet}, {"I-AP1", ap1},
      {"I-MOP7", mop7},      {"I-VFM2", vfm2},   {"I-TR1", tr1},
      {"I-AP4", ap4},        {"I-Comet", comet}, {"portfolio", portfolio},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

ProblemDef get_problem(const std::string& name) {
  for (const auto& [key, make] : registry())
    if (key == name) return make();
  std::ostringstream os;
  os << "unknown problem '" << name << "'; valid names:";
  for (const auto& [key, _] : registry()) os << " " << key;
  throw std::out_of_range(os.str());
}

ProblemDef portfolio_problem() { return portfolio(); }

namespace {

// Minimizes a smooth 1-D function by golden-section search.
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

WeightedSumSolution bk1_weighted_solution(double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("bk1_weighted_solution: alpha outside [0,1]");
  WeightedSumSolution sol;
  sol.alpha = alpha;
  sol.x.resize(2);
  sol.x[0] = 2.1667 * alpha / (0.3 + 0.13334 * alpha);
  sol.x[1] = 3.0 * alpha / (0.43334 + 0.16666 * alpha);

  // Independent check: the scalarized objective decouples per coordinate.
  auto f1 = [&](double x) {
    return (1 - alpha) * 0.15 * x * x + alpha * 0.21667 * (x - 5) * (x - 5);
  };
  auto f2 = [&](double x) {
    return (1 - alpha) * 0.21667 * x * x + alpha * 0.3 * (x - 5) * (x - 5);
  };
  const double n1 = golden_min(f1, -1.0, 6.0);
  const double n2 = golden_min(f2, -1.0, 6.0);
  if (std::abs(n1 - sol.x[0]) > 1e-4 || std::abs(n2 - sol.x[1]) > 1e-4)
    throw std::logic_error("bk1_weighted_solution: closed form and numeric "
                           "minimization disagree");

  const ProblemDef p = bk1();
  const std::vector<Interval> g = p.evaluate(sol.x);
  sol.G = {g[0], g[1]};
  return sol;
}

RegionSamples sample_feasible_region(const ProblemDef& problem, int count,
                                     uint64_t seed) {
  if (count < 1)
    throw std::invalid_argument("sample_feasible_region: count must be >= 1");
  RegionSamples out;
  SplitMix64 rng = run_stream(seed, problem.name, 0);
  for (int k = 0; k < count; ++k) {
    Vec x(problem.n);
    for (int j = 0; j < problem.n; ++j)
      x[j] = rng.uniform(problem.lb[j], problem.ub[j]);
    try {
      out.values.push_back(problem.evaluate(x));
      out.points.push_back(std::move(x));
    } catch (const EvalError&) {
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace imo
