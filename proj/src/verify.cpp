#include "imo/verify.hpp"

#include <cmath>
#include <sstream>

namespace imo {

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

}  // namespace

const std::vector<Bk1ReferenceRow>& bk1_reference_rows() {
  static const std::vector<Bk1ReferenceRow> rows = {
      {0.0, vec2(0.000000, 0.000000), {0.000000, 0.000000}, {5.000000, 20.000000}, false},
      {0.1, vec2(0.691498, 0.666658), {0.092260, 0.228963}, {3.734104, 14.957883}, false},
      {0.2, vec2(1.326546, 1.285699), {0.341274, 0.847851}, {2.729029, 10.946295}, false},
      {0.3, vec2(1.911783, 1.862051), {0.712214, 1.771153}, {1.938380, 7.784487}, false},
      {0.4, vec2(2.452849, 2.399981), {1.177638, 2.931263}, {1.324898, 5.326893}, false},
      {0.5, vec2(2.954564, 2.903207), {1.715805, 4.274473}, {0.858035, 3.453412}, false},
      {0.6, vec2(3.421069, 3.374983), {2.309422, 5.757895}, {0.513370, 2.068246}, false},
      {0.7, vec2(3.855945, 3.818168), {2.944672, 7.347185}, {0.270559, 1.091021}, false},
      // x2 of this row is inconsistent with the closed form (it repeats the
      // next row's value); its G entries do match the point as printed.
      {0.8, vec2(4.262305, 4.628566), {3.959086, 10.060535}, {0.068215, 0.232240}, true},
      {0.9, vec2(4.642862, 4.628566), {4.297979, 10.738321}, {0.026550, 0.107246}, false},
      {1.0, vec2(5.000069, 5.000000), {5.000069, 12.500138}, {0.000000, 0.000000}, false},
  };
  return rows;
}

VerificationReport verify_bk1_weighted_sum(double g_tol, double x_tol) {
  VerificationReport rep;
  const ProblemDef bk1 = get_problem("I-BK1");

  for (const Bk1ReferenceRow& row : bk1_reference_rows()) {
    // Closed form against the independent numeric minimizer (throws on
    // disagreement beyond 1e-4).
    VerificationCheck closed{"closed-form vs numeric, alpha=" + fmt(row.alpha)};
    WeightedSumSolution sol;
    try {
      sol = bk1_weighted_solution(row.alpha);
      closed.pass = true;
      closed.detail = "x = (" + fmt(sol.x[0]) + ", " + fmt(sol.x[1]) + ")";
    } catch (const std::logic_error& e) {
      closed.detail = e.what();
    }
    rep.checks.push_back(closed);

    VerificationCheck gv{"objective intervals at reference point, alpha=" +
                         fmt(row.alpha)};
    const std::vector<Interval> g = bk1.evaluate(row.x);
    const double dev =
        std::max({std::abs(g[0].lo() - row.g1.lo()), std::abs(g[0].hi() - row.g1.hi()),
                  std::abs(g[1].lo() - row.g2.lo()), std::abs(g[1].hi() - row.g2.hi())});
    gv.pass = dev <= g_tol;
    gv.detail = "max endpoint deviation " + fmt(dev);
    rep.checks.push_back(gv);

    if (closed.pass) {
      VerificationCheck xs{"closed-form x vs reference x, alpha=" + fmt(row.alpha)};
      const double d1 = std::abs(sol.x[0] - row.x[0]);
      const double d2 = std::abs(sol.x[1] - row.x[1]);
      if (row.x2_misprint) {
        xs.pass = d1 <= x_tol;
        xs.detail = "x1 dev " + fmt(d1) + "; x2 skipped (reference row " +
                    "inconsistent with closed form: " + fmt(sol.x[1]) +
                    " vs " + fmt(row.x[1]) + ")";
      } else {
        xs.pass = d1 <= x_tol && d2 <= x_tol;
        xs.detail = "dev (" + fmt(d1) + ", " + fmt(d2) + ")";
      }
      rep.checks.push_back(xs);
    }
  }

  // Newton run from the standard start; every reference point and the
  // returned point must be mutually nondominated.
  SolverParams params;
  const SolveReport run = solve(bk1, vec2(9.9862, -7.4332), params);
  VerificationCheck crit{"Newton run reaches a critical point"};
  crit.pass = run.status == SolveStatus::Critical;
  crit.detail = "status " + std::string(to_string(run.status)) + ", x = (" +
                fmt(run.final_x[0]) + ", " + fmt(run.final_x[1]) + ")";
  rep.checks.push_back(crit);

  std::vector<Vec> pts{run.final_x};
  for (const Bk1ReferenceRow& row : bk1_reference_rows()) pts.push_back(row.x);
  const auto rel = mutual_nondominance(bk1, pts);
  for (size_t i = 1; i < pts.size(); ++i) {
    VerificationCheck nd{"mutual nondominance vs alpha=" +
                         fmt(bk1_reference_rows()[i - 1].alpha)};
    nd.pass = rel[0][i] == DominanceRelation::Incomparable &&
              rel[i][0] == DominanceRelation::Incomparable;
    nd.detail = std::string(to_string(rel[0][i]));
    rep.checks.push_back(nd);
  }
  return rep;
}

VerificationReport verify_portfolio(double tol) {
  VerificationReport rep;
  const ProblemDef p = portfolio_problem();
  const double starts[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double expected[] = {0.0, 0.25, 0.5, 0.6, 0.6};
  SolverParams params;
  for (int i = 0; i < 5; ++i) {
    Vec x0(1);
    x0 << starts[i];
    const SolveReport run = solve(p, x0, params);
    const double w1 = run.final_x[0];
    VerificationCheck c{"portfolio start x1=" + fmt(starts[i])};
    c.pass = run.status == SolveStatus::Critical &&
             std::abs(w1 - expected[i]) <= tol;
    c.detail = "weights (" + fmt(w1) + ", " + fmt(1.0 - w1) + "), expected (" +
               fmt(expected[i]) + ", " + fmt(1.0 - expected[i]) + "), " +
               to_string(run.status) + ", " + std::to_string(run.iterations()) +
               " iterations";
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace imo
