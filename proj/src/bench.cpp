#include "imo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "imo/rng.hpp"

namespace imo {

const char* to_string(Metric m) {
  return m == Metric::Iterations ? "iterations" : "cpu_seconds";
}

std::vector<RunRecord> run_campaign(const CampaignSpec& spec) {
  if (spec.problems.empty())
    throw std::invalid_argument("campaign: no problems given");
  if (spec.runs_per_problem < 1)
    throw std::invalid_argument("campaign: runs_per_problem must be >= 1");
  spec.params.validate();

  struct Task {
    ProblemDef problem;
    int run_index;
  };
  std::vector<Task> tasks;
  for (const std::string& name : spec.problems) {
    const ProblemDef p = get_problem(name);
    for (int r = 0; r < spec.runs_per_problem; ++r) tasks.push_back({p, r});
  }

  const int per_task = static_cast<int>(spec.solvers.size());
  std::vector<RunRecord> records(tasks.size() * per_task);

  auto run_task = [&](size_t ti) {
    const Task& task = tasks[ti];
    SplitMix64 rng = run_stream(spec.seed, task.problem.name,
                                static_cast<uint64_t>(task.run_index));
    Vec x0(task.problem.n);
    for (int j = 0; j < task.problem.n; ++j)
      x0[j] = rng.uniform(task.problem.lb[j], task.problem.ub[j]);
    for (int s = 0; s < per_task; ++s) {
      SolverParams params = spec.params;
      params.direction_kind = spec.solvers[s];
      RunRecord& rec = records[ti * per_task + s];
      rec.problem = task.problem.name;
      rec.solver = spec.solvers[s];
      rec.run_index = task.run_index;
      rec.x0 = x0;
      try {
        const SolveReport rep = solve(task.problem, x0, params);
        rec.iterations = rep.iterations();
        rec.cpu_seconds = rep.wall_seconds;
        rec.status = rep.status;
      } catch (const std::exception&) {
        rec.iterations = params.max_iters;
        rec.cpu_seconds = 0.0;
        rec.status = SolveStatus::LineSearchFailed;
      }
    }
  };

  int jobs = spec.jobs > 0 ? spec.jobs
                           : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (size_t ti = next.fetch_add(1); ti < tasks.size();
             ti = next.fetch_add(1))
          run_task(ti);
      });
    for (std::thread& th : pool) th.join();
  }
  return records;
}

SummaryStats summarize(const std::vector<RunRecord>& records, Metric metric) {
  if (records.empty()) throw std::invalid_argument("summarize: empty input");
  std::vector<double> xs;
  xs.reserve(records.size());
  for (const RunRecord& r : records)
    xs.push_back(metric == Metric::Iterations ? double(r.iterations)
                                              : r.cpu_seconds);
  std::sort(xs.begin(), xs.end());
  SummaryStats st;
  st.min = xs.front();
  st.max = xs.back();
  double sum = 0;
  for (double x : xs) sum += x;
  st.mean = sum / xs.size();
  st.median = xs.size() % 2 ? xs[xs.size() / 2]
                            : 0.5 * (xs[xs.size() / 2 - 1] + xs[xs.size() / 2]);
  // smallest most-frequent value; the input is sorted
  size_t best_count = 0, i = 0;
  while (i < xs.size()) {
    size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    if (j - i > best_count) {
      best_count = j - i;
      st.mode = xs[i];
    }
    i = j;
  }
  double ss = 0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  st.std_dev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
  return st;
}

ProfileResult performance_profile(const std::vector<RunRecord>& records,
                                  Metric metric, bool successful_only) {
  std::map<std::string, std::map<DirectionKind, std::pair<double, int>>> acc;
  std::map<DirectionKind, bool> solver_set;
  for (const RunRecord& r : records) {
    if (successful_only && r.status != SolveStatus::Critical) continue;
    auto& cell = acc[r.problem][r.solver];
    cell.first += metric == Metric::Iterations ? double(r.iterations)
                                               : r.cpu_seconds;
    cell.second += 1;
    solver_set[r.solver] = true;
  }
  if (solver_set.size() < 2)
    throw std::invalid_argument("performance_profile: need >= 2 solvers");

  ProfileResult out;
  std::map<DirectionKind, std::vector<double>> ratios;
  double zeta_max = 1.0;
  for (const auto& [problem, by_solver] : acc) {
    bool complete = true;
    for (const auto& [solver, _] : solver_set)
      if (!by_solver.count(solver) || by_solver.at(solver).second == 0)
        complete = false;
    if (!complete) {
      ++out.excluded_problems;
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    double best_positive = std::numeric_limits<double>::infinity();
    for (const auto& [solver, cell] : by_solver) {
      const double avg = cell.first / cell.second;
      best = std::min(best, avg);
      if (avg > 0) best_positive = std::min(best_positive, avg);
    }
    // A zero average (every start already critical) gets ratio 1; positive
    // averages are then compared against the best positive one.
    const double denom = best > 0 ? best : best_positive;
    for (const auto& [solver, cell] : by_solver) {
      const double avg = cell.first / cell.second;
      const double ratio = avg == 0.0 ? 1.0 : avg / denom;
      ratios[solver].push_back(ratio);
      zeta_max = std::max(zeta_max, ratio);
    }
  }
  const int np = ratios.empty() ? 0 : static_cast<int>(ratios.begin()->second.size());
  if (np == 0)
    throw std::invalid_argument("performance_profile: no complete problems");

  const int points = 200;
  for (auto& [solver, rs] : ratios) {
    ProfileCurve curve;
    curve.solver = solver;
    curve.metric = metric;
    std::sort(rs.begin(), rs.end());
    for (int k = 0; k < points; ++k) {
      const double z = 1.0 + (zeta_max - 1.0) * k / (points - 1);
      const auto it = std::upper_bound(rs.begin(), rs.end(), z);
      curve.zeta.push_back(z);
      curve.rho.push_back(double(it - rs.begin()) / np);
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

}  // namespace imo
