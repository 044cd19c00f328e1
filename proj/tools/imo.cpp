#include <CLI11.hpp>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "imo/bench.hpp"
#include "imo/emit.hpp"
#include "imo/problems.hpp"
#include "imo/rng.hpp"
#include "imo/solver.hpp"
#include "imo/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string problem;
  std::vector<std::string> problems;
  std::string x0_text;
  uint64_t seed = 42;
  double eta = 0.5;
  double sigma = 0.001;
  double eps = 1e-6;
  int max_iters = 500;
  int runs = 100;
  int jobs = 0;
  std::string out_dir = "./imo-out";
  std::string format = "all";
  std::string config_path;

  bool wants(const std::string& f) const { return format == "all" || format == f; }
};

imo::Vec parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad vector entry: " + tok);
    vals.push_back(v);
  }
  imo::Vec x(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) x[i] = vals[i];
  return x;
}

// Config file supplies defaults; explicitly passed flags win.
void apply_config(CLI::App& app, CLI::App* sub, Options& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + opt.config_path);
  json cfg = json::parse(in);
  auto find_option = [&](const char* flag) -> const CLI::Option* {
    if (sub)
      if (const CLI::Option* o = sub->get_option_no_throw(flag)) return o;
    return app.get_option_no_throw(flag);
  };
  auto take = [&](const char* flag, const char* key, auto& slot) {
    const CLI::Option* o = find_option(flag);
    const bool passed = o && o->count() > 0;
    if (!passed && cfg.contains(key)) slot = cfg.at(key).get<std::decay_t<decltype(slot)>>();
  };
  take("--problem", "problem", opt.problem);
  take("--x0", "x0", opt.x0_text);
  take("--seed", "seed", opt.seed);
  take("--eta", "eta", opt.eta);
  take("--sigma", "sigma", opt.sigma);
  take("--eps", "eps", opt.eps);
  take("--max-iters", "max_iters", opt.max_iters);
  take("--runs", "runs", opt.runs);
  take("--jobs", "jobs", opt.jobs);
  take("--out-dir", "out_dir", opt.out_dir);
  take("--format", "format", opt.format);
  if (cfg.contains("problems")) {
    const CLI::Option* o = find_option("--problems");
    if (!o || o->count() == 0)
      opt.problems = cfg.at("problems").get<std::vector<std::string>>();
  }
}

imo::SolverParams make_params(const Options& opt) {
  imo::SolverParams p;
  p.eta = opt.eta;
  p.sigma = opt.sigma;
  p.eps = opt.eps;
  p.max_iters = opt.max_iters;
  return p;
}

void print_iterate_table(const imo::SolveReport& rep) {
  std::vector<std::array<std::string, 4>> rows;
  size_t xw = 1;
  for (const imo::IterateRecord& it : rep.iterates) {
    std::ostringstream xs;
    xs.precision(6);
    xs << std::fixed << "(";
    for (int j = 0; j < it.x.size(); ++j) xs << (j ? ", " : "") << it.x[j];
    xs << ")";
    std::ostringstream gs;
    gs.precision(6);
    gs << std::fixed;
    for (size_t i = 0; i < it.G_values.size(); ++i)
      gs << (i ? " " : "") << "[" << it.G_values[i].lo() << ","
         << it.G_values[i].hi() << "]";
    std::ostringstream xi;
    xi.precision(6);
    xi << std::scientific << it.xi;
    rows.push_back({xs.str(), xi.str(),
                    it.t > 0 ? std::to_string(it.t).substr(0, 6) : "-",
                    gs.str()});
    xw = std::max(xw, rows.back()[0].size());
  }
  std::cout << std::left << std::setw(5) << "k" << std::setw(int(xw) + 2) << "x"
            << std::setw(15) << "xi" << std::setw(8) << "t" << "G(x)\n";
  for (size_t k = 0; k < rows.size(); ++k)
    std::cout << std::left << std::setw(5) << rep.iterates[k].k
              << std::setw(int(xw) + 2) << rows[k][0] << std::setw(15)
              << rows[k][1] << std::setw(8) << rows[k][2] << rows[k][3] << "\n";
}

int cmd_solve(const Options& opt) {
  const imo::ProblemDef problem = imo::get_problem(opt.problem);
  imo::Vec x0;
  if (!opt.x0_text.empty()) {
    x0 = parse_vector(opt.x0_text);
    if (x0.size() != problem.n)
      throw CLI::ValidationError("--x0", "expected " + std::to_string(problem.n) +
                                             " components");
  } else {
    imo::SplitMix64 rng = imo::run_stream(opt.seed, problem.name, 0);
    x0.resize(problem.n);
    for (int j = 0; j < problem.n; ++j)
      x0[j] = rng.uniform(problem.lb[j], problem.ub[j]);
  }
  const imo::SolveReport rep = imo::solve(problem, x0, make_params(opt));
  print_iterate_table(rep);
  std::cout << "status: " << to_string(rep.status) << ", " << rep.iterations()
            << " iterations, final x = (";
  for (int j = 0; j < rep.final_x.size(); ++j)
    std::cout << (j ? ", " : "") << rep.final_x[j];
  std::cout << ")\n";
  if (problem.name == "portfolio")
    std::cout << "weights: (" << rep.final_x[0] << ", " << 1 - rep.final_x[0]
              << ")\n";

  const fs::path dir(opt.out_dir);
  if (opt.wants("json"))
    imo::emit::write_file(dir / (problem.name + "_solve.json"), to_json(rep));
  if (opt.wants("csv"))
    imo::emit::write_file(dir / (problem.name + "_solve.csv"), to_csv(rep));
  if (opt.wants("svg") && problem.m == 2) {
    const imo::RegionSamples region =
        imo::sample_feasible_region(problem, 2000, opt.seed);
    imo::emit::write_file(dir / (problem.name + "_rectangles.svg"),
                          imo::emit::iterate_rectangles_svg(rep, &region));
  }
  switch (rep.status) {
    case imo::SolveStatus::Critical: return 0;
    case imo::SolveStatus::MaxIterations: return 2;
    case imo::SolveStatus::LineSearchFailed: return 3;
  }
  return 1;
}

imo::CampaignSpec make_spec(const Options& opt, bool both_solvers) {
  imo::CampaignSpec spec;
  spec.problems = opt.problems;
  if (spec.problems.empty()) {
    for (const std::string& name : imo::problem_names())
      if (name != "portfolio") spec.problems.push_back(name);
  }
  if (both_solvers)
    spec.solvers = {imo::DirectionKind::Newton, imo::DirectionKind::SteepestDescent};
  spec.runs_per_problem = opt.runs;
  spec.seed = opt.seed;
  spec.params = make_params(opt);
  spec.jobs = opt.jobs;
  return spec;
}

int cmd_bench(const Options& opt) {
  const imo::CampaignSpec spec = make_spec(opt, false);
  const std::vector<imo::RunRecord> records = imo::run_campaign(spec);
  const std::string stats = imo::emit::stats_table_csv(records);
  std::cout << stats;
  const fs::path dir(opt.out_dir);
  if (opt.wants("csv")) {
    imo::emit::write_file(dir / "bench_records.csv",
                          imo::emit::run_records_csv(records));
    imo::emit::write_file(dir / "bench_stats.csv", stats);
  }
  if (opt.wants("json"))
    imo::emit::write_file(dir / "bench_campaign.json",
                          imo::emit::campaign_json(spec, records));
  return 0;
}

int cmd_profile(const Options& opt) {
  const imo::CampaignSpec spec = make_spec(opt, true);
  const std::vector<imo::RunRecord> records = imo::run_campaign(spec);
  const fs::path dir(opt.out_dir);
  if (opt.wants("csv"))
    imo::emit::write_file(dir / "profile_records.csv",
                          imo::emit::run_records_csv(records));
  if (opt.wants("json"))
    imo::emit::write_file(dir / "profile_campaign.json",
                          imo::emit::campaign_json(spec, records));
  for (imo::Metric metric : {imo::Metric::Iterations, imo::Metric::CpuSeconds}) {
    const imo::ProfileResult prof = imo::performance_profile(records, metric);
    const std::string tag =
        metric == imo::Metric::Iterations ? "iterations" : "cpu";
    if (opt.wants("csv"))
      imo::emit::write_file(dir / ("profile_" + tag + ".csv"),
                            imo::emit::profile_csv(prof));
    if (opt.wants("svg"))
      imo::emit::write_file(dir / ("profile_" + tag + ".svg"),
                            imo::emit::profile_svg(prof));
    if (prof.excluded_problems > 0)
      std::cerr << "warning: " << prof.excluded_problems
                << " problems excluded from the " << tag << " profile\n";
  }
  std::cout << "profiles written to " << dir.string() << "\n";
  return 0;
}

int print_report(const imo::VerificationReport& rep) {
  for (const imo::VerificationCheck& c : rep.checks)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << c.detail << ")\n";
  std::cout << (rep.all_pass() ? "all checks passed" : "verification FAILED")
            << "\n";
  return rep.all_pass() ? 0 : 4;
}

int cmd_verify(const Options&) { return print_report(imo::verify_bk1_weighted_sum()); }

int cmd_portfolio(const Options&) { return print_report(imo::verify_portfolio()); }

int cmd_list(const Options&) {
  std::cout << imo::emit::problem_catalogue_json() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-type solver for multiobjective interval optimization"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  if (const char* env = std::getenv("IMO_SEED")) opt.seed = std::strtoull(env, nullptr, 10);

  app.add_option("--seed", opt.seed, "RNG seed (IMO_SEED overrides the default)");
  app.add_option("--eta", opt.eta, "step length reduction factor");
  app.add_option("--sigma", opt.sigma, "line search parameter");
  app.add_option("--eps", opt.eps, "stopping tolerance");
  app.add_option("--max-iters", opt.max_iters, "iteration cap");
  app.add_option("--out-dir", opt.out_dir, "output directory");
  app.add_option("--format", opt.format, "restrict written outputs (csv|json|svg|all)")
      ->check(CLI::IsMember({"csv", "json", "svg", "all"}));
  app.add_option("--config", opt.config_path, "JSON config file (flags win)");

  CLI::App* solve = app.add_subcommand("solve", "run the solver on one problem");
  solve->add_option("--problem", opt.problem, "problem name")->required();
  solve->add_option("--x0", opt.x0_text, "comma-separated start point");

  CLI::App* bench = app.add_subcommand("bench", "multi-start campaign statistics");
  bench->add_option("--problems", opt.problems, "problem subset");
  bench->add_option("--runs", opt.runs, "starts per problem");
  bench->add_option("--jobs", opt.jobs, "parallel workers (0 = all cores)");

  CLI::App* profile =
      app.add_subcommand("profile", "performance profiles, both solvers");
  profile->add_option("--problems", opt.problems, "problem subset");
  profile->add_option("--runs", opt.runs, "starts per problem");
  profile->add_option("--jobs", opt.jobs, "parallel workers (0 = all cores)");

  app.add_subcommand("verify", "weighted-sum verification checks");
  app.add_subcommand("portfolio", "portfolio verification runs");
  app.add_subcommand("list", "machine-readable problem catalogue");

  try {
    app.parse(argc, argv);
    CLI::App* active = nullptr;
    for (CLI::App* s : app.get_subcommands()) active = s;
    apply_config(app, active, opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (profile->parsed()) return cmd_profile(opt);
    if (app.get_subcommand("verify")->parsed()) return cmd_verify(opt);
    if (app.get_subcommand("portfolio")->parsed()) return cmd_portfolio(opt);
    if (app.get_subcommand("list")->parsed()) return cmd_list(opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
