#include "imo/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace imo {
namespace emit {

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string run_records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  int n = 0;
  for (const RunRecord& r : records) n = std::max<int>(n, int(r.x0.size()));
  os << "problem,solver,run_index";
  for (int j = 0; j < n; ++j) os << ",x0_" << (j + 1);
  os << ",iterations,cpu_seconds,status\n";
  for (const RunRecord& r : records) {
    os << r.problem << "," << to_string(r.solver) << "," << r.run_index;
    for (int j = 0; j < n; ++j)
      os << "," << (j < r.x0.size() ? num(r.x0[j]) : std::string());
    os << "," << r.iterations << "," << num(r.cpu_seconds) << ","
       << to_string(r.status) << "\n";
  }
  return os.str();
}

std::string campaign_json(const CampaignSpec& spec,
                          const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"spec\":{\"problems\":[";
  for (size_t i = 0; i < spec.problems.size(); ++i)
    os << (i ? "," : "") << "\"" << spec.problems[i] << "\"";
  os << "],\"solvers\":[";
  for (size_t i = 0; i < spec.solvers.size(); ++i)
    os << (i ? "," : "") << "\"" << to_string(spec.solvers[i]) << "\"";
  os << "],\"runs_per_problem\":" << spec.runs_per_problem
     << ",\"seed\":" << spec.seed << ",\"params\":{\"eta\":" << spec.params.eta
     << ",\"sigma\":" << spec.params.sigma << ",\"eps\":" << spec.params.eps
     << ",\"max_iters\":" << spec.params.max_iters << "}},\"records\":[";
  for (size_t i = 0; i < records.size(); ++i) {
    const RunRecord& r = records[i];
    if (i) os << ",";
    os << "{\"problem\":\"" << r.problem << "\",\"solver\":\""
       << to_string(r.solver) << "\",\"run_index\":" << r.run_index
       << ",\"x0\":[";
    for (int j = 0; j < r.x0.size(); ++j) os << (j ? "," : "") << r.x0[j];
    os << "],\"iterations\":" << r.iterations
       << ",\"cpu_seconds\":" << r.cpu_seconds << ",\"status\":\""
       << to_string(r.status) << "\"}";
  }
  os << "],\"stats\":{";
  bool first_group = true;
  for (const std::string& problem : spec.problems) {
    for (DirectionKind solver : spec.solvers) {
      std::vector<RunRecord> group;
      for (const RunRecord& r : records)
        if (r.problem == problem && r.solver == solver) group.push_back(r);
      if (group.empty()) continue;
      if (!first_group) os << ",";
      first_group = false;
      os << "\"" << problem << "/" << to_string(solver) << "\":{";
      bool first_metric = true;
      for (Metric metric : {Metric::Iterations, Metric::CpuSeconds}) {
        const SummaryStats st = summarize(group, metric);
        if (!first_metric) os << ",";
        first_metric = false;
        os << "\"" << to_string(metric) << "\":{\"min\":" << st.min
           << ",\"max\":" << st.max << ",\"mean\":" << st.mean
           << ",\"median\":" << st.median << ",\"mode\":" << st.mode
           << ",\"std_dev\":" << st.std_dev << "}";
      }
      os << "}";
    }
  }
  os << "},\"profiles\":[";
  if (spec.solvers.size() >= 2) {
    bool first_curve = true;
    for (Metric metric : {Metric::Iterations, Metric::CpuSeconds}) {
      ProfileResult prof;
      try {
        prof = performance_profile(records, metric);
      } catch (const std::invalid_argument&) {
        continue;  // no complete problem; leave the list empty
      }
      for (const ProfileCurve& c : prof.curves) {
        if (!first_curve) os << ",";
        first_curve = false;
        os << "{\"solver\":\"" << to_string(c.solver) << "\",\"metric\":\""
           << to_string(c.metric) << "\",\"zeta\":[";
        for (size_t k = 0; k < c.zeta.size(); ++k)
          os << (k ? "," : "") << c.zeta[k];
        os << "],\"rho\":[";
        for (size_t k = 0; k < c.rho.size(); ++k) os << (k ? "," : "") << c.rho[k];
        os << "]}";
      }
    }
  }
  os << "]}";
  return os.str();
}

std::string stats_table_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os << "problem,solver,metric,min,max,mean,median,mode,std_dev\n";
  std::vector<std::pair<std::string, DirectionKind>> keys;
  for (const RunRecord& r : records) {
    const auto key = std::make_pair(r.problem, r.solver);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      keys.push_back(key);
  }
  for (const auto& [problem, solver] : keys) {
    std::vector<RunRecord> group;
    for (const RunRecord& r : records)
      if (r.problem == problem && r.solver == solver) group.push_back(r);
    for (Metric metric : {Metric::Iterations, Metric::CpuSeconds}) {
      const SummaryStats st = summarize(group, metric);
      os << problem << "," << to_string(solver) << "," << to_string(metric)
         << "," << num(st.min) << "," << num(st.max) << "," << num(st.mean)
         << "," << num(st.median) << "," << num(st.mode) << ","
         << num(st.std_dev) << "\n";
    }
  }
  return os.str();
}

std::string profile_csv(const ProfileResult& profiles) {
  std::ostringstream os;
  os << "solver,metric,zeta,rho\n";
  for (const ProfileCurve& c : profiles.curves)
    for (size_t k = 0; k < c.zeta.size(); ++k)
      os << to_string(c.solver) << "," << to_string(c.metric) << ","
         << num(c.zeta[k]) << "," << num(c.rho[k]) << "\n";
  return os.str();
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 50;

double map_x(double v, double lo, double hi) {
  if (hi <= lo) return kMargin;
  return kMargin + (v - lo) / (hi - lo) * (kWidth - 2 * kMargin);
}

double map_y(double v, double lo, double hi) {
  if (hi <= lo) return kHeight - kMargin;
  return kHeight - kMargin - (v - lo) / (hi - lo) * (kHeight - 2 * kMargin);
}

void svg_header(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n"
     << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
}

void svg_axes(std::ostringstream& os) {
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin
     << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
     << kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
}

const char* kColors[] = {"#1f6fb2", "#c23b22", "#2a8f4b", "#8e5ba6"};

}  // namespace

std::string profile_svg(const ProfileResult& profiles) {
  std::ostringstream os;
  os.precision(8);
  svg_header(os, "Performance profile");
  svg_axes(os);
  double zmax = 1.0;
  for (const ProfileCurve& c : profiles.curves)
    if (!c.zeta.empty()) zmax = std::max(zmax, c.zeta.back());
  int ci = 0;
  for (const ProfileCurve& c : profiles.curves) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[ci % 4]
       << "\" stroke-width=\"1.5\" points=\"";
    double prev_rho = 0.0;
    for (size_t k = 0; k < c.zeta.size(); ++k) {
      // step curve: horizontal segment then the jump
      if (k > 0 && c.rho[k] != prev_rho)
        os << num(map_x(c.zeta[k], 1.0, zmax)) << "," << num(map_y(prev_rho, 0, 1))
           << " ";
      os << num(map_x(c.zeta[k], 1.0, zmax)) << "," << num(map_y(c.rho[k], 0, 1))
         << " ";
      prev_rho = c.rho[k];
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 150 << "\" y=\""
       << kMargin + 16 * (ci + 1) << "\" font-family=\"sans-serif\" "
       << "font-size=\"12\" fill=\"" << kColors[ci % 4] << "\">"
       << to_string(c.solver) << " (" << to_string(c.metric) << ")</text>\n";
    ++ci;
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">zeta</text>\n"
     << "<text x=\"14\" y=\"" << kHeight / 2
     << "\" font-family=\"sans-serif\" font-size=\"12\">rho</text>\n</svg>\n";
  return os.str();
}

std::string region_samples_csv(const RegionSamples& samples) {
  std::ostringstream os;
  const int n = samples.points.empty() ? 0 : int(samples.points[0].size());
  const int m = samples.values.empty() ? 0 : int(samples.values[0].size());
  for (int j = 0; j < n; ++j) os << (j ? "," : "") << "x" << (j + 1);
  for (int i = 0; i < m; ++i)
    os << ",G" << (i + 1) << "_lo,G" << (i + 1) << "_hi";
  os << "\n";
  for (size_t k = 0; k < samples.points.size(); ++k) {
    for (int j = 0; j < n; ++j)
      os << (j ? "," : "") << num(samples.points[k][j]);
    for (int i = 0; i < m; ++i)
      os << "," << num(samples.values[k][i].lo()) << ","
         << num(samples.values[k][i].hi());
    os << "\n";
  }
  return os.str();
}

std::string iterate_rectangles_svg(const SolveReport& report,
                                   const RegionSamples* region) {
  std::ostringstream os;
  os.precision(8);
  if (report.iterates.empty() || report.iterates[0].G_values.size() != 2)
    throw std::invalid_argument(
        "iterate_rectangles_svg: needs a biobjective report");
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  auto take = [&](const Interval& a, const Interval& b) {
    xlo = std::min(xlo, a.lo());
    xhi = std::max(xhi, a.hi());
    ylo = std::min(ylo, b.lo());
    yhi = std::max(yhi, b.hi());
  };
  for (const IterateRecord& it : report.iterates)
    take(it.G_values[0], it.G_values[1]);
  if (region)
    for (const auto& g : region->values) take(g[0], g[1]);
  const double padx = 0.05 * (xhi - xlo + 1e-12);
  const double pady = 0.05 * (yhi - ylo + 1e-12);
  xlo -= padx; xhi += padx; ylo -= pady; yhi += pady;

  svg_header(os, "Objective rectangles: " + report.problem);
  svg_axes(os);
  auto rect = [&](const Interval& a, const Interval& b, const char* fill,
                  double opacity) {
    const double x0 = map_x(a.lo(), xlo, xhi), x1 = map_x(a.hi(), xlo, xhi);
    const double y0 = map_y(b.hi(), ylo, yhi), y1 = map_y(b.lo(), ylo, yhi);
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
       << num(std::max(x1 - x0, 0.5)) << "\" height=\""
       << num(std::max(y1 - y0, 0.5)) << "\" fill=\"" << fill
       << "\" fill-opacity=\"" << opacity << "\" stroke=\"none\"/>\n";
  };
  if (region)
    for (const auto& g : region->values) rect(g[0], g[1], "#bcd9ea", 0.35);
  for (size_t k = 0; k < report.iterates.size(); ++k) {
    const auto& g = report.iterates[k].G_values;
    const bool last = k + 1 == report.iterates.size();
    rect(g[0], g[1], last ? "#e3b122" : "#93c572", last ? 0.9 : 0.5);
  }
  os << "<polyline fill=\"none\" stroke=\"magenta\" stroke-width=\"1.5\" "
        "points=\"";
  for (const IterateRecord& it : report.iterates)
    os << num(map_x(it.G_values[0].mid(), xlo, xhi)) << ","
       << num(map_y(it.G_values[1].mid(), ylo, yhi)) << " ";
  os << "\"/>\n";
  for (size_t k = 0; k < report.iterates.size(); ++k) {
    const auto& g = report.iterates[k].G_values;
    const bool last = k + 1 == report.iterates.size();
    os << "<circle cx=\"" << num(map_x(g[0].mid(), xlo, xhi)) << "\" cy=\""
       << num(map_y(g[1].mid(), ylo, yhi)) << "\" r=\"2.5\" fill=\""
       << (last ? "blue" : "black") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string problem_catalogue_json() {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  bool first = true;
  for (const std::string& name : problem_names()) {
    const ProblemDef p = get_problem(name);
    if (!first) os << ",";
    first = false;
    os << "{\"name\":\"" << p.name << "\",\"m\":" << p.m << ",\"n\":" << p.n
       << ",\"lb\":[";
    for (int j = 0; j < p.n; ++j) os << (j ? "," : "") << p.lb[j];
    os << "],\"ub\":[";
    for (int j = 0; j < p.n; ++j) os << (j ? "," : "") << p.ub[j];
    os << "]}";
  }
  os << "]";
  return os.str();
}

}  // namespace emit
}  // namespace imo
