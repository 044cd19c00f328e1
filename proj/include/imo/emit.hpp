#pragma once

#include <filesystem>
#include <string>

#include "imo/bench.hpp"
#include "imo/problems.hpp"
#include "imo/solver.hpp"

namespace imo {

/// Artifact writers. Byte output is deterministic for fixed input; files are
/// written with '\n' endings and 12 significant digits.
namespace emit {

void write_file(const std::filesystem::path& path, const std::string& content);

std::string run_records_csv(const std::vector<RunRecord>& records);

/// Full campaign document: {spec, records[], stats{}, profiles[]}. Profiles
/// are included when at least two solvers are present.
std::string campaign_json(const CampaignSpec& spec,
                          const std::vector<RunRecord>& records);

/// One row per (problem, solver): Min/Max/Mean/Median/Mode/StdDev for both
/// iteration counts and cpu seconds.
std::string stats_table_csv(const std::vector<RunRecord>& records);

std::string profile_csv(const ProfileResult& profiles);
std::string profile_svg(const ProfileResult& profiles);

std::string region_samples_csv(const RegionSamples& samples);

/// Iterate history rectangles for biobjective problems: interval boxes
/// [G1_lo,G1_hi] x [G2_lo,G2_hi] with the trajectory polyline through the
/// rectangle centers; optional feasible-region samples drawn underneath.
std::string iterate_rectangles_svg(const SolveReport& report,
                                   const RegionSamples* region = nullptr);

std::string problem_catalogue_json();

}  // namespace emit

}  // namespace imo
