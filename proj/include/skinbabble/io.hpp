#pragma once

#include "skinbabble/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace skinbabble {

// Shortest round-tripping decimal form (std::to_chars), so CSV bytes are a
// pure function of the computed values.
std::string fmt_double(double v);

// Result directory layout:
//   config.json            effective config (canonical form)
//   meta.json              hash, seeds, bootstrap lengths, wall time
//   taxels.csv             id,x,y,z,nx,ny,nz          (patch frame)
//   taxels_uv.csv          id,u,v                     (observation space)
//   taxel_summary.csv      id,u,v,reach_rate,mean_error,class
//   checkpoints_mean.csv   iteration,mean_mre,mean_touches
//   trial_<i>/outcomes.csv iteration,strategy,goal_u,goal_v,q1..qn,touched,x_u,x_v,cell,cell_interest
//   trial_<i>/checkpoints.csv iteration,mre,cumulative_touches
//   trial_<i>/database.csv q1..qn,u,v
// Empty fields encode "not applicable" (no goal, no touch, no MRE).
// Everything except meta.json (wall time) is byte-reproducible.
void write_results(const ExperimentResult& result, const std::filesystem::path& dir);

// Matrix-level roll-up: strategy,iteration,mean_mre,mean_touches.
void write_comparison_csv(const std::vector<ExperimentResult>& results,
                          const std::filesystem::path& file);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& file);

} // namespace skinbabble
