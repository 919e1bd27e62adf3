#pragma once

#include "skinbabble/config.hpp"
#include "skinbabble/evaluation.hpp"
#include "skinbabble/explorer.hpp"

#include <string>
#include <vector>

namespace skinbabble {

struct TrialResult {
    std::uint64_t seed = 0;
    std::string error; // empty when the trial completed
    int bootstrap_iterations = 0;
    std::vector<Outcome> outcomes;
    std::vector<CheckpointReport> checkpoints;
    SampleDatabase db;
    std::vector<double> final_interest; // empty unless the strategy uses a grid

    bool ok() const { return error.empty(); }
};

struct ExperimentResult {
    ExperimentConfig config; // effective values
    std::string hash;
    std::vector<TrialResult> trials;
    std::vector<TaxelSummary> taxel_summary; // aggregated final checkpoints
    double wall_seconds = 0.0;
};

// One seeded trial: bootstrap (goal-babbling strategies), the exploration
// loop, and a checkpoint evaluation each time an eval-interval boundary is
// crossed. Trial i of an experiment uses seed = config.seed + i.
TrialResult run_trial(const Environment& env, const ExperimentConfig& cfg,
                      std::uint64_t seed);

// Runs all trials (optionally across `parallel` threads; results are
// identical either way), then aggregates. Per-trial failures are recorded in
// TrialResult::error; if every trial fails the first error is rethrown.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int parallel = 1);

} // namespace skinbabble
