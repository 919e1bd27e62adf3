#pragma once

#include "skinbabble/environment.hpp"
#include "skinbabble/inverse_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skinbabble {

struct TestSet {
    std::vector<int> taxel_ids;
};

enum class ReachOutcome { Exact, WithError, Unreached };

struct TaxelTestResult {
    int taxel_id = 0;
    ReachOutcome outcome = ReachOutcome::Unreached;
    double error = 0.0; // defined for Exact (0) and WithError only
};

struct CheckpointReport {
    int iteration = 0;
    std::vector<TaxelTestResult> results;
    std::optional<double> mre; // absent iff no test attempt produced contact
    long cumulative_touches = 0;

    int count(ReachOutcome o) const;
};

// Low resolution tests every taxel; high resolution subsamples the grid with
// the given strides per axis (rows, cols), giving the sparse test pattern.
TestSet build_test_set(const SkinPatch& patch, const std::string& resolution,
                       int stride_rows = 4, int stride_cols = 3);

// Asks the current inverse model to reach each test taxel with zero noise and
// classifies the result. Consumes no exploration randomness and leaves the
// database untouched.
CheckpointReport evaluate_checkpoint(const Environment& env, const SampleDatabase& db,
                                     const TestSet& test_set, int iteration);

struct TaxelSummary {
    int taxel_id = 0;
    Obs uv = Obs::Zero();
    double reach_rate = 0.0;
    std::optional<double> mean_error; // only when reach_rate >= threshold
    std::string cls;                  // "blue" | "magenta" | "red"
};

// Cross-trial aggregation of final checkpoints: a taxel's error is reported
// only when it was reached (exactly or with error) in at least `threshold` of
// the trials; blue = mean error zero, magenta = positive, red = under
// threshold.
std::vector<TaxelSummary> aggregate_trials(const std::vector<const CheckpointReport*>& finals,
                                           const Projection& proj, double threshold);

} // namespace skinbabble
