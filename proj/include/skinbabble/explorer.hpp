#pragma once

#include "skinbabble/environment.hpp"
#include "skinbabble/interest.hpp"
#include "skinbabble/inverse_model.hpp"
#include "skinbabble/rng.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skinbabble {

enum class StrategyKind { Rmb, Rgb, Dgb };

struct StrategyParams {
    StrategyKind kind = StrategyKind::Rmb;
    bool direct_opt = false;
    std::string label = "rmb"; // tag written to the outcome log
    int grid_m = 0, grid_n = 0;

    double noise_sigma = 0.05;
    double epsilon = 0.1;
    double interest_init = 1.0;
    bool interest_window = false;
    int interest_window_size = 4;

    int do_generations = 10;
    bool do_real_executions = false;
    int lwlr_neighbors = 20;
    double lwlr_bandwidth = 0.0; // <= 0: auto
    double lwlr_ridge = 1e-6;

    int bootstrap_touches = 10;
    int bootstrap_cap = 500;
    double bootstrap_sub_range = 0.25;
};

// One logged environment interaction. Every iteration of a run produces
// exactly one row; bootstrap iterations are tagged "bootstrap".
struct Outcome {
    int iteration = 0;
    std::string strategy;
    std::optional<Obs> goal; // absent for random motor babbling
    JointConfig q;
    std::optional<Obs> x;    // absent when nothing was touched
    std::optional<int> taxel;
    int cell = -1;                       // selected interest cell, -1 if none
    std::optional<double> cell_interest; // that cell's interest after the update
};

// Drives one exploration run: the bootstrap phase (goal-babbling strategies
// only) followed by strategy steps. Owns the database, the interest grid and
// the outcome log; the RNG is caller-owned so trials control their streams.
class Explorer {
public:
    Explorer(const Environment& env, const StrategyParams& params, Rng& rng);

    // Advances by one step, which is one environment execution except for
    // direct optimization on real executions, where a step spends up to
    // min(do_generations budget, remaining) executions on one goal. Returns
    // the number of iterations consumed and appends that many outcomes.
    int step(int remaining_budget);

    bool bootstrapping() const;
    int iterations_done() const { return iteration_; }
    int bootstrap_iterations() const { return bootstrap_iterations_; }

    const std::vector<Outcome>& log() const { return log_; }
    const SampleDatabase& db() const { return db_; }
    const InterestGrid* grid() const { return grid_.get(); }

private:
    Outcome& execute_logged(const std::string& tag, const JointConfig& q,
                            std::optional<Obs> goal, int cell);
    int bootstrap_step();
    int rmb_step();
    int gb_step();
    int do_step(int remaining_budget);
    Obs rgb_goal();
    JointConfig noisy_nn(const Obs& goal);
    void update_interest_for(Outcome& out, int cell, std::optional<double> achieved);

    const Environment& env_;
    StrategyParams p_;
    Rng& rng_;
    SampleDatabase db_;
    std::unique_ptr<InterestGrid> grid_;
    std::vector<Outcome> log_;
    int iteration_ = 0;
    int bootstrap_iterations_ = 0;
    bool in_bootstrap_ = false;
};

} // namespace skinbabble
