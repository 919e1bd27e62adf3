#include "skinbabble/config.hpp"
#include "skinbabble/errors.hpp"
#include "skinbabble/experiment.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>

using namespace skinbabble;
using nlohmann::json;

namespace {

json base_json() {
    return json{{"body", "torso"},   {"resolution", "low"}, {"strategy", "dgb-15"},
                {"iterations", 100}, {"eval_interval", 10}, {"trials", 2},
                {"seed", 11}};
}

bool same_obs(const std::optional<Obs>& a, const std::optional<Obs>& b) {
    if (a.has_value() != b.has_value())
        return false;
    return !a || ((*a) - (*b)).norm() == 0.0;
}

void check_same_outcomes(const std::vector<Outcome>& a, const std::vector<Outcome>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].iteration == b[i].iteration);
        CHECK(a[i].strategy == b[i].strategy);
        CHECK(same_obs(a[i].goal, b[i].goal));
        CHECK((a[i].q - b[i].q).norm() == 0.0);
        CHECK(same_obs(a[i].x, b[i].x));
        CHECK(a[i].taxel == b[i].taxel);
        CHECK(a[i].cell == b[i].cell);
        CHECK(a[i].cell_interest == b[i].cell_interest);
    }
}

void check_same_trial(const TrialResult& a, const TrialResult& b) {
    CHECK(a.seed == b.seed);
    CHECK(a.error == b.error);
    CHECK(a.bootstrap_iterations == b.bootstrap_iterations);
    check_same_outcomes(a.outcomes, b.outcomes);
    REQUIRE(a.checkpoints.size() == b.checkpoints.size());
    for (std::size_t c = 0; c < a.checkpoints.size(); ++c) {
        const CheckpointReport& x = a.checkpoints[c];
        const CheckpointReport& y = b.checkpoints[c];
        CHECK(x.iteration == y.iteration);
        CHECK(x.cumulative_touches == y.cumulative_touches);
        CHECK(x.mre == y.mre);
        REQUIRE(x.results.size() == y.results.size());
        for (std::size_t r = 0; r < x.results.size(); ++r) {
            CHECK(x.results[r].taxel_id == y.results[r].taxel_id);
            CHECK(x.results[r].outcome == y.results[r].outcome);
            CHECK(x.results[r].error == y.results[r].error);
        }
    }
    CHECK(a.db.size() == b.db.size());
    CHECK(a.final_interest == b.final_interest);
}

void check_same_experiment(const ExperimentResult& a, const ExperimentResult& b) {
    CHECK(a.hash == b.hash);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t t = 0; t < a.trials.size(); ++t)
        check_same_trial(a.trials[t], b.trials[t]);
    REQUIRE(a.taxel_summary.size() == b.taxel_summary.size());
    for (std::size_t i = 0; i < a.taxel_summary.size(); ++i) {
        CHECK(a.taxel_summary[i].taxel_id == b.taxel_summary[i].taxel_id);
        CHECK(a.taxel_summary[i].reach_rate == b.taxel_summary[i].reach_rate);
        CHECK(a.taxel_summary[i].mean_error == b.taxel_summary[i].mean_error);
        CHECK(a.taxel_summary[i].cls == b.taxel_summary[i].cls);
    }
}

long touches_up_to(const std::vector<Outcome>& log, int iteration) {
    return std::count_if(log.begin(), log.end(), [&](const Outcome& o) {
        return o.iteration <= iteration && o.x.has_value();
    });
}

} // namespace

TEST_CASE("a trial checkpoints on every interval boundary") {
    const ExperimentConfig cfg = parse_config(base_json());
    const Environment env = build_environment(cfg);
    const TrialResult tr = run_trial(env, cfg, cfg.seed);

    CHECK(tr.ok());
    CHECK(tr.seed == cfg.seed);
    CHECK(tr.outcomes.size() == 100);
    for (std::size_t i = 0; i < tr.outcomes.size(); ++i)
        CHECK(tr.outcomes[i].iteration == static_cast<int>(i) + 1);

    REQUIRE(tr.checkpoints.size() == 10);
    for (std::size_t c = 0; c < tr.checkpoints.size(); ++c) {
        const CheckpointReport& cp = tr.checkpoints[c];
        CHECK(cp.iteration == (static_cast<int>(c) + 1) * 10);
        // One execution per iteration here, so the evaluation ran exactly at
        // the boundary and its touch count must match the log's.
        CHECK(cp.cumulative_touches == touches_up_to(tr.outcomes, cp.iteration));
        CHECK(cp.results.size() == 25);
        if (c > 0)
            CHECK(cp.cumulative_touches >= tr.checkpoints[c - 1].cumulative_touches);
    }
    CHECK(tr.checkpoints.back().cumulative_touches ==
          static_cast<long>(tr.db.size()));

    CHECK(tr.bootstrap_iterations > 0);
    const auto boots = static_cast<std::size_t>(tr.bootstrap_iterations);
    for (std::size_t i = 0; i < tr.outcomes.size(); ++i)
        CHECK(tr.outcomes[i].strategy == (i < boots ? "bootstrap" : "dgb-15"));
    CHECK(tr.final_interest.size() == 15 * 15);
}

TEST_CASE("an interval equal to the run length yields one final checkpoint") {
    json j = base_json();
    j["strategy"] = "rgb";
    j["iterations"] = 60;
    j["eval_interval"] = 60;
    const ExperimentConfig cfg = parse_config(j);
    const Environment env = build_environment(cfg);
    const TrialResult tr = run_trial(env, cfg, cfg.seed);
    REQUIRE(tr.checkpoints.size() == 1);
    CHECK(tr.checkpoints[0].iteration == 60);
    CHECK(tr.outcomes.size() == 60);
    CHECK(tr.final_interest.empty());
}

TEST_CASE("multi-iteration optimization steps still checkpoint each boundary") {
    json j = base_json();
    j["strategy"] = "dgb-15-do";
    j["do"] = {{"generations", 7}, {"real_executions", true}};
    j["lwlr"] = {{"neighbors", 6}};
    j["bootstrap"] = {{"touches", 5}};
    j["iterations"] = 120;
    const ExperimentConfig cfg = parse_config(j);
    const Environment env = build_environment(cfg);
    const TrialResult tr = run_trial(env, cfg, cfg.seed);

    CHECK(tr.outcomes.size() == 120);
    REQUIRE(tr.checkpoints.size() == 12);
    const long total_touches = touches_up_to(tr.outcomes, 120);
    for (std::size_t c = 0; c < tr.checkpoints.size(); ++c) {
        const CheckpointReport& cp = tr.checkpoints[c];
        CHECK(cp.iteration == (static_cast<int>(c) + 1) * 10);
        // A step may overshoot the boundary before the evaluation runs, so
        // the count can only be bounded by the log, not pinned to it.
        CHECK(cp.cumulative_touches >= touches_up_to(tr.outcomes, cp.iteration));
        CHECK(cp.cumulative_touches <= total_touches);
        if (c > 0)
            CHECK(cp.cumulative_touches >= tr.checkpoints[c - 1].cumulative_touches);
    }
    CHECK(tr.checkpoints.back().cumulative_touches == total_touches);

    // The optimization phase must actually have run for this to mean much.
    REQUIRE(tr.bootstrap_iterations < 100);
    CHECK(tr.db.size() >= 6);
}

TEST_CASE("checkpoint evaluation does not perturb the exploration stream") {
    json j = base_json();
    const ExperimentConfig often = parse_config(j);
    j["eval_interval"] = 50;
    const ExperimentConfig rarely = parse_config(j);
    const Environment env = build_environment(often);

    const TrialResult a = run_trial(env, often, 11);
    const TrialResult b = run_trial(env, rarely, 11);
    CHECK(a.checkpoints.size() == 10);
    CHECK(b.checkpoints.size() == 2);
    check_same_outcomes(a.outcomes, b.outcomes);
    // Where both evaluated, they must agree too.
    CHECK(a.checkpoints[4].mre == b.checkpoints[0].mre);
    CHECK(a.checkpoints[9].mre == b.checkpoints[1].mre);
}

TEST_CASE("experiments are reproducible and parallelism is invisible") {
    const ExperimentConfig cfg = parse_config(base_json());
    const ExperimentResult once = run_experiment(cfg, 1);
    const ExperimentResult again = run_experiment(cfg, 1);
    const ExperimentResult threaded = run_experiment(cfg, 3);

    check_same_experiment(once, again);
    check_same_experiment(once, threaded);

    CHECK(once.hash == config_hash(cfg));
    CHECK(once.config.strategy == cfg.strategy);
    CHECK(once.wall_seconds >= 0.0);
    CHECK(once.taxel_summary.size() == 25);
}

TEST_CASE("trial seeds are the config seed plus the trial index") {
    json j = base_json();
    j["trials"] = 3;
    const ExperimentConfig cfg = parse_config(j);
    const ExperimentResult res = run_experiment(cfg, 1);
    REQUIRE(res.trials.size() == 3);
    for (std::size_t i = 0; i < res.trials.size(); ++i)
        CHECK(res.trials[i].seed == cfg.seed + i);

    // Each trial is exactly the standalone run with that seed.
    const Environment env = build_environment(cfg);
    check_same_trial(res.trials[2], run_trial(env, cfg, cfg.seed + 2));
}

TEST_CASE("a failing trial is isolated; the rest of the experiment survives") {
    json j = base_json();
    j["strategy"] = "rgb";
    j["trials"] = 4;
    j["iterations"] = 400;
    j["eval_interval"] = 400;
    ExperimentConfig cfg = parse_config(j);

    // Find a bootstrap cap separating the slowest trial from the fastest.
    const Environment env = build_environment(cfg);
    std::vector<int> boots;
    for (std::uint64_t i = 0; i < 4; ++i)
        boots.push_back(run_trial(env, cfg, cfg.seed + i).bootstrap_iterations);
    const int lo = *std::min_element(boots.begin(), boots.end());
    const int hi = *std::max_element(boots.begin(), boots.end());
    REQUIRE(lo < hi); // distinct seeds bootstrap at different speeds
    const int cap = lo + (hi - lo) / 2;

    j["bootstrap"] = {{"cap", cap}};
    cfg = parse_config(j);
    const ExperimentResult res = run_experiment(cfg, 2);
    REQUIRE(res.trials.size() == 4);
    int failed = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (boots[i] > cap) {
            ++failed;
            CHECK_FALSE(res.trials[i].ok());
            CHECK(res.trials[i].error.find("bootstrap") != std::string::npos);
            CHECK(res.trials[i].checkpoints.empty());
        } else {
            CHECK(res.trials[i].ok());
            CHECK(res.trials[i].checkpoints.size() == 1);
        }
    }
    CHECK(failed >= 1);
    CHECK(failed < 4);
    CHECK(res.taxel_summary.size() == 25); // aggregated from the surviving trials
}

TEST_CASE("when every trial fails the first error propagates") {
    json j = base_json();
    j["strategy"] = "rgb";
    j["trials"] = 2;
    j["iterations"] = 40;
    j["eval_interval"] = 40;
    j["bootstrap"] = {{"cap", 1}};
    const ExperimentConfig cfg = parse_config(j);
    CHECK_THROWS_AS(run_experiment(cfg, 2), BootstrapError);
}
