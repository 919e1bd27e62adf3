#include "skinbabble/experiment.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

namespace skinbabble {

TrialResult run_trial(const Environment& env, const ExperimentConfig& cfg,
                      std::uint64_t seed) {
    TrialResult tr;
    tr.seed = seed;
    Rng rng(seed);
    Explorer explorer(env, strategy_params(cfg), rng);
    const TestSet test_set = build_test_set(env.patch(), cfg.resolution,
                                            cfg.test_stride_rows, cfg.test_stride_cols);

    // A step may span several iterations (direct optimization on the real
    // environment) or the bootstrap may overshoot a boundary, so checkpoints
    // fire for every crossed multiple of the interval.
    int it = 0;
    int next_cp = cfg.eval_interval;
    while (it < cfg.iterations) {
        it += explorer.step(cfg.iterations - it);
        while (next_cp <= it) {
            tr.checkpoints.push_back(
                evaluate_checkpoint(env, explorer.db(), test_set, next_cp));
            next_cp += cfg.eval_interval;
        }
    }

    tr.bootstrap_iterations = explorer.bootstrap_iterations();
    tr.outcomes = explorer.log();
    tr.db = explorer.db();
    if (const InterestGrid* g = explorer.grid())
        tr.final_interest = g->interest();
    return tr;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int parallel) {
    const auto t0 = std::chrono::steady_clock::now();

    ExperimentResult res;
    res.config = cfg;
    res.hash = config_hash(cfg);

    const Environment env = build_environment(cfg);

    res.trials.resize(cfg.trials);
    std::vector<std::exception_ptr> failures(cfg.trials);
    auto work = [&](int i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        try {
            res.trials[i] = run_trial(env, cfg, seed);
        } catch (...) {
            failures[i] = std::current_exception();
            res.trials[i].seed = seed;
            try {
                std::rethrow_exception(failures[i]);
            } catch (const std::exception& e) {
                res.trials[i].error = e.what();
            }
        }
    };

    const int threads = std::clamp(parallel, 1, cfg.trials);
    if (threads <= 1) {
        for (int i = 0; i < cfg.trials; ++i)
            work(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1))
                    work(i);
            });
        for (std::thread& t : pool)
            t.join();
    }

    std::vector<const CheckpointReport*> finals;
    for (const TrialResult& tr : res.trials)
        if (tr.ok() && !tr.checkpoints.empty())
            finals.push_back(&tr.checkpoints.back());
    if (finals.empty()) {
        for (const std::exception_ptr& e : failures)
            if (e)
                std::rethrow_exception(e);
        throw std::runtime_error("experiment produced no completed trials");
    }
    res.taxel_summary = aggregate_trials(finals, env.projection(), 0.6);

    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace skinbabble
