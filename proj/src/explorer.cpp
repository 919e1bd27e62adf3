#include "skinbabble/explorer.hpp"

#include "skinbabble/cma_es.hpp"
#include "skinbabble/errors.hpp"

#include <algorithm>
#include <cmath>

namespace skinbabble {

Explorer::Explorer(const Environment& env, const StrategyParams& params, Rng& rng)
    : env_(env), p_(params), rng_(rng) {
    if (p_.kind == StrategyKind::Dgb) {
        if (p_.grid_m < 1 || p_.grid_n < 1)
            throw ConfigError("strategy: dgb requires a grid size");
        grid_ = std::make_unique<InterestGrid>(p_.grid_m, p_.grid_n, env_.goal_bounds(),
                                               p_.interest_init, p_.interest_window,
                                               p_.interest_window_size);
    }
    in_bootstrap_ = p_.kind != StrategyKind::Rmb;
}

bool Explorer::bootstrapping() const { return in_bootstrap_; }

Outcome& Explorer::execute_logged(const std::string& tag, const JointConfig& q,
                                  std::optional<Obs> goal, int cell) {
    const ExecResult r = env_.execute(q);
    Outcome out;
    out.iteration = ++iteration_;
    out.strategy = tag;
    out.goal = std::move(goal);
    out.q = q;
    out.x = r.obs;
    out.taxel = r.taxel;
    out.cell = cell;
    if (r.touched())
        db_.insert(q, *r.obs);
    log_.push_back(std::move(out));
    return log_.back();
}

int Explorer::step(int remaining_budget) {
    if (remaining_budget < 1)
        throw ConfigError("explorer: no iteration budget left");
    if (in_bootstrap_)
        return bootstrap_step();
    switch (p_.kind) {
    case StrategyKind::Rmb:
        return rmb_step();
    case StrategyKind::Rgb:
    case StrategyKind::Dgb:
        if (p_.direct_opt && db_.size() >= static_cast<std::size_t>(p_.lwlr_neighbors))
            return do_step(remaining_budget);
        return gb_step(); // also the fallback while the database is small
    }
    return 0; // unreachable
}

int Explorer::bootstrap_step() {
    if (bootstrap_iterations_ >= p_.bootstrap_cap)
        throw BootstrapError("bootstrap: no " + std::to_string(p_.bootstrap_touches) +
                             " touches within " + std::to_string(p_.bootstrap_cap) +
                             " iterations; the skin appears unreachable from the "
                             "constrained joint ranges");
    ++bootstrap_iterations_;
    const JointConfig q = sample_uniform_config(env_.chain(), p_.bootstrap_sub_range, rng_);
    execute_logged("bootstrap", q, std::nullopt, -1);
    if (db_.size() >= static_cast<std::size_t>(p_.bootstrap_touches))
        in_bootstrap_ = false;
    return 1;
}

int Explorer::rmb_step() {
    const JointConfig q = sample_uniform_config(env_.chain(), 1.0, rng_);
    execute_logged(p_.label, q, std::nullopt, -1);
    return 1;
}

Obs Explorer::rgb_goal() {
    const Rect& b = env_.goal_bounds();
    const double u = uniform(rng_, b.u0, b.u1);
    const double v = uniform(rng_, b.v0, b.v1);
    return {u, v};
}

JointConfig Explorer::noisy_nn(const Obs& goal) {
    JointConfig q = db_.nn_inverse(goal);
    for (Eigen::Index i = 0; i < q.size(); ++i)
        q[i] += p_.noise_sigma * gauss(rng_);
    return clamp_to_limits(env_.chain(), q);
}

void Explorer::update_interest_for(Outcome& out, int cell,
                                   std::optional<double> achieved) {
    const double competence = achieved.value_or(env_.d_miss());
    grid_->update(cell, competence);
    out.cell_interest = grid_->interest()[static_cast<std::size_t>(cell)];
}

int Explorer::gb_step() {
    int cell = -1;
    Obs goal;
    if (p_.kind == StrategyKind::Dgb) {
        cell = grid_->select_cell(rng_, p_.epsilon);
        goal = grid_->sample_goal(cell, rng_);
    } else {
        goal = rgb_goal();
    }
    const JointConfig q = noisy_nn(goal);
    Outcome& out = execute_logged(p_.label, q, goal, cell);
    if (p_.kind == StrategyKind::Dgb) {
        std::optional<double> achieved;
        if (out.x)
            achieved = distance(goal, *out.x);
        update_interest_for(out, cell, achieved);
    }
    return 1;
}

int Explorer::do_step(int remaining_budget) {
    int cell = -1;
    Obs goal;
    if (p_.kind == StrategyKind::Dgb) {
        cell = grid_->select_cell(rng_, p_.epsilon);
        goal = grid_->sample_goal(cell, rng_);
    } else {
        goal = rgb_goal();
    }
    const JointConfig q0 = db_.nn_inverse(goal);

    const Eigen::Index dof = static_cast<Eigen::Index>(env_.chain().dof());
    JointConfig lo(dof), hi(dof);
    for (Eigen::Index i = 0; i < dof; ++i) {
        lo[i] = env_.chain().joints[static_cast<std::size_t>(i)].lo;
        hi[i] = env_.chain().joints[static_cast<std::size_t>(i)].hi;
    }

    if (!p_.do_real_executions) {
        // Refine against a temporary LWLR forward surrogate; the environment
        // runs exactly once, on the surrogate optimum.
        auto surrogate = [&](const JointConfig& q) {
            return distance(db_.lwlr_forward(q, p_.lwlr_neighbors, p_.lwlr_bandwidth,
                                             p_.lwlr_ridge),
                            goal);
        };
        CmaOptions opt;
        opt.generations = p_.do_generations;
        const CmaResult best = cma_minimize(surrogate, q0, lo, hi, opt, rng_);
        Outcome& out = execute_logged(p_.label, best.q_best, goal, cell);
        if (p_.kind == StrategyKind::Dgb) {
            std::optional<double> achieved;
            if (out.x)
                achieved = distance(goal, *out.x);
            update_interest_for(out, cell, achieved);
        }
        return 1;
    }

    // Alternative reading: the k optimization trials run on the robot itself.
    // Every candidate evaluation is a real execution, consumes an iteration
    // and feeds the database on touch; the budget caps the spree.
    const int before = iteration_;
    double best_achieved = env_.d_miss();
    auto real_objective = [&](const JointConfig& q) {
        Outcome& out = execute_logged(p_.label, q, goal, cell);
        const double d = out.x ? distance(goal, *out.x) : env_.d_miss();
        best_achieved = std::min(best_achieved, d);
        return d;
    };
    CmaOptions opt;
    opt.generations = p_.do_generations; // cap below is the real limit
    opt.max_evaluations = std::min(p_.do_generations, remaining_budget);
    cma_minimize(real_objective, q0, lo, hi, opt, rng_);
    if (p_.kind == StrategyKind::Dgb)
        update_interest_for(log_.back(), cell, best_achieved);
    return iteration_ - before;
}

} // namespace skinbabble
