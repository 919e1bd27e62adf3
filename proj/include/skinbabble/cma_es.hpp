#pragma once

#include "skinbabble/geometry.hpp"
#include "skinbabble/rng.hpp"

#include <functional>
#include <vector>

namespace skinbabble {

struct CmaOptions {
    int generations = 10;
    double sigma0 = -1.0;      // <= 0: 0.3 x mean joint half-range
    long max_evaluations = -1; // budget cap including the initial point; < 0: none
};

struct CmaResult {
    JointConfig q_best;
    double f_best = 0.0;
    long evaluations = 0;
    std::vector<double> best_per_generation; // best-ever after each generation
};

// (mu/mu_w, lambda)-CMA-ES with Hansen's default parameterization:
// lambda = 4 + floor(3 ln n), mu = lambda/2, log-linear recombination weights,
// cumulative step-size adaptation, rank-one + rank-mu covariance update.
// Out-of-bounds candidates are clamped before evaluation; non-finite objective
// values are penalized with +inf; an all-infinite generation raises
// OptimizerError. Returns the best candidate ever evaluated, which includes
// q_init itself.
CmaResult cma_minimize(const std::function<double(const JointConfig&)>& objective,
                       const JointConfig& q_init, const JointConfig& lo,
                       const JointConfig& hi, const CmaOptions& opt, Rng& rng);

} // namespace skinbabble
