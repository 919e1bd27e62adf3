#include "skinbabble/cma_es.hpp"

#include "skinbabble/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace skinbabble {

CmaResult cma_minimize(const std::function<double(const JointConfig&)>& objective,
                       const JointConfig& q_init, const JointConfig& lo,
                       const JointConfig& hi, const CmaOptions& opt, Rng& rng) {
    const Eigen::Index n = q_init.size();
    if (n < 1 || lo.size() != n || hi.size() != n)
        throw ConfigError("cma: dimension mismatch between q_init and bounds");
    if (opt.generations < 1)
        throw ConfigError("cma: generations must be >= 1");
    for (Eigen::Index i = 0; i < n; ++i)
        if (q_init[i] < lo[i] || q_init[i] > hi[i])
            throw ConfigError("cma: q_init outside bounds");

    const double nd = static_cast<double>(n);
    const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(nd)));
    const int mu = lambda / 2;
    Eigen::VectorXd weights(mu);
    for (int i = 0; i < mu; ++i)
        weights[i] = std::log(mu + 0.5) - std::log(i + 1.0);
    weights /= weights.sum();
    const double mu_eff = 1.0 / weights.squaredNorm();

    const double c_sigma = (mu_eff + 2.0) / (nd + mu_eff + 5.0);
    const double d_sigma =
        1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (nd + 1.0)) - 1.0) + c_sigma;
    const double c_c = (4.0 + mu_eff / nd) / (nd + 4.0 + 2.0 * mu_eff / nd);
    const double c_1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mu_eff);
    const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                                ((nd + 2.0) * (nd + 2.0) + mu_eff));
    const double chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

    double sigma = opt.sigma0;
    if (sigma <= 0.0) {
        sigma = 0.3 * (hi - lo).mean() * 0.5;
        if (sigma <= 0.0)
            sigma = 0.3;
    }

    const double inf = std::numeric_limits<double>::infinity();
    auto eval = [&](const JointConfig& q) {
        const double f = objective(q);
        return std::isfinite(f) ? f : inf;
    };

    CmaResult res;
    res.q_best = q_init;
    res.f_best = eval(q_init);
    res.evaluations = 1;
    if (opt.max_evaluations >= 0 && res.evaluations >= opt.max_evaluations)
        return res;

    Eigen::VectorXd mean = q_init;
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd p_c = Eigen::VectorXd::Zero(n);

    std::vector<Eigen::VectorXd> xs(lambda), ys(lambda);
    std::vector<double> fs(lambda);

    for (int gen = 0; gen < opt.generations; ++gen) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
        Eigen::VectorXd evals = es.eigenvalues();
        const Eigen::MatrixXd& B = es.eigenvectors();
        bool repaired = false;
        for (Eigen::Index i = 0; i < n; ++i)
            if (evals[i] < 1e-14) {
                evals[i] = 1e-14;
                repaired = true;
            }
        if (repaired)
            C = B * evals.asDiagonal() * B.transpose();
        const Eigen::VectorXd D = evals.cwiseSqrt();

        int sampled = 0;
        bool budget_hit = false;
        for (int k = 0; k < lambda; ++k) {
            Eigen::VectorXd z(n);
            for (Eigen::Index i = 0; i < n; ++i)
                z[i] = gauss(rng);
            Eigen::VectorXd x = mean + sigma * (B * D.asDiagonal() * z);
            for (Eigen::Index i = 0; i < n; ++i)
                x[i] = std::clamp(x[i], lo[i], hi[i]);
            const double f = eval(x);
            ++res.evaluations;
            xs[k] = x;
            ys[k] = (x - mean) / sigma; // post-clamp displacement
            fs[k] = f;
            ++sampled;
            if (f < res.f_best) {
                res.f_best = f;
                res.q_best = x;
            }
            if (opt.max_evaluations >= 0 && res.evaluations >= opt.max_evaluations) {
                budget_hit = true;
                break;
            }
        }
        if (budget_hit && sampled < lambda) {
            // Partial generation: candidates already count for best-ever but
            // cannot support a distribution update.
            res.best_per_generation.push_back(res.f_best);
            return res;
        }

        bool any_finite = false;
        for (int k = 0; k < lambda; ++k)
            any_finite = any_finite || std::isfinite(fs[k]);
        if (!any_finite)
            throw OptimizerError("cma: every candidate in a generation was non-finite");

        std::vector<int> order(lambda);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fs[a] < fs[b]; });

        Eigen::VectorXd mean_new = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < mu; ++i)
            mean_new += weights[i] * xs[order[i]];
        const Eigen::VectorXd y_w = (mean_new - mean) / sigma;

        const Eigen::MatrixXd C_inv_sqrt =
            B * D.cwiseInverse().asDiagonal() * B.transpose();
        p_sigma = (1.0 - c_sigma) * p_sigma +
                  std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * (C_inv_sqrt * y_w);
        const double ps_norm = p_sigma.norm();
        const double expected =
            std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * (gen + 1)));
        const bool h_sigma = ps_norm / expected < (1.4 + 2.0 / (nd + 1.0)) * chi_n;

        p_c = (1.0 - c_c) * p_c;
        if (h_sigma)
            p_c += std::sqrt(c_c * (2.0 - c_c) * mu_eff) * y_w;

        Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < mu; ++i) {
            const Eigen::VectorXd& y = ys[order[i]];
            rank_mu += weights[i] * (y * y.transpose());
        }
        C = (1.0 - c_1 - c_mu) * C +
            c_1 * (p_c * p_c.transpose() +
                   (h_sigma ? 0.0 : c_c * (2.0 - c_c)) * C) +
            c_mu * rank_mu;
        C = 0.5 * (C + C.transpose());

        sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));
        sigma = std::clamp(sigma, 1e-16, 1e6);

        mean = mean_new;
        res.best_per_generation.push_back(res.f_best);
        if (budget_hit)
            break;
    }
    return res;
}

} // namespace skinbabble
