#include "skinbabble/interest.hpp"

#include "skinbabble/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skinbabble {

InterestGrid::InterestGrid(int m, int n, const Rect& bounds, double initial_interest,
                           bool window_mode, int window_size)
    : m_(m), n_(n), bounds_(bounds), window_mode_(window_mode),
      window_size_(window_size) {
    if (m < 1 || n < 1)
        throw ConfigError("interest grid: cell counts must be >= 1");
    if (!(bounds.width() > 0.0) || !(bounds.height() > 0.0))
        throw ConfigError("interest grid: bounds must have positive extent");
    if (initial_interest < 0.0 || !std::isfinite(initial_interest))
        throw ConfigError("interest grid: initial interest must be finite and >= 0");
    if (window_mode && window_size < 2)
        throw ConfigError("interest grid: window size must be >= 2");
    interest_.assign(static_cast<std::size_t>(m) * n, initial_interest);
    last_competence_.assign(interest_.size(), std::nullopt);
    visits_.assign(interest_.size(), 0);
    if (window_mode_)
        history_.assign(interest_.size(), {});
}

int InterestGrid::cell_of(const Obs& x) const {
    const double fu = (x[0] - bounds_.u0) / bounds_.width();
    const double fv = (x[1] - bounds_.v0) / bounds_.height();
    const int i = std::clamp(static_cast<int>(fu * m_), 0, m_ - 1);
    const int j = std::clamp(static_cast<int>(fv * n_), 0, n_ - 1);
    return i * n_ + j;
}

Rect InterestGrid::cell_bounds(int cell) const {
    const int i = cell / n_;
    const int j = cell % n_;
    const double du = bounds_.width() / m_;
    const double dv = bounds_.height() / n_;
    return {bounds_.u0 + i * du, bounds_.v0 + j * dv, bounds_.u0 + (i + 1) * du,
            bounds_.v0 + (j + 1) * dv};
}

int InterestGrid::select_cell(Rng& rng, double epsilon) const {
    const int count = cells();
    auto uniform_cell = [&]() {
        return std::min(static_cast<int>(uniform01(rng) * count), count - 1);
    };
    if (uniform01(rng) < epsilon)
        return uniform_cell();
    const double total = std::accumulate(interest_.begin(), interest_.end(), 0.0);
    if (total <= 0.0)
        return uniform_cell();
    const double r = uniform01(rng) * total;
    double acc = 0.0;
    for (int c = 0; c < count; ++c) {
        acc += interest_[static_cast<std::size_t>(c)];
        if (r < acc)
            return c;
    }
    return count - 1; // numeric tail
}

Obs InterestGrid::sample_goal(int cell, Rng& rng) const {
    const Rect b = cell_bounds(cell);
    const double u = uniform(rng, b.u0, b.u1);
    const double v = uniform(rng, b.v0, b.v1);
    return {u, v};
}

void InterestGrid::update(int cell, double competence) {
    auto c = static_cast<std::size_t>(cell);
    ++visits_[c];
    if (window_mode_) {
        auto& h = history_[c];
        h.push_back(competence);
        if (static_cast<int>(h.size()) > window_size_)
            h.pop_front();
        if (h.size() >= 2) {
            // Interest = |mean of newer half - mean of older half|.
            const std::size_t lower = h.size() / 2;
            double a = 0.0, b = 0.0;
            for (std::size_t i = 0; i < lower; ++i)
                a += h[i];
            for (std::size_t i = lower; i < h.size(); ++i)
                b += h[i];
            a /= static_cast<double>(lower);
            b /= static_cast<double>(h.size() - lower);
            interest_[c] = std::abs(b - a);
        }
        last_competence_[c] = competence;
        return;
    }
    if (last_competence_[c].has_value())
        interest_[c] = std::abs(competence - *last_competence_[c]);
    last_competence_[c] = competence;
}

} // namespace skinbabble
