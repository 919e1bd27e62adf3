#pragma once

#include "skinbabble/geometry.hpp"
#include "skinbabble/rng.hpp"

#include <deque>
#include <optional>
#include <vector>

namespace skinbabble {

// m x n discretization of the goal rectangle. Each cell carries an interest
// value I driving goal selection: competence C is the goal-to-outcome distance
// (or a miss penalty) and I is the absolute change of C between successive
// visits to the same cell. Unvisited cells keep their initial interest.
class InterestGrid {
public:
    InterestGrid(int m, int n, const Rect& bounds, double initial_interest,
                 bool window_mode = false, int window_size = 4);

    int cells() const { return m_ * n_; }
    int rows() const { return m_; }
    int cols() const { return n_; }
    const Rect& bounds() const { return bounds_; }

    // Cell containing x; points outside the bounds clamp to the border cells.
    int cell_of(const Obs& x) const;
    Rect cell_bounds(int cell) const;

    // With probability epsilon a uniformly random cell, otherwise cell j with
    // probability I_j / sum(I); uniform when all interest is zero.
    int select_cell(Rng& rng, double epsilon) const;

    // Uniform goal inside the cell (u drawn first, then v).
    Obs sample_goal(int cell, Rng& rng) const;

    void update(int cell, double competence);

    const std::vector<double>& interest() const { return interest_; }
    const std::vector<std::optional<double>>& last_competence() const {
        return last_competence_;
    }
    const std::vector<int>& visits() const { return visits_; }

    // Test hook: pin a cell's interest directly.
    void set_interest(int cell, double value) { interest_[cell] = value; }

private:
    int m_ = 0, n_ = 0;
    Rect bounds_;
    bool window_mode_ = false;
    int window_size_ = 4;
    std::vector<double> interest_;
    std::vector<std::optional<double>> last_competence_;
    std::vector<int> visits_;
    std::vector<std::deque<double>> history_; // window mode only
};

} // namespace skinbabble
