#pragma once

#include "skinbabble/geometry.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace skinbabble {

// Insertion-ordered (q, x) sample store. The inverse model is strict 1-NN in
// observation space; no averaging over neighbors. Lookups are linear scans —
// databases stay small (one entry per touch, at most one per iteration) and
// the scan is its own correctness definition.
class SampleDatabase {
public:
    void insert(const JointConfig& q, const Obs& x);

    std::size_t size() const { return q_.size(); }
    bool empty() const { return q_.empty(); }
    int dim() const { return q_.empty() ? -1 : static_cast<int>(q_.front().size()); }

    const JointConfig& q_at(std::size_t i) const { return q_[i]; }
    const Obs& x_at(std::size_t i) const { return x_[i]; }

    // Entry minimizing ||x_entry - goal||, earliest insertion wins ties.
    // Throws ModelError when empty.
    std::size_t nn_index(const Obs& goal) const;
    const JointConfig& nn_inverse(const Obs& goal) const { return q_[nn_index(goal)]; }

    // Locally weighted linear regression q -> x: weighted affine fit over the
    // k nearest stored configurations (Gaussian weights in joint space) with
    // ridge-stabilized normal equations. bandwidth <= 0 selects the mean
    // distance to the k neighbors. Throws ModelError if size < k.
    Obs lwlr_forward(const JointConfig& q_query, int k_neighbors, double bandwidth,
                     double ridge) const;

private:
    std::vector<JointConfig> q_;
    std::vector<Obs> x_;
};

// CSV persistence: header q1..qn,u,v; one row per entry in insertion order.
void write_database_csv(const SampleDatabase& db, std::ostream& out);
SampleDatabase read_database_csv(std::istream& in);

} // namespace skinbabble
