#pragma once

#include "skinbabble/kinematics.hpp"
#include "skinbabble/observation.hpp"
#include "skinbabble/skin.hpp"

#include <atomic>
#include <optional>

namespace skinbabble {

struct ExecResult {
    std::optional<int> taxel; // activated taxel nearest the contact footprint
    std::optional<Obs> obs;   // its projection; empty on a miss

    bool touched() const { return taxel.has_value(); }
};

// The simulated world a strategy interacts with: chain + skin + projection.
// execute() is the only way observations are produced; it clamps the command,
// runs forward kinematics, tests skin contact and reduces multi-taxel
// activations to the taxel nearest the footprint.
class Environment {
public:
    Environment(KinematicChain chain, SkinPatch patch, double goal_padding);

    Environment(const Environment& other);
    Environment& operator=(const Environment&) = delete;

    ExecResult execute(const JointConfig& q) const;

    const KinematicChain& chain() const { return chain_; }
    const SkinPatch& patch() const { return patch_; }
    const Projection& projection() const { return proj_; }
    const Rect& goal_bounds() const { return goal_bounds_; }

    // Competence assigned to a missed goal; defaults to the goal rectangle's
    // diameter so a miss always looks worse than any in-bounds reach.
    double d_miss() const { return d_miss_; }
    void set_d_miss(double v) { d_miss_ = v; }

    long executions() const { return executions_.load(std::memory_order_relaxed); }

private:
    KinematicChain chain_;
    SkinPatch patch_;
    Projection proj_;
    Rect goal_bounds_;
    double d_miss_ = 0.0;
    mutable std::atomic<long> executions_{0};
};

} // namespace skinbabble
