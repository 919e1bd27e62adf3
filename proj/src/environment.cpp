#include "skinbabble/environment.hpp"

namespace skinbabble {

Environment::Environment(KinematicChain chain, SkinPatch patch, double goal_padding)
    : chain_(std::move(chain)), patch_(std::move(patch)),
      proj_(Projection::for_patch(patch_)) {
    validate_chain(chain_);
    goal_bounds_ = proj_.goal_bounds(goal_padding);
    d_miss_ = goal_bounds_.diameter();
}

Environment::Environment(const Environment& other)
    : chain_(other.chain_), patch_(other.patch_), proj_(other.proj_),
      goal_bounds_(other.goal_bounds_), d_miss_(other.d_miss_),
      executions_(other.executions()) {}

ExecResult Environment::execute(const JointConfig& q) const {
    executions_.fetch_add(1, std::memory_order_relaxed);
    const JointConfig qc = clamp_to_limits(chain_, q);
    const Vec3 tip = forward_kinematics(chain_, qc);
    const Pose pose = frame_pose(chain_, patch_.frame, qc);
    const ContactResult contact = detect_contact(patch_, tip, chain_.tip_radius, pose);
    ExecResult r;
    if (auto taxel = nearest_activated(patch_, contact)) {
        r.taxel = *taxel;
        r.obs = proj_.taxel_uv()[static_cast<std::size_t>(*taxel)];
    }
    return r;
}

} // namespace skinbabble
