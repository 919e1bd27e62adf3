#include "skinbabble/kinematics.hpp"

#include "skinbabble/errors.hpp"

#include <algorithm>
#include <cmath>

namespace skinbabble {

namespace {

void check_dim(const KinematicChain& chain, const JointConfig& q) {
    if (static_cast<std::size_t>(q.size()) != chain.dof())
        throw ConfigError("q: dimension " + std::to_string(q.size()) +
                          " does not match chain DoF " + std::to_string(chain.dof()));
}

// Composes rotate-then-translate for each listed joint, in order.
Pose compose(const std::vector<RevoluteJoint>& joints,
             const std::vector<std::size_t>& indices, const Vec3& base,
             const JointConfig& q) {
    Pose pose;
    pose.p = base;
    for (std::size_t idx : indices) {
        const RevoluteJoint& j = joints[idx];
        pose.R = pose.R * axis_rotation(j.axis, q[static_cast<Eigen::Index>(idx)]);
        pose.p += pose.R * j.post_translation;
    }
    return pose;
}

} // namespace

void validate_chain(const KinematicChain& chain) {
    if (chain.joints.empty())
        throw ConfigError("chain.joints: must not be empty");
    if (chain.arm_dof == 0 || chain.arm_dof > chain.dof())
        throw ConfigError("chain.arm_dof: must be in [1, dof]");
    for (std::size_t i = 0; i < chain.joints.size(); ++i) {
        const RevoluteJoint& j = chain.joints[i];
        if (std::abs(j.axis.norm() - 1.0) > 1e-9)
            throw ConfigError("chain.joints[" + std::to_string(i) + "].axis: not unit length");
        if (!(j.lo < j.hi))
            throw ConfigError("chain.joints[" + std::to_string(i) + "].limits: min must be < max");
    }
    if (!(chain.tip_radius > 0.0))
        throw ConfigError("chain.tip_radius: must be > 0");
    for (const auto& [name, frame] : chain.frames)
        for (std::size_t idx : frame.joints)
            if (idx >= chain.dof())
                throw ConfigError("chain.frames." + name + ": joint index out of range");
}

JointConfig clamp_to_limits(const KinematicChain& chain, JointConfig q) {
    check_dim(chain, q);
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        const RevoluteJoint& j = chain.joints[static_cast<std::size_t>(i)];
        q[i] = std::clamp(q[i], j.lo, j.hi);
    }
    return q;
}

Pose effector_pose(const KinematicChain& chain, const JointConfig& q) {
    check_dim(chain, q);
    std::vector<std::size_t> arm(chain.arm_dof);
    for (std::size_t i = 0; i < chain.arm_dof; ++i)
        arm[i] = i;
    return compose(chain.joints, arm, chain.arm_base, q);
}

Vec3 forward_kinematics(const KinematicChain& chain, const JointConfig& q) {
    return effector_pose(chain, q).apply(chain.tip_offset);
}

Pose frame_pose(const KinematicChain& chain, const std::string& frame_name,
                const JointConfig& q) {
    check_dim(chain, q);
    auto it = chain.frames.find(frame_name);
    if (it == chain.frames.end())
        throw ConfigError("frame: unknown name '" + frame_name + "'");
    return compose(chain.joints, it->second.joints, it->second.base_translation, q);
}

JointConfig sample_uniform_config(const KinematicChain& chain, double sub_range,
                                  Rng& rng) {
    if (!(sub_range > 0.0 && sub_range <= 1.0))
        throw ConfigError("sub_range: must be in (0, 1]");
    JointConfig q(static_cast<Eigen::Index>(chain.dof()));
    for (std::size_t i = 0; i < chain.dof(); ++i) {
        const RevoluteJoint& j = chain.joints[i];
        const double center = 0.5 * (j.lo + j.hi);
        const double half = 0.5 * (j.hi - j.lo) * sub_range;
        q[static_cast<Eigen::Index>(i)] = uniform(rng, center - half, center + half);
    }
    return q;
}

double chain_reach(const KinematicChain& chain) {
    double reach = chain.arm_base.norm() + chain.tip_offset.norm();
    for (std::size_t i = 0; i < chain.arm_dof; ++i)
        reach += chain.joints[i].post_translation.norm();
    return reach;
}

} // namespace skinbabble
