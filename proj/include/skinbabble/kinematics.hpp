#pragma once

#include "skinbabble/geometry.hpp"
#include "skinbabble/rng.hpp"

#include <map>
#include <string>
#include <vector>

namespace skinbabble {

// One revolute joint: rotate about `axis` by q, then translate by
// `post_translation` expressed in the rotated frame.
struct RevoluteJoint {
    Vec3 axis = Vec3::UnitZ();
    double lo = 0.0;
    double hi = 0.0;
    Vec3 post_translation = Vec3::Zero();
};

// A named frame driven by a subset of the chain's joints, e.g. the head frame
// follows the two neck joints while the torso frame is the fixed base.
struct FrameDef {
    Vec3 base_translation = Vec3::Zero();
    std::vector<std::size_t> joints; // indices into KinematicChain::joints
};

struct KinematicChain {
    std::vector<RevoluteJoint> joints; // all degrees of freedom, q indexes this
    std::size_t arm_dof = 0;           // joints [0, arm_dof) drive the effector
    Vec3 arm_base = Vec3::Zero();      // translation from world to the first arm joint
    Vec3 tip_offset = Vec3::Zero();    // sphere-tip center in the last arm frame
    double tip_radius = 0.0;
    std::map<std::string, FrameDef> frames;

    std::size_t dof() const { return joints.size(); }
};

// Throws ConfigError on non-unit axes, inverted limits, non-positive tip
// radius, or frame joint indices out of range.
void validate_chain(const KinematicChain& chain);

JointConfig clamp_to_limits(const KinematicChain& chain, JointConfig q);

// Pose of the last arm link (tip offset not applied).
Pose effector_pose(const KinematicChain& chain, const JointConfig& q);

// World position of the sphere-tip center.
Vec3 forward_kinematics(const KinematicChain& chain, const JointConfig& q);

Pose frame_pose(const KinematicChain& chain, const std::string& frame_name,
                const JointConfig& q);

// Uniform sample over a centered sub-interval of each joint's limits;
// sub_range = 1 covers the full range. One uniform draw per joint, in order.
JointConfig sample_uniform_config(const KinematicChain& chain, double sub_range,
                                  Rng& rng);

// Upper bound on the tip distance from the origin over all configurations.
double chain_reach(const KinematicChain& chain);

} // namespace skinbabble
