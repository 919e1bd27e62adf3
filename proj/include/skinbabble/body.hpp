#pragma once

#include "skinbabble/kinematics.hpp"
#include "skinbabble/skin.hpp"

#include <string>

namespace skinbabble {

// Built-in body geometry, approximating a small humanoid: a 5-DoF arm
// (shoulder pitch/roll, elbow yaw/roll, wrist yaw) holding a sphere-tipped
// pen, plus a 2-DoF neck (yaw, pitch) for the head experiments. Joint limits
// are the sub-ranges from which the arm can actually reach the skin; the full
// mechanical ranges are not modeled. All of it is config data, overridable
// per experiment, not a claim about any particular robot.

// body: "torso" (5 DoF) | "head" (7 DoF, neck appended).
KinematicChain default_chain(const std::string& body);

// resolution: "low" (sparse planar patch) | "high" (dense cylindrical patch).
PatchSpec default_patch_spec(const std::string& body, const std::string& resolution);

} // namespace skinbabble
