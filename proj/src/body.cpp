#include "skinbabble/body.hpp"

#include "skinbabble/errors.hpp"

namespace skinbabble {

namespace {

// Shared arm layout: shoulder pitch (y), shoulder roll (z) + upper arm,
// elbow yaw (x twist), elbow roll (z) + forearm, wrist yaw (x twist).
// Limits differ per experiment: each is a window around a posture from which
// the pen comfortably reaches the respective skin region.
const Vec3 kShoulder{0.0, -0.098, 0.100};
const Vec3 kUpperArm{0.105, 0.0, 0.0};
const Vec3 kForearm{0.112, 0.0, 0.0};
const Vec3 kTipOffset{0.0, 0.0, -0.03};
constexpr double kTipRadius = 0.015;

const Vec3 kNeckBase{0.0, 0.0, 0.16};
const Vec3 kHeadOffset{0.0, 0.0, 0.065};

KinematicChain arm_with_limits(const double (*lim)[2]) {
    KinematicChain c;
    c.arm_base = kShoulder;
    c.tip_offset = kTipOffset;
    c.tip_radius = kTipRadius;
    c.arm_dof = 5;
    c.joints = {
        {Vec3::UnitY(), lim[0][0], lim[0][1], Vec3::Zero()},
        {Vec3::UnitZ(), lim[1][0], lim[1][1], kUpperArm},
        {Vec3::UnitX(), lim[2][0], lim[2][1], Vec3::Zero()},
        {Vec3::UnitZ(), lim[3][0], lim[3][1], kForearm},
        {Vec3::UnitX(), lim[4][0], lim[4][1], Vec3::Zero()},
    };
    c.frames["torso"] = FrameDef{};
    return c;
}

} // namespace

KinematicChain default_chain(const std::string& body) {
    if (body == "torso") {
        static const double lim[5][2] = {{-0.044, 1.756},
                                         {-0.923, 0.877},
                                         {-1.294, 2.306},
                                         {1.367, 2.967},
                                         {-2.109, 1.491}};
        return arm_with_limits(lim);
    }
    if (body == "head") {
        static const double lim[5][2] = {{-1.156, 0.444},
                                         {-0.007, 1.593},
                                         {0.448, 3.448},
                                         {0.634, 2.434},
                                         {-1.371, 2.229}};
        KinematicChain c = arm_with_limits(lim);
        // Neck yaw then pitch; the head frame hangs off the pitch joint.
        c.joints.push_back({Vec3::UnitZ(), -1.371, -0.371, Vec3::Zero()});
        c.joints.push_back({Vec3::UnitY(), -0.395, 0.405, kHeadOffset});
        c.frames["head"] = FrameDef{kNeckBase, {5, 6}};
        return c;
    }
    throw ConfigError("body: must be 'torso' or 'head', got '" + body + "'");
}

PatchSpec default_patch_spec(const std::string& body, const std::string& resolution) {
    const bool low = resolution == "low";
    if (!low && resolution != "high")
        throw ConfigError("resolution: must be 'low' or 'high', got '" + resolution + "'");

    PatchSpec spec;
    spec.name = body;
    if (body == "torso") {
        spec.frame = "torso";
        if (low) {
            PlanarSurface s;
            s.origin = {0.045, 0.0, 0.075};
            s.axis_u = Vec3::UnitY();
            s.axis_v = Vec3::UnitZ();
            s.half_u = 0.06;
            s.half_v = 0.06;
            spec.surface = s;
            spec.rows = 5;
            spec.cols = 5;
            spec.expected_count = 25;
        } else {
            CylinderSurface s;
            s.center = {-0.015, 0.0, 0.075};
            s.radius = 0.06;
            s.theta0 = -1.0;
            s.theta1 = 1.0;
            s.h0 = 0.015;
            s.h1 = 0.135;
            spec.surface = s;
            spec.rows = 25;
            spec.cols = 10;
            spec.expected_count = 250;
        }
        return spec;
    }
    if (body == "head") {
        spec.frame = "head";
        if (low) {
            PlanarSurface s;
            s.origin = {0.045, 0.0, 0.01};
            s.axis_u = Vec3::UnitY();
            s.axis_v = Vec3::UnitZ();
            s.half_u = 0.039;
            s.half_v = 0.026;
            spec.surface = s;
            spec.rows = 6;
            spec.cols = 4;
            spec.expected_count = 24;
        } else {
            CylinderSurface s;
            s.center = {-0.055, 0.0, 0.01};
            s.radius = 0.10;
            s.theta0 = -0.55;
            s.theta1 = 0.55;
            s.h0 = -0.045;
            s.h1 = 0.055;
            spec.surface = s;
            spec.rows = 24;
            spec.cols = 10;
            spec.expected_count = 240;
        }
        return spec;
    }
    throw ConfigError("body: must be 'torso' or 'head', got '" + body + "'");
}

} // namespace skinbabble
