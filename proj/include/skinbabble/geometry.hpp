#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace skinbabble {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Obs = Eigen::Vector2d;       // point in the 2-D observation space
using JointConfig = Eigen::VectorXd;

inline Mat3 axis_rotation(const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

// Rigid transform: world = R * local + p.
struct Pose {
    Mat3 R = Mat3::Identity();
    Vec3 p = Vec3::Zero();

    Vec3 apply(const Vec3& local) const { return R * local + p; }
    Vec3 to_local(const Vec3& world) const { return R.transpose() * (world - p); }
};

// Axis-aligned rectangle in observation space.
struct Rect {
    double u0 = 0, v0 = 0, u1 = 0, v1 = 0;

    double width() const { return u1 - u0; }
    double height() const { return v1 - v0; }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(const Obs& x) const {
        return x[0] >= u0 && x[0] <= u1 && x[1] >= v0 && x[1] <= v1;
    }
};

} // namespace skinbabble
