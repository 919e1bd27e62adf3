#include "skinbabble/body.hpp"
#include "skinbabble/errors.hpp"
#include "skinbabble/kinematics.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

using namespace skinbabble;

namespace {

// Independent forward kinematics: 4x4 homogeneous matrices with Rodrigues'
// rotation formula written out, composed the slow way.
Eigen::Matrix4d rodrigues_homog(const Vec3& axis, double angle, const Vec3& translation) {
    const Vec3 k = axis.normalized();
    Eigen::Matrix3d K;
    K << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
    const Eigen::Matrix3d R = std::cos(angle) * Eigen::Matrix3d::Identity() +
                              std::sin(angle) * K +
                              (1.0 - std::cos(angle)) * (k * k.transpose());
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T.topLeftCorner<3, 3>() = R;
    T.topRightCorner<3, 1>() = R * translation;
    return T;
}

Vec3 fk_oracle(const KinematicChain& chain, const JointConfig& q) {
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T.topRightCorner<3, 1>() = chain.arm_base;
    for (std::size_t i = 0; i < chain.arm_dof; ++i)
        T = T * rodrigues_homog(chain.joints[i].axis, q[static_cast<Eigen::Index>(i)],
                                chain.joints[i].post_translation);
    const Eigen::Vector4d tip =
        T * Eigen::Vector4d(chain.tip_offset.x(), chain.tip_offset.y(),
                            chain.tip_offset.z(), 1.0);
    return tip.head<3>();
}

JointConfig random_config(const KinematicChain& chain, Rng& rng) {
    JointConfig q(chain.dof());
    for (std::size_t i = 0; i < chain.dof(); ++i)
        q[static_cast<Eigen::Index>(i)] =
            uniform(rng, chain.joints[i].lo, chain.joints[i].hi);
    return q;
}

} // namespace

TEST_CASE("forward kinematics matches a homogeneous-matrix oracle") {
    Rng rng(42);
    for (const char* body : {"torso", "head"}) {
        const KinematicChain chain = default_chain(body);
        for (int trial = 0; trial < 100; ++trial) {
            const JointConfig q = random_config(chain, rng);
            const Vec3 tip = forward_kinematics(chain, q);
            const Vec3 ref = fk_oracle(chain, q);
            CHECK((tip - ref).norm() < 1e-10);
        }
    }
}

TEST_CASE("zero angles collapse the chain to a translation sum") {
    const KinematicChain chain = default_chain("torso");
    JointConfig q = JointConfig::Zero(static_cast<Eigen::Index>(chain.dof()));
    Vec3 expected = chain.arm_base;
    for (std::size_t i = 0; i < chain.arm_dof; ++i)
        expected += chain.joints[i].post_translation;
    expected += chain.tip_offset;
    CHECK((forward_kinematics(chain, q) - expected).norm() < 1e-14);
}

TEST_CASE("a single z joint at 90 degrees swings +x to +y") {
    KinematicChain chain;
    chain.joints.push_back({Vec3::UnitZ(), -3.2, 3.2, Vec3(1.0, 0.0, 0.0)});
    chain.arm_dof = 1;
    chain.tip_radius = 0.01;
    chain.frames["torso"] = FrameDef{};
    JointConfig q(1);
    q << std::numbers::pi / 2.0;
    const Vec3 tip = forward_kinematics(chain, q);
    CHECK((tip - Vec3(0.0, 1.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("tip motion is Lipschitz in the joint angles") {
    const KinematicChain chain = default_chain("torso");
    const double bound = chain_reach(chain);
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const JointConfig q = random_config(chain, rng);
        JointConfig dq = JointConfig::Zero(q.size());
        for (Eigen::Index i = 0; i < q.size(); ++i)
            dq[i] = 1e-4 * gauss(rng);
        const double moved =
            (forward_kinematics(chain, q + dq) - forward_kinematics(chain, q)).norm();
        CHECK(moved <= bound * dq.template lpNorm<1>() + 1e-12);
    }
}

TEST_CASE("the tip never leaves the reach sphere") {
    for (const char* body : {"torso", "head"}) {
        const KinematicChain chain = default_chain(body);
        const double reach = chain_reach(chain);
        Rng rng(3);
        for (int trial = 0; trial < 500; ++trial) {
            const JointConfig q = random_config(chain, rng);
            CHECK(forward_kinematics(chain, q).norm() <= reach + 1e-12);
        }
    }
}

TEST_CASE("the torso frame ignores the joints entirely") {
    const KinematicChain chain = default_chain("torso");
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Pose pose = frame_pose(chain, "torso", random_config(chain, rng));
        CHECK(pose.p.norm() < 1e-15);
        CHECK((pose.R - Mat3::Identity()).norm() < 1e-15);
    }
}

TEST_CASE("the head frame follows only the neck joints") {
    const KinematicChain chain = default_chain("head");
    Rng rng(13);
    JointConfig a = random_config(chain, rng);
    JointConfig b = random_config(chain, rng);
    b[5] = a[5];
    b[6] = a[6]; // same neck, different arm
    const Pose pa = frame_pose(chain, "head", a);
    const Pose pb = frame_pose(chain, "head", b);
    CHECK((pa.p - pb.p).norm() < 1e-15);
    CHECK((pa.R - pb.R).norm() < 1e-15);

    // Neck at zero: base offset plus the straight neck link.
    JointConfig zero = JointConfig::Zero(7);
    const Pose pz = frame_pose(chain, "head", zero);
    Vec3 expected = chain.frames.at("head").base_translation;
    for (std::size_t j : chain.frames.at("head").joints)
        expected += chain.joints[j].post_translation;
    CHECK((pz.p - expected).norm() < 1e-14);
    CHECK((pz.R - Mat3::Identity()).norm() < 1e-14);
}

TEST_CASE("frame_pose rejects unknown frames") {
    const KinematicChain chain = default_chain("torso");
    const JointConfig q = JointConfig::Zero(5);
    CHECK_THROWS_AS(frame_pose(chain, "tail", q), ConfigError);
}

TEST_CASE("clamping is idempotent and tight") {
    const KinematicChain chain = default_chain("torso");
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        JointConfig q(5);
        for (Eigen::Index i = 0; i < 5; ++i)
            q[i] = uniform(rng, -4.0, 4.0);
        const JointConfig c = clamp_to_limits(chain, q);
        const JointConfig cc = clamp_to_limits(chain, c);
        CHECK((c - cc).norm() == 0.0);
        for (std::size_t i = 0; i < 5; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            CHECK(c[k] >= chain.joints[i].lo);
            CHECK(c[k] <= chain.joints[i].hi);
            if (q[k] >= chain.joints[i].lo && q[k] <= chain.joints[i].hi)
                CHECK(c[k] == q[k]);
        }
    }
}

TEST_CASE("uniform sampling stays inside the centered sub-range") {
    const KinematicChain chain = default_chain("torso");
    Rng rng(21);
    for (double sub : {0.25, 0.5, 1.0}) {
        for (int trial = 0; trial < 2000; ++trial) {
            const JointConfig q = sample_uniform_config(chain, sub, rng);
            for (std::size_t i = 0; i < chain.dof(); ++i) {
                const RevoluteJoint& j = chain.joints[i];
                const double mid = 0.5 * (j.lo + j.hi);
                const double half = 0.5 * sub * (j.hi - j.lo);
                const double v = q[static_cast<Eigen::Index>(i)];
                CHECK(v >= mid - half);
                CHECK(v <= mid + half);
            }
        }
    }
}

TEST_CASE("uniform sampling draws one value per joint in joint order") {
    const KinematicChain chain = default_chain("torso");
    Rng rng_a(99), rng_b(99);
    const JointConfig q = sample_uniform_config(chain, 0.5, rng_a);
    for (std::size_t i = 0; i < chain.dof(); ++i) {
        const RevoluteJoint& j = chain.joints[i];
        const double mid = 0.5 * (j.lo + j.hi);
        const double half = 0.25 * (j.hi - j.lo); // sub_range 0.5
        const double expected = mid - half + uniform01(rng_b) * 2.0 * half;
        CHECK(q[static_cast<Eigen::Index>(i)] == doctest::Approx(expected).epsilon(1e-15));
    }
    CHECK(rng_a == rng_b); // consumed exactly dof draws
}

TEST_CASE("sample means converge to the joint midpoints") {
    const KinematicChain chain = default_chain("torso");
    Rng rng(1234);
    JointConfig sum = JointConfig::Zero(5);
    const int n = 20000;
    for (int trial = 0; trial < n; ++trial)
        sum += sample_uniform_config(chain, 0.25, rng);
    for (std::size_t i = 0; i < 5; ++i) {
        const RevoluteJoint& j = chain.joints[i];
        const double mid = 0.5 * (j.lo + j.hi);
        const double half = 0.125 * (j.hi - j.lo);
        // mean of U(mid-half, mid+half): s.e. = half/sqrt(3n); allow 5 sigma
        const double tol = 5.0 * half / std::sqrt(3.0 * n);
        CHECK(std::abs(sum[static_cast<Eigen::Index>(i)] / n - mid) < tol);
    }
}

TEST_CASE("chain validation names the broken field") {
    KinematicChain chain = default_chain("torso");
    chain.joints[2].axis = Vec3(0.5, 0.5, 0.0);
    CHECK_THROWS_WITH_AS(validate_chain(chain),
                         doctest::Contains("joints[2].axis"), ConfigError);

    chain = default_chain("torso");
    chain.joints[0].lo = 2.0;
    chain.joints[0].hi = -2.0;
    CHECK_THROWS_AS(validate_chain(chain), ConfigError);

    chain = default_chain("torso");
    chain.tip_radius = 0.0;
    CHECK_THROWS_AS(validate_chain(chain), ConfigError);

    chain = default_chain("torso");
    chain.frames["head"] = FrameDef{Vec3::Zero(), {9}};
    CHECK_THROWS_AS(validate_chain(chain), ConfigError);

    chain = default_chain("torso");
    chain.arm_dof = 6;
    CHECK_THROWS_AS(validate_chain(chain), ConfigError);
}

TEST_CASE("reach bound equals the sum of the link lengths") {
    const KinematicChain chain = default_chain("torso");
    double expected = chain.arm_base.norm() + chain.tip_offset.norm();
    for (std::size_t i = 0; i < chain.arm_dof; ++i)
        expected += chain.joints[i].post_translation.norm();
    CHECK(chain_reach(chain) == doctest::Approx(expected).epsilon(1e-15));
}
