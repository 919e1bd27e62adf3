#include "skinbabble/body.hpp"
#include "skinbabble/errors.hpp"
#include "skinbabble/observation.hpp"
#include "skinbabble/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace skinbabble;

namespace {

SkinPatch make(const char* body, const char* res) {
    return generate_skin(default_patch_spec(body, res), 0.015);
}

} // namespace

TEST_CASE("planar projection is an isometry of the patch plane") {
    const SkinPatch patch = make("torso", "low");
    const Projection proj = Projection::for_patch(patch);
    const auto& pl = std::get<PlanarSurface>(patch.surface);
    Rng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec3 a = pl.origin + uniform(rng, -0.1, 0.1) * pl.axis_u +
                       uniform(rng, -0.1, 0.1) * pl.axis_v;
        const Vec3 b = pl.origin + uniform(rng, -0.1, 0.1) * pl.axis_u +
                       uniform(rng, -0.1, 0.1) * pl.axis_v;
        CHECK(distance(proj.project(a), proj.project(b)) ==
              doctest::Approx((a - b).norm()).epsilon(1e-12));
    }
}

TEST_CASE("planar u and v read off the in-plane coordinates") {
    const SkinPatch patch = make("torso", "low");
    const Projection proj = Projection::for_patch(patch);
    const auto& pl = std::get<PlanarSurface>(patch.surface);
    const Obs at_origin = proj.project(pl.origin);
    const Obs shifted = proj.project(pl.origin + 0.03 * pl.axis_u - 0.01 * pl.axis_v);
    CHECK((shifted - at_origin - Obs(0.03, -0.01)).norm() < 1e-12);
    // off-plane displacement is invisible to a parallel projection
    const Obs lifted = proj.project(pl.origin + 0.02 * pl.normal());
    CHECK((lifted - at_origin).norm() < 1e-12);
}

TEST_CASE("cylindrical u is arc length, v is the axial coordinate") {
    const SkinPatch patch = make("torso", "high");
    const Projection proj = Projection::for_patch(patch);
    const auto& cy = std::get<CylinderSurface>(patch.surface);
    Rng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const double th = uniform(rng, cy.theta0, cy.theta1);
        const double h = uniform(rng, cy.h0, cy.h1);
        const double rad = uniform(rng, 0.5 * cy.radius, 2.0 * cy.radius);
        const Vec3 p = cy.center + Vec3(rad * std::cos(th), rad * std::sin(th), h);
        const Obs x = proj.project(p) - proj.project(cy.center + Vec3(cy.radius, 0.0, 0.0));
        // independent oracle: u = r * atan2-angle (span within (-pi, pi), so
        // no unwrap needed), measured from theta = 0; v = height
        CHECK(x[0] == doctest::Approx(cy.radius * th).epsilon(1e-10));
        CHECK(x[1] == doctest::Approx(h).epsilon(1e-10));
    }
}

TEST_CASE("the radial distance of the point does not affect its projection") {
    const SkinPatch patch = make("head", "high");
    const Projection proj = Projection::for_patch(patch);
    const auto& cy = std::get<CylinderSurface>(patch.surface);
    const double th = 0.3, h = 0.02;
    const Obs near = proj.project(cy.center + Vec3(0.3 * cy.radius * std::cos(th),
                                                   0.3 * cy.radius * std::sin(th), h));
    const Obs far = proj.project(cy.center + Vec3(3.0 * cy.radius * std::cos(th),
                                                  3.0 * cy.radius * std::sin(th), h));
    CHECK((near - far).norm() < 1e-12);
}

TEST_CASE("u grows monotonically with the angle across the whole span") {
    const SkinPatch patch = make("head", "high");
    const Projection proj = Projection::for_patch(patch);
    const auto& cy = std::get<CylinderSurface>(patch.surface);
    double prev = -1e9;
    for (int k = 0; k <= 200; ++k) {
        const double th = cy.theta0 + (cy.theta1 - cy.theta0) * k / 200.0;
        const Obs x = proj.project(
            cy.center + Vec3(cy.radius * std::cos(th), cy.radius * std::sin(th), 0.0));
        CHECK(x[0] > prev);
        prev = x[0];
    }
}

TEST_CASE("points on the cylinder axis cannot be projected") {
    const SkinPatch patch = make("torso", "high");
    const Projection proj = Projection::for_patch(patch);
    const auto& cy = std::get<CylinderSurface>(patch.surface);
    CHECK_THROWS_AS(proj.project(cy.center + Vec3(0.0, 0.0, 0.03)), ProjectionError);
}

TEST_CASE("projected taxels are centered on their centroid") {
    for (const char* body : {"torso", "head"})
        for (const char* res : {"low", "high"}) {
            const Projection proj = Projection::for_patch(make(body, res));
            Obs sum = Obs::Zero();
            for (const Obs& x : proj.taxel_uv())
                sum += x;
            CHECK(sum.norm() / static_cast<double>(proj.taxel_uv().size()) < 1e-12);
        }
}

TEST_CASE("projected taxel spacing matches the surface pitches") {
    const SkinPatch patch = make("torso", "high");
    const Projection proj = Projection::for_patch(patch);
    // along-angle neighbors differ by pitch_u in u only
    const Obs a = proj.taxel_uv()[5];
    const Obs b = proj.taxel_uv()[5 + patch.cols];
    CHECK(b[0] - a[0] == doctest::Approx(patch.pitch_u).epsilon(1e-10));
    CHECK(std::abs(b[1] - a[1]) < 1e-12);
    // along-axis neighbors differ by pitch_v in v only
    const Obs c = proj.taxel_uv()[6];
    CHECK(c[1] - a[1] == doctest::Approx(patch.pitch_v).epsilon(1e-10));
    CHECK(std::abs(c[0] - a[0]) < 1e-12);
}

TEST_CASE("observation distance is Euclidean") {
    CHECK(distance(Obs(0.0, 0.0), Obs(3.0, 4.0)) == doctest::Approx(5.0));
    CHECK(distance(Obs(1.0, 2.0), Obs(1.0, 2.0)) == 0.0);
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const Obs a(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        const Obs b(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        const Obs c(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    }
}

TEST_CASE("goal bounds pad the taxel bounding box per side") {
    const SkinPatch patch = make("torso", "low");
    const Projection proj = Projection::for_patch(patch);
    const Rect tight = proj.goal_bounds(0.0);
    // 5x5 grid, pitch 0.024: centers span 4 * 0.024 = 0.096 each way
    CHECK(tight.width() == doctest::Approx(0.096).epsilon(1e-12));
    CHECK(tight.height() == doctest::Approx(0.096).epsilon(1e-12));
    const Rect padded = proj.goal_bounds(0.05);
    CHECK(padded.width() == doctest::Approx(0.096 * 1.1).epsilon(1e-12));
    CHECK(padded.u0 == doctest::Approx(tight.u0 - 0.05 * 0.096).epsilon(1e-12));
    CHECK(padded.u1 == doctest::Approx(tight.u1 + 0.05 * 0.096).epsilon(1e-12));
    // the diameter used as the miss competence is the diagonal
    CHECK(padded.diameter() ==
          doctest::Approx(std::hypot(padded.width(), padded.height())).epsilon(1e-12));
}

TEST_CASE("every taxel projection stays inside the padded goal rectangle") {
    for (const char* body : {"torso", "head"})
        for (const char* res : {"low", "high"}) {
            const Projection proj = Projection::for_patch(make(body, res));
            const Rect r = proj.goal_bounds(0.05);
            for (const Obs& x : proj.taxel_uv())
                CHECK(r.contains(x));
        }
}

TEST_CASE("taxel uv CSV lists ids in order") {
    const Projection proj = Projection::for_patch(make("head", "low"));
    const std::string csv = taxel_uv_csv(proj);
    CHECK(csv.rfind("id,u,v\n0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);
}
