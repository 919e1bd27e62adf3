#include "skinbabble/skin.hpp"

#include "skinbabble/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace skinbabble {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed angular difference wrapped to [-pi, pi].
double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

struct SurfaceGrid {
    double pitch_u, pitch_v;
};

SurfaceGrid pitches(const Surface& surface, int rows, int cols) {
    if (const auto* pl = std::get_if<PlanarSurface>(&surface))
        return {2.0 * pl->half_u / rows, 2.0 * pl->half_v / cols};
    const auto& cy = std::get<CylinderSurface>(surface);
    return {cy.radius * (cy.theta1 - cy.theta0) / rows, (cy.h1 - cy.h0) / cols};
}

} // namespace

SkinPatch generate_skin(const PatchSpec& spec, double default_max_penetration) {
    if (spec.rows < 1 || spec.cols < 1)
        throw ConfigError("patch: rows and cols must be >= 1");
    if (spec.expected_count >= 0 && spec.rows * spec.cols != spec.expected_count)
        throw ConfigError("patch: rows*cols = " + std::to_string(spec.rows * spec.cols) +
                          " does not match the required taxel count " +
                          std::to_string(spec.expected_count));

    SkinPatch patch;
    patch.name = spec.name;
    patch.frame = spec.frame;
    patch.surface = spec.surface;
    patch.rows = spec.rows;
    patch.cols = spec.cols;

    if (const auto* pl = std::get_if<PlanarSurface>(&spec.surface)) {
        if (std::abs(pl->axis_u.norm() - 1.0) > 1e-9 ||
            std::abs(pl->axis_v.norm() - 1.0) > 1e-9 ||
            std::abs(pl->axis_u.dot(pl->axis_v)) > 1e-9)
            throw ConfigError("patch.surface: plane axes must be orthonormal");
        if (!(pl->half_u > 0.0 && pl->half_v > 0.0))
            throw ConfigError("patch.surface: plane half extents must be > 0");
        const Vec3 n = pl->normal();
        const double pu = 2.0 * pl->half_u / spec.rows;
        const double pv = 2.0 * pl->half_v / spec.cols;
        for (int i = 0; i < spec.rows; ++i)
            for (int j = 0; j < spec.cols; ++j) {
                Taxel t;
                t.id = i * spec.cols + j;
                const double u = -pl->half_u + pu * (i + 0.5);
                const double v = -pl->half_v + pv * (j + 0.5);
                t.local_position = pl->origin + u * pl->axis_u + v * pl->axis_v;
                t.local_normal = n;
                patch.taxels.push_back(t);
            }
    } else {
        const auto& cy = std::get<CylinderSurface>(spec.surface);
        if (!(cy.radius > 0.0))
            throw ConfigError("patch.surface: cylinder radius must be > 0");
        if (!(cy.theta0 < cy.theta1) || cy.theta1 - cy.theta0 > kTwoPi)
            throw ConfigError("patch.surface: cylinder angular span invalid");
        if (!(cy.h0 < cy.h1))
            throw ConfigError("patch.surface: cylinder height span invalid");
        for (int i = 0; i < spec.rows; ++i)
            for (int j = 0; j < spec.cols; ++j) {
                Taxel t;
                t.id = i * spec.cols + j;
                const double th = cy.theta0 + (cy.theta1 - cy.theta0) * (i + 0.5) / spec.rows;
                const double h = cy.h0 + (cy.h1 - cy.h0) * (j + 0.5) / spec.cols;
                t.local_position =
                    cy.center + Vec3(cy.radius * std::cos(th), cy.radius * std::sin(th), h);
                t.local_normal = Vec3(std::cos(th), std::sin(th), 0.0);
                patch.taxels.push_back(t);
            }
    }

    const SurfaceGrid g = pitches(spec.surface, spec.rows, spec.cols);
    patch.pitch_u = g.pitch_u;
    patch.pitch_v = g.pitch_v;
    patch.catchment_radius = spec.catchment_radius > 0.0
                                 ? spec.catchment_radius
                                 : 0.6 * std::max(g.pitch_u, g.pitch_v);
    patch.max_penetration =
        spec.max_penetration > 0.0 ? spec.max_penetration : default_max_penetration;
    if (!(patch.max_penetration > 0.0))
        throw ConfigError("patch.max_penetration: not set and no default supplied");
    return patch;
}

double surface_distance(const SkinPatch& patch, const Vec3& on_surface,
                        const Taxel& taxel) {
    if (std::holds_alternative<PlanarSurface>(patch.surface))
        return (on_surface - taxel.local_position).norm();
    const auto& cy = std::get<CylinderSurface>(patch.surface);
    const Vec3 da = on_surface - cy.center;
    const Vec3 db = taxel.local_position - cy.center;
    const double dth = wrap_angle(std::atan2(da.y(), da.x()) - std::atan2(db.y(), db.x()));
    const double du = cy.radius * dth;
    const double dv = da.z() - db.z();
    return std::hypot(du, dv);
}

ContactResult detect_contact(const SkinPatch& patch, const Vec3& tip_center_world,
                             double tip_radius, const Pose& patch_pose) {
    ContactResult r;
    r.tip_in_patch_frame = patch_pose.to_local(tip_center_world);

    double penetration;
    if (const auto* pl = std::get_if<PlanarSurface>(&patch.surface)) {
        const Vec3 n = pl->normal();
        const double sd = (r.tip_in_patch_frame - pl->origin).dot(n);
        penetration = tip_radius - sd;
        r.footprint = r.tip_in_patch_frame - sd * n;
    } else {
        const auto& cy = std::get<CylinderSurface>(patch.surface);
        const Vec3 d = r.tip_in_patch_frame - cy.center;
        const double rad = std::hypot(d.x(), d.y());
        if (rad < 1e-12)
            return r; // on the axis: no outward direction, no contact
        penetration = tip_radius - (rad - cy.radius);
        r.footprint = cy.center + Vec3(cy.radius * d.x() / rad, cy.radius * d.y() / rad, d.z());
    }

    if (penetration < 0.0 || penetration > patch.max_penetration)
        return r;
    r.penetration = penetration;

    const double catch2 = patch.catchment_radius * patch.catchment_radius;
    for (const Taxel& t : patch.taxels) {
        const double d = surface_distance(patch, r.footprint, t);
        if (d * d <= catch2)
            r.activated.push_back(t.id);
    }
    return r;
}

std::optional<int> nearest_activated(const SkinPatch& patch, const ContactResult& c) {
    if (!c.touched())
        return std::nullopt;
    int best = -1;
    double best_d = 0.0;
    for (int id : c.activated) {
        const double d = surface_distance(patch, c.footprint, patch.taxels[id]);
        if (best < 0 || d < best_d) {
            best = id;
            best_d = d;
        }
    }
    return best;
}

std::string patch_geometry_csv(const SkinPatch& patch) {
    std::ostringstream out;
    out << "id,x,y,z,nx,ny,nz\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        out.write(buf, p - buf);
        out << sep;
    };
    for (const Taxel& t : patch.taxels) {
        out << t.id << ',';
        put(t.local_position.x(), ',');
        put(t.local_position.y(), ',');
        put(t.local_position.z(), ',');
        put(t.local_normal.x(), ',');
        put(t.local_normal.y(), ',');
        put(t.local_normal.z(), '\n');
    }
    return out.str();
}

} // namespace skinbabble
