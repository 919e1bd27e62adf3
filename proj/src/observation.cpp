#include "skinbabble/observation.hpp"

#include "skinbabble/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace skinbabble {

Projection Projection::for_patch(const SkinPatch& patch) {
    Projection p;
    p.surface_ = patch.surface;
    if (const auto* cy = std::get_if<CylinderSurface>(&patch.surface))
        p.mid_theta_ = 0.5 * (cy->theta0 + cy->theta1);

    Obs sum = Obs::Zero();
    std::vector<Obs> raw;
    raw.reserve(patch.taxels.size());
    for (const Taxel& t : patch.taxels) {
        raw.push_back(p.raw_project(t.local_position));
        sum += raw.back();
    }
    p.centroid_ = raw.empty() ? Obs::Zero() : Obs(sum / static_cast<double>(raw.size()));
    p.taxel_uv_.reserve(raw.size());
    for (const Obs& x : raw)
        p.taxel_uv_.push_back(x - p.centroid_);
    return p;
}

Obs Projection::raw_project(const Vec3& p_local) const {
    if (const auto* pl = std::get_if<PlanarSurface>(&surface_)) {
        const Vec3 d = p_local - pl->origin;
        return {d.dot(pl->axis_u), d.dot(pl->axis_v)};
    }
    const auto& cy = std::get<CylinderSurface>(surface_);
    const Vec3 d = p_local - cy.center;
    if (std::hypot(d.x(), d.y()) < 1e-12)
        throw ProjectionError("projection undefined: point lies on the cylinder axis");
    const double theta = std::atan2(d.y(), d.x());
    // Unwrap around mid_theta so the branch cut faces away from the patch.
    const double alpha =
        mid_theta_ + std::remainder(theta - mid_theta_, 2.0 * std::numbers::pi);
    return {cy.radius * alpha, d.z()};
}

Obs Projection::project(const Vec3& p_local) const {
    return raw_project(p_local) - centroid_;
}

Rect Projection::goal_bounds(double padding) const {
    Rect r;
    bool first = true;
    for (const Obs& x : taxel_uv_) {
        if (first) {
            r = {x[0], x[1], x[0], x[1]};
            first = false;
        } else {
            r.u0 = std::min(r.u0, x[0]);
            r.v0 = std::min(r.v0, x[1]);
            r.u1 = std::max(r.u1, x[0]);
            r.v1 = std::max(r.v1, x[1]);
        }
    }
    const double pu = r.width() * padding;
    const double pv = r.height() * padding;
    return {r.u0 - pu, r.v0 - pv, r.u1 + pu, r.v1 + pv};
}

std::string taxel_uv_csv(const Projection& proj) {
    std::ostringstream out;
    out << "id,u,v\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        out.write(buf, p - buf);
        out << sep;
    };
    for (std::size_t i = 0; i < proj.taxel_uv().size(); ++i) {
        out << i << ',';
        put(proj.taxel_uv()[i][0], ',');
        put(proj.taxel_uv()[i][1], '\n');
    }
    return out.str();
}

} // namespace skinbabble
