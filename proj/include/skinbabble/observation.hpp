#pragma once

#include "skinbabble/geometry.hpp"
#include "skinbabble/skin.hpp"

#include <vector>

namespace skinbabble {

// Maps patch-local 3-D points into the 2-D observation space. Planar patches
// use a parallel projection onto the plane; cylindrical patches use a central
// projection from the axis with u = r * theta (unwrapped arc length) and
// v = axial coordinate. Both are recentered so the taxel centroid sits at the
// origin. The angular branch cut lies diametrically opposite the patch span,
// so no taxel straddles it.
class Projection {
public:
    static Projection for_patch(const SkinPatch& patch);

    Obs project(const Vec3& p_local) const; // throws ProjectionError on the axis

    const std::vector<Obs>& taxel_uv() const { return taxel_uv_; }

    // Bounding rectangle of projected taxels padded by `padding` per side
    // (fraction of the respective extent): the goal space.
    Rect goal_bounds(double padding) const;

    bool cylindrical() const { return std::holds_alternative<CylinderSurface>(surface_); }

private:
    Obs raw_project(const Vec3& p_local) const;

    Surface surface_;
    double mid_theta_ = 0.0;
    Obs centroid_ = Obs::Zero();
    std::vector<Obs> taxel_uv_;
};

inline double distance(const Obs& a, const Obs& b) { return (a - b).norm(); }

// Projected taxel table as CSV: id,u,v.
std::string taxel_uv_csv(const Projection& proj);

} // namespace skinbabble
