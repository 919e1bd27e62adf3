#pragma once

#include "skinbabble/geometry.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace skinbabble {

struct Taxel {
    int id = 0;
    Vec3 local_position = Vec3::Zero(); // patch frame
    Vec3 local_normal = Vec3::UnitX();
};

// Rectangular patch spanned by two orthonormal in-plane axes; the outward
// normal is axis_u x axis_v. Taxels sit on a rows x cols grid over
// [-half_u, half_u] x [-half_v, half_v] around `origin`.
struct PlanarSurface {
    Vec3 origin = Vec3::Zero();
    Vec3 axis_u = Vec3::UnitY();
    Vec3 axis_v = Vec3::UnitZ();
    double half_u = 0.0;
    double half_v = 0.0;

    Vec3 normal() const { return axis_u.cross(axis_v); }
};

// Cylinder segment with its axis along the patch frame's +z through `center`.
// Angles are measured from +x toward +y; heights are relative to center.z.
// Taxel rows run along the angle, columns along the height.
struct CylinderSurface {
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double h0 = 0.0;
    double h1 = 0.0;
};

using Surface = std::variant<PlanarSurface, CylinderSurface>;

struct PatchSpec {
    std::string name;  // "torso" | "head"
    std::string frame; // kinematic frame the patch is attached to
    Surface surface;
    int rows = 0;
    int cols = 0;
    int expected_count = -1;       // optional sanity check on rows*cols
    double catchment_radius = 0.0; // <= 0: 0.6 x max taxel pitch
    double max_penetration = 0.0;  // <= 0: caller-provided default (tip radius)
};

struct SkinPatch {
    std::string name;
    std::string frame;
    Surface surface;
    int rows = 0;
    int cols = 0;
    double pitch_u = 0.0; // taxel spacing along rows (arc length on cylinders)
    double pitch_v = 0.0;
    double catchment_radius = 0.0;
    double max_penetration = 0.0;
    std::vector<Taxel> taxels;
};

struct ContactResult {
    std::vector<int> activated;   // ascending taxel ids
    Vec3 tip_in_patch_frame = Vec3::Zero();
    Vec3 footprint = Vec3::Zero(); // contact center projected onto the surface
    double penetration = -1.0;     // < 0 when there is no contact

    bool touched() const { return !activated.empty(); }
};

// Places taxels on the surface grid. default_max_penetration fills in
// max_penetration when the patch leaves it unset (typically the tip radius).
SkinPatch generate_skin(const PatchSpec& spec, double default_max_penetration = 0.0);

// Binary contact test. A taxel activates iff the tip sphere penetrates the
// surface by [0, max_penetration] and the geodesic distance from the contact
// footprint to the taxel center is within catchment_radius. Deeper
// penetration means the simulated arm has passed "through" the body and
// produces no contact at all.
ContactResult detect_contact(const SkinPatch& patch, const Vec3& tip_center_world,
                             double tip_radius, const Pose& patch_pose);

// Geodesic distance on the patch surface between an on-surface point and a
// taxel center (plain Euclidean on planes, unwrapped arc metric on cylinders).
double surface_distance(const SkinPatch& patch, const Vec3& on_surface,
                        const Taxel& taxel);

// Activated taxel nearest to the contact footprint, ties broken by lowest id.
std::optional<int> nearest_activated(const SkinPatch& patch, const ContactResult& c);

// Patch geometry as CSV: id,x,y,z,nx,ny,nz (patch-local coordinates).
std::string patch_geometry_csv(const SkinPatch& patch);

} // namespace skinbabble
