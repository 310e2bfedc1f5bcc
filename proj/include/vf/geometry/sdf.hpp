#pragma once

#include <span>

#include "vf/geometry/shape_node.hpp"

namespace vf {

struct DistanceSample {
  double distance = 0.0;
  const ShapeNode* leaf = nullptr;  // nearest contributing leaf

  MaterialId material() const noexcept { return leaf ? leaf->surface() : kNoMaterial; }
};

/// Signed distance from `p` to the solid described by `node`; negative inside.
DistanceSample eval_sdf(const ShapeNode& node, const Vec3& p);

/// Polynomial smooth minimum with blend width k (world units).
/// k == 0 is exactly min(a, b); otherwise min(a, b) - k/4 <= result <= min(a, b).
double smooth_min(double a, double b, double k);
double smooth_max(double a, double b, double k);

namespace sdf {

double sphere(const Vec3& p, double radius);
double rounded_box(const Vec3& p, const Vec3& half_extent, double roundness);
double torus(const Vec3& p, double major_radius, double minor_radius);
double cylinder(const Vec3& p, double radius, double half_height);
double pyramid(const Vec3& p, double base_half_width, double height);
double house(const Vec3& p, const Vec3& size);
double capsule(const Vec3& p, const Vec3& a, const Vec3& b, double radius);
/// Unsigned distance from `p` to triangle (a, b, c).
double triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
/// Generalized winding number of a triangle soup around `p`.
double winding_number(const Vec3& p, std::span<const Vec3> vertices, std::span<const Triangle> triangles);

}  // namespace sdf

double eval_hermite_pipe(const PipeShape& pipe, const Vec3& p);

/// Validates and evaluates a triangle mesh directly (no node).
/// Throws DegenerateMesh on empty or non-finite input and on open surfaces
/// unless `allow_open`, in which case the unsigned distance is returned.
double eval_mesh_sdf(std::span<const Vec3> vertices, std::span<const Triangle> triangles, const Vec3& p,
                     bool allow_open = false);
double eval_mesh_sdf(const MeshShape& mesh, const Vec3& p);

}  // namespace vf
