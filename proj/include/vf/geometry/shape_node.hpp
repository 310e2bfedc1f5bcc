#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "vf/geometry/transform.hpp"
#include "vf/geometry/vec3.hpp"

namespace vf {

using MaterialId = std::uint16_t;
inline constexpr MaterialId kNoMaterial = 0;
inline constexpr MaterialId kDefaultMaterial = 1;

enum class ShapeKind {
  Sphere,
  Cube,
  Torus,
  Cylinder,
  Pyramid,
  House,
  HermitePipe,
  Mesh,
  Union,
  Subtract,
  Intersect,
  Transformed,
};

std::string_view to_string(ShapeKind kind);

struct SphereParams {
  double radius = 1.0;
};

/// Rounded box centered at the origin; half-extents are size / 2.
struct CubeParams {
  Vec3 size{1.0, 1.0, 1.0};
  double roundness = 0.0;
};

/// Torus around the Z axis.
struct TorusParams {
  double major_radius = 2.0;
  double minor_radius = 1.0;
};

/// Cylinder along Z spanning [-half_height, half_height].
struct CylinderParams {
  double radius = 1.0;
  double half_height = 1.0;
};

/// Right square pyramid, base on z = 0, apex at z = height.
struct PyramidParams {
  double base_half_width = 1.0;
  double height = 1.0;
};

/// Box body (lower 2/3 of size.z) with a gabled roof prism (upper 1/3)
/// whose ridge runs along X. Centered at the origin.
struct HouseParams {
  Vec3 size{1.0, 1.0, 1.0};
};

struct HermitePipeParams {
  Vec3 start_position{};
  Vec3 start_velocity{1.0, 0.0, 0.0};
  Vec3 end_position{1.0, 0.0, 0.0};
  Vec3 end_velocity{1.0, 0.0, 0.0};
  double outer_radius = 1.0;
  double inner_radius = 0.0;
  bool closed_ends = true;
  int num_segments = 16;
  double smoothness = 0.0;
};

/// Hermite pipe with its sampled centerline.
struct PipeShape {
  HermitePipeParams params;
  std::vector<Vec3> centerline;  // num_segments + 1 samples
  Vec3 start_tangent;
  Vec3 end_tangent;
};

using Triangle = std::array<std::uint32_t, 3>;

struct MeshParams {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  bool allow_open = false;  // unsigned-distance fallback for non-watertight input
};

struct MeshBvhNode {
  Aabb box;
  std::uint32_t left = 0;  // child indices; both 0 for leaves
  std::uint32_t right = 0;
  std::uint32_t first = 0;  // range in MeshShape::triangle_order
  std::uint32_t count = 0;
};

struct MeshShape {
  MeshParams params;
  Aabb bounds;
  bool watertight = false;
  std::vector<MeshBvhNode> bvh;  // root at index 0
  std::vector<std::uint32_t> triangle_order;
};

struct CombinerParams {
  double smoothness = 0.0;
};

/// Transform with its inverse rotation cached for evaluation.
struct Placement {
  Transform transform;
  Mat3 inverse_rotation;

  Vec3 to_local(const Vec3& world) const {
    return cwise_div(inverse_rotation * (world - transform.location), transform.scale);
  }
};

using ShapeParams = std::variant<SphereParams, CubeParams, TorusParams, CylinderParams, PyramidParams,
                                 HouseParams, PipeShape, MeshShape, CombinerParams, Placement>;

class ShapeNode;
using ShapePtr = std::shared_ptr<const ShapeNode>;

/// Immutable node of a signed-distance expression graph. Built only through
/// the make_* factories below, which validate every parameter, so any
/// reachable node satisfies its invariants.
class ShapeNode {
 public:
  ShapeKind kind() const noexcept { return kind_; }
  const ShapeParams& params() const noexcept { return params_; }
  template <class P>
  const P& as() const {
    return std::get<P>(params_);
  }
  std::span<const ShapePtr> children() const noexcept { return children_; }
  MaterialId surface() const noexcept { return surface_; }
  bool is_leaf() const noexcept { return children_.empty(); }

  /// Relative cost of one evaluation, in primitive-evaluation units.
  std::size_t evaluation_cost() const noexcept { return cost_; }

 private:
  ShapeNode(ShapeKind kind, ShapeParams params, std::vector<ShapePtr> children, MaterialId surface);

  friend ShapePtr make_node(ShapeKind, ShapeParams, std::vector<ShapePtr>, MaterialId);

  ShapeKind kind_;
  ShapeParams params_;
  std::vector<ShapePtr> children_;
  MaterialId surface_;
  std::size_t cost_;
};

ShapePtr make_sphere(double radius, MaterialId surface = kDefaultMaterial);
ShapePtr make_cube(const Vec3& size, double roundness = 0.0, MaterialId surface = kDefaultMaterial);
ShapePtr make_torus(double major_radius, double minor_radius, MaterialId surface = kDefaultMaterial);
ShapePtr make_cylinder(double radius, double half_height, MaterialId surface = kDefaultMaterial);
ShapePtr make_pyramid(double base_half_width, double height, MaterialId surface = kDefaultMaterial);
ShapePtr make_house(const Vec3& size, MaterialId surface = kDefaultMaterial);
ShapePtr make_hermite_pipe(const HermitePipeParams& params, MaterialId surface = kDefaultMaterial);
ShapePtr make_mesh(MeshParams params, MaterialId surface = kDefaultMaterial);

ShapePtr make_union(std::vector<ShapePtr> shapes, double smoothness = 0.0);
ShapePtr make_subtract(ShapePtr base, std::vector<ShapePtr> subtrahends, double smoothness = 0.0);
ShapePtr make_intersect(std::vector<ShapePtr> shapes, double smoothness = 0.0);
/// Wraps `child`; the identity transform returns `child` unchanged.
ShapePtr make_transformed(const Transform& transform, ShapePtr child);

/// Point on the cubic Hermite curve at t in [0, 1].
Vec3 hermite_point(const HermitePipeParams& params, double t);

}  // namespace vf
