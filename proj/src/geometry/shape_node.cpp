#include "vf/geometry/shape_node.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "vf/geometry/errors.hpp"

namespace vf {

ShapePtr make_node(ShapeKind kind, ShapeParams params, std::vector<ShapePtr> children, MaterialId surface);

namespace {

constexpr int kMaxPipeSegments = 4096;

void require_positive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) throw InvalidShapeParameters(field, "must be finite and > 0");
}

void require_non_negative(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) throw InvalidShapeParameters(field, "must be finite and >= 0");
}

void require_finite(const Vec3& v, const char* field) {
  if (!is_finite(v)) throw InvalidShapeParameters(field, "must be finite");
}

void require_children(const std::vector<ShapePtr>& shapes, const char* field) {
  if (shapes.empty()) throw InvalidShapeParameters(field, "needs at least one shape");
  for (const auto& s : shapes)
    if (!s) throw InvalidShapeParameters(field, "contains a null shape");
}

std::size_t leaf_cost(const ShapeParams& params) {
  if (const auto* pipe = std::get_if<PipeShape>(&params))
    return static_cast<std::size_t>(pipe->params.num_segments) * (pipe->params.inner_radius > 0.0 ? 2 : 1);
  if (const auto* mesh = std::get_if<MeshShape>(&params)) return 8 + mesh->params.triangles.size() / 16;
  return 1;
}

// Median-split BVH over triangle centroids.
void build_bvh(MeshShape& mesh) {
  const auto& verts = mesh.params.vertices;
  const auto& tris = mesh.params.triangles;
  mesh.triangle_order.resize(tris.size());
  std::iota(mesh.triangle_order.begin(), mesh.triangle_order.end(), 0u);
  std::vector<Vec3> centroid(tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i)
    centroid[i] = (verts[tris[i][0]] + verts[tris[i][1]] + verts[tris[i][2]]) / 3.0;

  constexpr std::uint32_t kLeafSize = 4;
  mesh.bvh.clear();
  mesh.bvh.reserve(2 * tris.size() / kLeafSize + 1);

  auto build = [&](auto&& self, std::uint32_t first, std::uint32_t count) -> std::uint32_t {
    const auto index = static_cast<std::uint32_t>(mesh.bvh.size());
    mesh.bvh.emplace_back();
    Aabb box;
    for (std::uint32_t i = first; i < first + count; ++i)
      for (auto v : tris[mesh.triangle_order[i]]) box.expand(verts[v]);
    mesh.bvh[index].box = box;
    if (count <= kLeafSize) {
      mesh.bvh[index].first = first;
      mesh.bvh[index].count = count;
      return index;
    }
    const Vec3 ext = box.extent();
    const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
    const auto begin = mesh.triangle_order.begin() + first;
    const auto mid = begin + count / 2;
    std::nth_element(begin, mid, begin + count, [&](std::uint32_t a, std::uint32_t b) {
      if (centroid[a][axis] != centroid[b][axis]) return centroid[a][axis] < centroid[b][axis];
      return a < b;
    });
    const std::uint32_t left = self(self, first, count / 2);
    const std::uint32_t right = self(self, first + count / 2, count - count / 2);
    mesh.bvh[index].left = left;
    mesh.bvh[index].right = right;
    return index;
  };
  build(build, 0, static_cast<std::uint32_t>(tris.size()));
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Sphere: return "Sphere";
    case ShapeKind::Cube: return "Cube";
    case ShapeKind::Torus: return "Torus";
    case ShapeKind::Cylinder: return "Cylinder";
    case ShapeKind::Pyramid: return "Pyramid";
    case ShapeKind::House: return "House";
    case ShapeKind::HermitePipe: return "HermitePipe";
    case ShapeKind::Mesh: return "Mesh";
    case ShapeKind::Union: return "Union";
    case ShapeKind::Subtract: return "Subtract";
    case ShapeKind::Intersect: return "Intersect";
    case ShapeKind::Transformed: return "Transformed";
  }
  return "Unknown";
}

ShapeNode::ShapeNode(ShapeKind kind, ShapeParams params, std::vector<ShapePtr> children, MaterialId surface)
    : kind_(kind), params_(std::move(params)), children_(std::move(children)), surface_(surface) {
  if (children_.empty()) {
    cost_ = leaf_cost(params_);
  } else {
    cost_ = 0;
    for (const auto& c : children_) cost_ += c->evaluation_cost();
  }
}

ShapePtr make_node(ShapeKind kind, ShapeParams params, std::vector<ShapePtr> children, MaterialId surface) {
  return std::shared_ptr<const ShapeNode>(new ShapeNode(kind, std::move(params), std::move(children), surface));
}

ShapePtr make_sphere(double radius, MaterialId surface) {
  require_positive(radius, "Radius");
  return make_node(ShapeKind::Sphere, SphereParams{radius}, {}, surface);
}

ShapePtr make_cube(const Vec3& size, double roundness, MaterialId surface) {
  require_finite(size, "Size");
  if (min_component(size) <= 0.0) throw InvalidShapeParameters("Size", "components must be > 0");
  require_non_negative(roundness, "Roundness");
  if (roundness > min_component(size) / 2.0) throw InvalidShapeParameters("Roundness", "must be <= min(Size)/2");
  return make_node(ShapeKind::Cube, CubeParams{size, roundness}, {}, surface);
}

ShapePtr make_torus(double major_radius, double minor_radius, MaterialId surface) {
  require_positive(major_radius, "MajorRadius");
  require_positive(minor_radius, "MinorRadius");
  if (minor_radius >= major_radius) throw InvalidShapeParameters("MinorRadius", "must be < MajorRadius");
  return make_node(ShapeKind::Torus, TorusParams{major_radius, minor_radius}, {}, surface);
}

ShapePtr make_cylinder(double radius, double half_height, MaterialId surface) {
  require_positive(radius, "Radius");
  require_positive(half_height, "HalfHeight");
  return make_node(ShapeKind::Cylinder, CylinderParams{radius, half_height}, {}, surface);
}

ShapePtr make_pyramid(double base_half_width, double height, MaterialId surface) {
  require_positive(base_half_width, "BaseHalfWidth");
  require_positive(height, "Height");
  return make_node(ShapeKind::Pyramid, PyramidParams{base_half_width, height}, {}, surface);
}

ShapePtr make_house(const Vec3& size, MaterialId surface) {
  require_finite(size, "Size");
  if (min_component(size) <= 0.0) throw InvalidShapeParameters("Size", "components must be > 0");
  return make_node(ShapeKind::House, HouseParams{size}, {}, surface);
}

Vec3 hermite_point(const HermitePipeParams& p, double t) {
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * p.start_position + h10 * p.start_velocity + h01 * p.end_position + h11 * p.end_velocity;
}

ShapePtr make_hermite_pipe(const HermitePipeParams& params, MaterialId surface) {
  require_finite(params.start_position, "StartPosition");
  require_finite(params.start_velocity, "StartVelocity");
  require_finite(params.end_position, "EndPosition");
  require_finite(params.end_velocity, "EndVelocity");
  require_positive(params.outer_radius, "PipeOuterRadius");
  require_non_negative(params.inner_radius, "PipeInnerRadius");
  if (params.inner_radius >= params.outer_radius)
    throw InvalidShapeParameters("PipeInnerRadius", "must be < PipeOuterRadius");
  if (params.num_segments < 1 || params.num_segments > kMaxPipeSegments)
    throw InvalidShapeParameters("NumSegments", "must be in [1, 4096]");
  require_non_negative(params.smoothness, "Smoothness");

  PipeShape pipe;
  pipe.params = params;
  const int n = params.num_segments;
  pipe.centerline.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) pipe.centerline.push_back(hermite_point(params, static_cast<double>(i) / n));

  // End tangents follow the curve derivative; fall back to the chord when a
  // velocity is zero.
  pipe.start_tangent = normalize(params.start_velocity);
  if (length(pipe.start_tangent) == 0.0) pipe.start_tangent = normalize(pipe.centerline[1] - pipe.centerline[0]);
  pipe.end_tangent = normalize(params.end_velocity);
  if (length(pipe.end_tangent) == 0.0)
    pipe.end_tangent = normalize(pipe.centerline[static_cast<std::size_t>(n)] - pipe.centerline[static_cast<std::size_t>(n) - 1]);
  if (length(pipe.start_tangent) == 0.0) pipe.start_tangent = {1, 0, 0};
  if (length(pipe.end_tangent) == 0.0) pipe.end_tangent = pipe.start_tangent;
  return make_node(ShapeKind::HermitePipe, std::move(pipe), {}, surface);
}

ShapePtr make_mesh(MeshParams params, MaterialId surface) {
  if (params.triangles.empty()) throw DegenerateMesh("mesh has no triangles");
  for (const auto& v : params.vertices)
    if (!is_finite(v)) throw DegenerateMesh("mesh has a non-finite vertex");
  const auto nverts = params.vertices.size();
  for (const auto& t : params.triangles)
    for (auto idx : t)
      if (idx >= nverts) throw InvalidShapeParameters("Triangles", "vertex index out of range");

  // Watertight iff every undirected edge borders exactly two triangles.
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_use;
  for (const auto& t : params.triangles)
    for (int e = 0; e < 3; ++e) {
      auto a = t[static_cast<std::size_t>(e)], b = t[static_cast<std::size_t>((e + 1) % 3)];
      if (a > b) std::swap(a, b);
      ++edge_use[{a, b}];
    }
  bool watertight = true;
  for (const auto& [edge, count] : edge_use)
    if (count != 2) {
      watertight = false;
      break;
    }
  if (!watertight && !params.allow_open)
    throw DegenerateMesh("mesh is not watertight; enable the unsigned fallback to accept open surfaces");

  MeshShape mesh;
  mesh.params = std::move(params);
  mesh.watertight = watertight;
  for (const auto& t : mesh.params.triangles)
    for (auto idx : t) mesh.bounds.expand(mesh.params.vertices[idx]);
  build_bvh(mesh);
  return make_node(ShapeKind::Mesh, std::move(mesh), {}, surface);
}

ShapePtr make_union(std::vector<ShapePtr> shapes, double smoothness) {
  require_children(shapes, "Shapes");
  require_non_negative(smoothness, "Smoothness");
  return make_node(ShapeKind::Union, CombinerParams{smoothness}, std::move(shapes), kNoMaterial);
}

ShapePtr make_subtract(ShapePtr base, std::vector<ShapePtr> subtrahends, double smoothness) {
  if (!base) throw InvalidShapeParameters("BaseShape", "is null");
  require_children(subtrahends, "ShapesToSubtract");
  require_non_negative(smoothness, "Smoothness");
  std::vector<ShapePtr> children;
  children.reserve(subtrahends.size() + 1);
  children.push_back(std::move(base));
  for (auto& s : subtrahends) children.push_back(std::move(s));
  return make_node(ShapeKind::Subtract, CombinerParams{smoothness}, std::move(children), kNoMaterial);
}

ShapePtr make_intersect(std::vector<ShapePtr> shapes, double smoothness) {
  require_children(shapes, "Shapes");
  require_non_negative(smoothness, "Smoothness");
  return make_node(ShapeKind::Intersect, CombinerParams{smoothness}, std::move(shapes), kNoMaterial);
}

ShapePtr make_transformed(const Transform& transform, ShapePtr child) {
  if (!child) throw InvalidShapeParameters("Shape", "is null");
  transform.validate();
  if (transform.is_identity()) return child;
  Placement placement{transform, transform.rotation_matrix().transposed()};
  return make_node(ShapeKind::Transformed, placement, {std::move(child)}, kNoMaterial);
}

}  // namespace vf
