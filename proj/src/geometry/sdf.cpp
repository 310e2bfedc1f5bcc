#include "vf/geometry/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vf {

double smooth_min(double a, double b, double k) {
  if (k <= 0.0) return std::min(a, b);
  const double h = std::clamp(0.5 + 0.5 * (b - a) / k, 0.0, 1.0);
  return b * (1.0 - h) + a * h - k * h * (1.0 - h);
}

double smooth_max(double a, double b, double k) { return -smooth_min(-a, -b, k); }

namespace sdf {

double sphere(const Vec3& p, double radius) { return length(p) - radius; }

double rounded_box(const Vec3& p, const Vec3& half_extent, double roundness) {
  const Vec3 q = cwise_abs(p) - (half_extent - Vec3{roundness, roundness, roundness});
  return length(cwise_max(q, Vec3{})) + std::min(max_component(q), 0.0) - roundness;
}

double torus(const Vec3& p, double major_radius, double minor_radius) {
  const double qx = std::hypot(p.x, p.y) - major_radius;
  return std::hypot(qx, p.z) - minor_radius;
}

double cylinder(const Vec3& p, double radius, double half_height) {
  const double dx = std::hypot(p.x, p.y) - radius;
  const double dz = std::abs(p.z) - half_height;
  return std::min(std::max(dx, dz), 0.0) + std::hypot(std::max(dx, 0.0), std::max(dz, 0.0));
}

double pyramid(const Vec3& p, double base_half_width, double height) {
  // Intersection of four slanted half-spaces and the base plane.
  const double len = std::hypot(height, base_half_width);
  const double fx = (height * std::abs(p.x) + base_half_width * p.z - height * base_half_width) / len;
  const double fy = (height * std::abs(p.y) + base_half_width * p.z - height * base_half_width) / len;
  return std::max({fx, fy, -p.z});
}

double house(const Vec3& p, const Vec3& size) {
  const double bottom = -size.z / 2.0;
  const double body_height = size.z * 2.0 / 3.0;
  const double roof_height = size.z - body_height;
  const double body = rounded_box(p - Vec3{0, 0, bottom + body_height / 2.0},
                                  Vec3{size.x / 2.0, size.y / 2.0, body_height / 2.0}, 0.0);
  const double eave = bottom + body_height;
  const double half_w = size.y / 2.0;
  const double len = std::hypot(roof_height, half_w);
  const double slope = (roof_height * std::abs(p.y) + half_w * (p.z - eave) - roof_height * half_w) / len;
  const double roof = std::max({slope, eave - p.z, std::abs(p.x) - size.x / 2.0});
  return std::min(body, roof);
}

double capsule(const Vec3& p, const Vec3& a, const Vec3& b, double radius) {
  const Vec3 ab = b - a;
  const double denom = dot(ab, ab);
  const double t = denom > 0.0 ? std::clamp(dot(p - a, ab) / denom, 0.0, 1.0) : 0.0;
  return length(p - (a + ab * t)) - radius;
}

double triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Closest point by Voronoi region of the triangle.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return length(ap);
  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return length(bp);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return length(p - (a + ab * (d1 / (d1 - d3))));
  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return length(cp);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return length(p - (a + ac * (d2 / (d2 - d6))));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return length(p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)))));
  const double denom = 1.0 / (va + vb + vc);
  return length(p - (a + ab * (vb * denom) + ac * (vc * denom)));
}

double winding_number(const Vec3& p, std::span<const Vec3> vertices, std::span<const Triangle> triangles) {
  double total = 0.0;
  for (const auto& t : triangles) {
    const Vec3 a = vertices[t[0]] - p, b = vertices[t[1]] - p, c = vertices[t[2]] - p;
    const double la = length(a), lb = length(b), lc = length(c);
    const double numer = dot(a, cross(b, c));
    const double denom = la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
    total += 2.0 * std::atan2(numer, denom);
  }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace sdf

namespace {

double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) { return sdf::capsule(p, a, b, 0.0); }

double box_distance(const Aabb& box, const Vec3& p) {
  return length(cwise_max(cwise_max(box.min - p, p - box.max), Vec3{}));
}

double mesh_unsigned_distance(const MeshShape& mesh, const Vec3& p) {
  const auto& verts = mesh.params.vertices;
  const auto& tris = mesh.params.triangles;
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const MeshBvhNode& node = mesh.bvh[stack[--top]];
    if (box_distance(node.box, p) >= best) continue;
    if (node.left == 0 && node.right == 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const auto& t = tris[mesh.triangle_order[i]];
        best = std::min(best, sdf::triangle_distance(p, verts[t[0]], verts[t[1]], verts[t[2]]));
      }
      continue;
    }
    // Visit the nearer child first.
    const double dl = box_distance(mesh.bvh[node.left].box, p);
    const double dr = box_distance(mesh.bvh[node.right].box, p);
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best;
}

bool strictly_outside(const Aabb& box, const Vec3& p) {
  return p.x < box.min.x || p.y < box.min.y || p.z < box.min.z || p.x > box.max.x || p.y > box.max.y ||
         p.z > box.max.z;
}

DistanceSample eval_leaf(const ShapeNode& node, const Vec3& p) {
  double d = 0.0;
  switch (node.kind()) {
    case ShapeKind::Sphere: d = sdf::sphere(p, node.as<SphereParams>().radius); break;
    case ShapeKind::Cube: {
      const auto& c = node.as<CubeParams>();
      d = sdf::rounded_box(p, c.size * 0.5, c.roundness);
      break;
    }
    case ShapeKind::Torus: {
      const auto& t = node.as<TorusParams>();
      d = sdf::torus(p, t.major_radius, t.minor_radius);
      break;
    }
    case ShapeKind::Cylinder: {
      const auto& c = node.as<CylinderParams>();
      d = sdf::cylinder(p, c.radius, c.half_height);
      break;
    }
    case ShapeKind::Pyramid: {
      const auto& y = node.as<PyramidParams>();
      d = sdf::pyramid(p, y.base_half_width, y.height);
      break;
    }
    case ShapeKind::House: d = sdf::house(p, node.as<HouseParams>().size); break;
    case ShapeKind::HermitePipe: d = eval_hermite_pipe(node.as<PipeShape>(), p); break;
    case ShapeKind::Mesh: d = eval_mesh_sdf(node.as<MeshShape>(), p); break;
    default: break;
  }
  return {d, &node};
}

}  // namespace

double eval_hermite_pipe(const PipeShape& pipe, const Vec3& p) {
  const auto& prm = pipe.params;
  const double k = prm.smoothness;
  const auto& line = pipe.centerline;

  auto tube = [&](double radius) {
    double d = segment_distance(p, line[0], line[1]) - radius;
    for (std::size_t i = 1; i + 1 < line.size(); ++i)
      d = smooth_min(d, segment_distance(p, line[i], line[i + 1]) - radius, k);
    return d;
  };

  const double outer = tube(prm.outer_radius);
  if (prm.inner_radius <= 0.0) return outer;
  double bore = tube(prm.inner_radius);

  const Vec3& start = line.front();
  const Vec3& end = line.back();
  if (prm.closed_ends) {
    // Bore stops one wall thickness short of each end.
    const double wall = prm.outer_radius - prm.inner_radius;
    const double start_cap = dot(p - (start + pipe.start_tangent * wall), -pipe.start_tangent);
    const double end_cap = dot(p - (end - pipe.end_tangent * wall), pipe.end_tangent);
    bore = std::max({bore, start_cap, end_cap});
  } else {
    // Extend the bore along the end tangents so it pierces the rounded ends.
    const double reach = prm.outer_radius;
    bore = std::min(bore, segment_distance(p, start - pipe.start_tangent * reach, start) - prm.inner_radius);
    bore = std::min(bore, segment_distance(p, end, end + pipe.end_tangent * reach) - prm.inner_radius);
  }
  return std::max(outer, -bore);
}

double eval_mesh_sdf(const MeshShape& mesh, const Vec3& p) {
  const double unsigned_distance = mesh_unsigned_distance(mesh, p);
  if (!mesh.watertight) return unsigned_distance;
  if (strictly_outside(mesh.bounds, p)) return unsigned_distance;
  // Orientation-agnostic: inward-wound meshes give winding -1 inside.
  const double w = sdf::winding_number(p, mesh.params.vertices, mesh.params.triangles);
  return std::abs(w) >= 0.5 ? -unsigned_distance : unsigned_distance;
}

double eval_mesh_sdf(std::span<const Vec3> vertices, std::span<const Triangle> triangles, const Vec3& p,
                     bool allow_open) {
  MeshParams params{{vertices.begin(), vertices.end()}, {triangles.begin(), triangles.end()}, allow_open};
  const auto node = make_mesh(std::move(params));
  return eval_mesh_sdf(node->as<MeshShape>(), p);
}

DistanceSample eval_sdf(const ShapeNode& node, const Vec3& p) {
  const auto children = node.children();
  switch (node.kind()) {
    case ShapeKind::Union: {
      const double k = node.as<CombinerParams>().smoothness;
      DistanceSample acc = eval_sdf(*children[0], p);
      for (std::size_t i = 1; i < children.size(); ++i) {
        const DistanceSample c = eval_sdf(*children[i], p);
        const ShapeNode* leaf = c.distance < acc.distance ? c.leaf : acc.leaf;
        acc = {smooth_min(acc.distance, c.distance, k), leaf};
      }
      return acc;
    }
    case ShapeKind::Subtract: {
      const double k = node.as<CombinerParams>().smoothness;
      DistanceSample acc = eval_sdf(*children[0], p);
      for (std::size_t i = 1; i < children.size(); ++i)
        acc.distance = smooth_max(acc.distance, -eval_sdf(*children[i], p).distance, k);
      return acc;
    }
    case ShapeKind::Intersect: {
      const double k = node.as<CombinerParams>().smoothness;
      DistanceSample acc = eval_sdf(*children[0], p);
      for (std::size_t i = 1; i < children.size(); ++i) {
        const DistanceSample c = eval_sdf(*children[i], p);
        const ShapeNode* leaf = c.distance > acc.distance ? c.leaf : acc.leaf;
        acc = {smooth_max(acc.distance, c.distance, k), leaf};
      }
      return acc;
    }
    case ShapeKind::Transformed: {
      const auto& placement = node.as<Placement>();
      DistanceSample s = eval_sdf(*children[0], placement.to_local(p));
      s.distance *= placement.transform.distance_scale();
      return s;
    }
    default: return eval_leaf(node, p);
  }
}

}  // namespace vf
