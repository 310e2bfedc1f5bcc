#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "vf/geometry/shape_node.hpp"
#include "vf/stamp/stamp.hpp"

namespace vf {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<MaterialId> materials;  // one per triangle

  bool empty() const noexcept { return triangles.empty(); }
  double surface_area() const;
  /// Signed enclosed volume; positive when triangles wind outward.
  double signed_volume() const;
  friend bool operator==(const TriangleMesh&, const TriangleMesh&) = default;
};

/// No sign change anywhere in the grid. A signal for callers, not a failure.
class EmptySurface : public std::runtime_error {
 public:
  EmptySurface() : std::runtime_error("stamp has no iso-surface") {}
};

/// Marching cubes over the voxel-center lattice. Corners with distance < iso
/// are inside. Vertices are shared between neighboring cubes, so closed
/// solids produce watertight meshes with outward winding.
TriangleMesh marching_cubes(const Stamp& stamp, double iso = 0.0);

inline constexpr int kDefaultSmoothIterations = 3;
inline constexpr double kDefaultSmoothLambda = 0.5;

/// Uniform Laplacian smoothing with Jacobi updates. Throws
/// std::invalid_argument unless 0 < lambda <= 1 and iterations >= 0.
TriangleMesh laplacian_smooth(const TriangleMesh& mesh, int iterations = kDefaultSmoothIterations,
                              double lambda = kDefaultSmoothLambda);

/// Every undirected edge is used by exactly two triangles.
bool is_watertight(const TriangleMesh& mesh);
/// V - E + F.
long euler_characteristic(const TriangleMesh& mesh);

/// Wavefront OBJ, one `g material_<id>` group per material in ascending id order.
void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path);

// VXM1 mesh dump, little-endian:
//   "VXM1" | vertex count u32 | triangle count u32 | positions f32[3n]
//   | indices u32[3m] | materials u16[m]
void write_vxm(const TriangleMesh& mesh, std::ostream& out);
TriangleMesh read_vxm(std::istream& in);

}  // namespace vf
