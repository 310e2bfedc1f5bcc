#include <gtest/gtest.h>

#include <algorithm>

#include "support/oracles.hpp"
#include "vf/geometry/errors.hpp"
#include "vf/geometry/sdf.hpp"

namespace vf {
namespace {

struct CubeMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
};

// Unit cube [0,1]^3 with outward-facing triangles.
CubeMesh unit_cube() {
  CubeMesh m;
  for (int i = 0; i < 8; ++i) m.vertices.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                 {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return m;
}

TEST(MeshSdf, CubeCenterAndFace) {
  const auto m = unit_cube();
  EXPECT_NEAR(eval_mesh_sdf(m.vertices, m.triangles, {0.5, 0.5, 0.5}), -0.5, 1e-12);
  EXPECT_NEAR(eval_mesh_sdf(m.vertices, m.triangles, {2, 0.5, 0.5}), 1.0, 1e-12);
}

TEST(MeshSdf, MatchesBoxOracle) {
  const auto m = unit_cube();
  const auto node = make_mesh({m.vertices, m.triangles, false});
  oracle::Rng rng(21);
  for (int n = 0; n < 5000; ++n) {
    const Vec3 p = rng.point(-1.5, 2.5);
    EXPECT_NEAR(eval_sdf(*node, p).distance, oracle::box(p - Vec3{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}), 1e-6);
  }
}

TEST(MeshSdf, SignIgnoresWindingOrientation) {
  auto m = unit_cube();
  for (auto& t : m.triangles) std::swap(t[1], t[2]);
  EXPECT_NEAR(eval_mesh_sdf(m.vertices, m.triangles, {0.5, 0.5, 0.5}), -0.5, 1e-12);
  EXPECT_NEAR(eval_mesh_sdf(m.vertices, m.triangles, {0.5, 0.5, 3}), 2.0, 1e-12);
}

TEST(MeshSdf, OpenSurfaceRejectedUnlessAllowed) {
  const std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const std::vector<Triangle> t{{0, 1, 2}};
  EXPECT_THROW(eval_mesh_sdf(v, t, {0, 0, 1}), DegenerateMesh);
  EXPECT_NEAR(eval_mesh_sdf(v, t, {0.2, 0.2, -1}, true), 1.0, 1e-12);
}

TEST(MeshSdf, DegenerateInputs) {
  const std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_THROW(eval_mesh_sdf(v, {}, {0, 0, 0}), DegenerateMesh);
  const std::vector<Vec3> bad{{0, 0, 0}, {1, 0, 0}, {0, std::nan(""), 0}};
  const std::vector<Triangle> t{{0, 1, 2}};
  EXPECT_THROW(eval_mesh_sdf(bad, t, {0, 0, 0}, true), DegenerateMesh);
  const std::vector<Triangle> out_of_range{{0, 1, 7}};
  EXPECT_THROW(make_mesh({v, out_of_range, true}), InvalidShapeParameters);
}

TEST(MeshSdf, WindingNumberOfClosedCube) {
  const auto m = unit_cube();
  EXPECT_NEAR(std::abs(sdf::winding_number({0.3, 0.6, 0.2}, m.vertices, m.triangles)), 1.0, 1e-9);
  EXPECT_NEAR(sdf::winding_number({3, 0.6, 0.2}, m.vertices, m.triangles), 0.0, 1e-9);
}

}  // namespace
}  // namespace vf
