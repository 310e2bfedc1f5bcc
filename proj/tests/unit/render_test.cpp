#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "vf/render/render.hpp"
#include "vf/stamp/stamp_ops.hpp"

namespace vf {
namespace {

Camera front_ortho(double width_world, int pixels) {
  Camera cam;
  cam.projection = Camera::Projection::Orthographic;
  cam.position = {0, 30, 0};
  cam.look_at = {0, 0, 0};
  cam.up = {0, 0, 1};
  cam.ortho_width = width_world;
  cam.width = cam.height = pixels;
  return cam;
}

Stamp sphere_stamp(double spacing) {
  const int n = static_cast<int>(std::lround(16.0 / spacing));
  return make_stamp_from_node(make_sphere(5.0), 2, 0, {}, GridSpec::centered({}, {n, n, n}, spacing));
}

TEST(Camera, Validation) {
  Camera cam;
  EXPECT_NO_THROW(cam.validate());
  cam.look_at = cam.position;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
  cam = Camera{};
  cam.fov_deg = 150;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
  cam = Camera{};
  cam.width = 0;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
}

TEST(Render, EmptyStampIsBackground) {
  const Stamp s(GridSpec::centered({}, {8, 8, 8}, 1.0));
  const auto r = render(s, front_ortho(20, 32));
  EXPECT_EQ(silhouette_fraction(r.image), 0.0);
  EXPECT_EQ(r.image.at(5, 7), kBackground);
}

TEST(Render, SphereSilhouetteFraction) {
  const double expected = std::numbers::pi * 25.0 / 400.0;
  for (double spacing : {1.0, 0.5}) {
    const double f = silhouette_fraction(render(sphere_stamp(spacing), front_ortho(20, 256)).image);
    EXPECT_NEAR(f, expected, 0.03 * expected) << spacing;
  }
}

TEST(Render, SilhouetteResolutionInvariant) {
  const Stamp s = sphere_stamp(0.5);
  const double a = silhouette_fraction(render(s, front_ortho(20, 256)).image);
  const double b = silhouette_fraction(render(s, front_ortho(20, 512)).image);
  EXPECT_NEAR(a, b, 0.01 * b);
}

TEST(Render, CubeSilhouetteIsAxisAlignedSquare) {
  const Stamp s = make_stamp_from_node(make_cube({10, 10, 10}), 2, 0, {}, GridSpec::centered({}, {20, 20, 20}, 1.0));
  const auto r = render(s, front_ortho(20, 200));
  int x0 = 200, x1 = -1, y0 = 200, y1 = -1;
  for (int y = 0; y < 200; ++y)
    for (int x = 0; x < 200; ++x)
      if (r.image.at(x, y) != kBackground) {
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
      }
  // 10 units at 10 px per unit: pixels 50..149.
  EXPECT_NEAR(x0, 50, 1);
  EXPECT_NEAR(x1, 149, 1);
  EXPECT_NEAR(y0, 50, 1);
  EXPECT_NEAR(y1, 149, 1);
  // Interior is solid except where interpolation rounds corners within one voxel (10 px).
  for (int y = y0 + 1; y < y1; ++y)
    for (int x = x0 + 1; x < x1; ++x) {
      const bool corner = std::min(x - x0, x1 - x) < 10 && std::min(y - y0, y1 - y) < 10;
      if (!corner) ASSERT_NE(r.image.at(x, y), kBackground) << x << "," << y;
    }
}

TEST(Render, SerialAndParallelBitIdentical) {
  const Stamp s = sphere_stamp(1.0);
  Camera cam = canonical_camera(View::Perspective, s.spec().bounds(), 160, 90);
  const auto serial = render(s, cam, {kernels::Execution::Serial});
  const auto parallel = render(s, cam, {kernels::Execution::Parallel});
  EXPECT_EQ(serial.image, parallel.image);
  EXPECT_EQ(serial.depth, parallel.depth);
  EXPECT_EQ(render(s, cam).image, parallel.image);
}

TEST(Render, LitFromAboveIsBrighterThanBelow) {
  const auto r = render(sphere_stamp(0.5), front_ortho(20, 128));
  const auto top = r.image.at(64, 40), bottom = r.image.at(64, 88);
  EXPECT_GT(int(top[0]) + top[1] + top[2], int(bottom[0]) + bottom[1] + bottom[2]);
}

TEST(RenderCanonical, TorusAboveCubeShowsHoleFromTop) {
  Stamp s(GridSpec::default_scene());
  Transform cube_at, torus_at;
  cube_at.location = {0, 0, 5};
  torus_at.location = {0, 0, 15};
  const ShapePtr shapes[] = {make_transformed(cube_at, make_cube({10, 10, 10})),
                             make_transformed(torus_at, make_torus(8.0, 2.0))};
  union_shapes(s, shapes, 0.0);
  const RenderSet set = render_canonical(s, 320, 180);
  const auto& top = set.views[2];
  const Camera cam = canonical_camera(View::Top, export_geometry(s).bounds, 320, 180);
  // Through the hole the ray lands on the cube top (z = 10), not the ring (z = 17).
  const float center_depth = top.depth[90 * 320 + 160];
  const double cube_top_depth = cam.position.z - 10.0;
  EXPECT_NEAR(center_depth, cube_top_depth, 0.6);
  // Along the ring radius the torus top is hit.
  const double px_per_unit = 320.0 / cam.ortho_width;
  const int ring_x = 160 + static_cast<int>(std::lround(8.0 * px_per_unit));
  EXPECT_NEAR(top.depth[90 * 320 + ring_x], cam.position.z - 17.0, 0.6);
  for (const auto& view : set.views) EXPECT_GT(silhouette_fraction(view.image), 0.0);
}

TEST(RenderCanonical, EmptyStampWritesFourBackgroundImages) {
  const Stamp s(GridSpec::centered({}, {8, 8, 8}, 1.0));
  const RenderSet set = render_canonical(s, 64, 36);
  const auto dir = std::filesystem::temp_directory_path() / "vf_render_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_render_set(set, dir, "task", "model");
  for (std::size_t v = 0; v < 4; ++v) {
    EXPECT_EQ(silhouette_fraction(set.views[v].image), 0.0);
    ASSERT_TRUE(std::filesystem::exists(paths[v]));
    EXPECT_EQ(read_png(paths[v]), set.views[v].image);
  }
  EXPECT_EQ(paths[3].filename(), "task__model__perspective.png");
  std::filesystem::remove_all(dir);
}

TEST(RenderCanonical, DefaultResolution) {
  const Stamp s(GridSpec::centered({}, {4, 4, 4}, 1.0));
  const RenderSet set = render_canonical(s);
  EXPECT_EQ(set.views[0].image.width, 1920);
  EXPECT_EQ(set.views[0].image.height, 1080);
}

}  // namespace
}  // namespace vf
