#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vf/geometry/errors.hpp"
#include "vf/geometry/sdf.hpp"

namespace vf {
namespace {

Transform at(const Vec3& location) {
  Transform t;
  t.location = location;
  return t;
}

TEST(EvalSdf, SphereCenter) { EXPECT_DOUBLE_EQ(eval_sdf(*make_sphere(5.0), {0, 0, 0}).distance, -5.0); }

TEST(EvalSdf, PlacedSphereFromWorkedExample) {
  const auto sphere = make_transformed(at({10, 0, 10}), make_sphere(5.0));
  EXPECT_DOUBLE_EQ(eval_sdf(*sphere, {10, 0, 10}).distance, -5.0);
}

TEST(EvalSdf, TorusTubeCenter) { EXPECT_DOUBLE_EQ(eval_sdf(*make_torus(8.0, 2.0), {8, 0, 0}).distance, -2.0); }

TEST(EvalSdf, CubeHalfExtent) {
  EXPECT_DOUBLE_EQ(eval_sdf(*make_cube({10, 10, 10}, 0.0), {0, 0, 0}).distance, -5.0);
}

TEST(EvalSdf, CylinderAndPyramidAndHouse) {
  EXPECT_DOUBLE_EQ(eval_sdf(*make_cylinder(3.0, 20.0), {0, 0, 0}).distance, -3.0);
  EXPECT_DOUBLE_EQ(eval_sdf(*make_cylinder(3.0, 20.0), {0, 0, 25}).distance, 5.0);
  // Pyramid: inside near the base center, outside above the apex.
  EXPECT_LT(eval_sdf(*make_pyramid(4.0, 6.0), {0, 0, 1}).distance, 0.0);
  EXPECT_GT(eval_sdf(*make_pyramid(4.0, 6.0), {0, 0, 7}).distance, 0.0);
  EXPECT_NEAR(eval_sdf(*make_pyramid(4.0, 6.0), {0, 0, 6}).distance, 0.0, 1e-12);
  // House of height 9: body to z = 1.5, ridge at z = 4.5.
  const auto house = make_house({10, 6, 9});
  EXPECT_LT(eval_sdf(*house, {0, 0, 0}).distance, 0.0);
  EXPECT_LT(eval_sdf(*house, {0, 0, 4.0}).distance, 0.0);
  EXPECT_GT(eval_sdf(*house, {0, 2.9, 4.0}).distance, 0.0);
  EXPECT_GT(eval_sdf(*house, {0, 0, 5.0}).distance, 0.0);
}

TEST(EvalSdf, InvalidParametersNameTheField) {
  auto field_of = [](auto&& fn) {
    try {
      fn();
    } catch (const InvalidShapeParameters& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of([] { make_sphere(-1.0); }), "Radius");
  EXPECT_EQ(field_of([] { make_cube({1, 2, 0}); }), "Size");
  EXPECT_EQ(field_of([] { make_cube({4, 4, 4}, 2.5); }), "Roundness");
  EXPECT_EQ(field_of([] { make_torus(2.0, 2.0); }), "MinorRadius");
  EXPECT_EQ(field_of([] { make_cylinder(1.0, 0.0); }), "HalfHeight");
  EXPECT_EQ(field_of([] { make_union({}, 0.0); }), "Shapes");
  EXPECT_EQ(field_of([] { make_union({make_sphere(1)}, -1.0); }), "Smoothness");
  EXPECT_EQ(field_of([] {
              Transform t;
              t.scale = {1, 0, 1};
              make_transformed(t, make_sphere(1));
            }),
            "Transform.Scale");
}

TEST(SmoothMin, ExamplesFromClosedForm) {
  EXPECT_DOUBLE_EQ(smooth_min(3, 7, 0), 3.0);
  // h = 0.5: 2 - 4 * 0.25.
  EXPECT_DOUBLE_EQ(smooth_min(2, 2, 4), 1.0);
  EXPECT_DOUBLE_EQ(smooth_min(-1, 10, 1), -1.0);
}

TEST(SmoothMin, BoundsSymmetryAndMonotonicity) {
  oracle::Rng rng(7);
  for (int n = 0; n < 10000; ++n) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), k = rng.uniform(0, 8);
    const double m = std::min(a, b);
    const double s = smooth_min(a, b, k);
    EXPECT_LE(s, m + 1e-12);
    EXPECT_GE(s, m - k / 4.0 - 1e-12);
    EXPECT_NEAR(s, smooth_min(b, a, k), 1e-12);
  }
  // Non-increasing in k at equal operands.
  double prev = smooth_min(1.5, 1.5, 0.0);
  for (double k = 0.1; k < 10.0; k += 0.1) {
    const double cur = smooth_min(1.5, 1.5, k);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(SmoothMin, ContinuousInAllArguments) {
  oracle::Rng rng(8);
  const double eps = 1e-7;
  for (int n = 0; n < 2000; ++n) {
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), k = rng.uniform(0.01, 4);
    const double s = smooth_min(a, b, k);
    EXPECT_NEAR(smooth_min(a + eps, b, k), s, 2 * eps);
    EXPECT_NEAR(smooth_min(a, b + eps, k), s, 2 * eps);
    EXPECT_NEAR(smooth_min(a, b, k + eps), s, 2 * eps);
  }
  // k -> 0 approaches min.
  EXPECT_NEAR(smooth_min(1.0, 1.0, 1e-9), 1.0, 1e-9);
}

TEST(EvalSdf, ClosedFormOracles) {
  oracle::Rng rng(11);
  const auto sphere = make_sphere(4.5);
  const auto cube = make_cube({6, 8, 4}, 0.0);
  const auto rounded = make_cube({6, 8, 4}, 1.25);
  const auto torus = make_torus(6.0, 1.5);
  const auto cylinder = make_cylinder(2.5, 4.0);
  for (int n = 0; n < 10000; ++n) {
    const Vec3 p = rng.point(-12, 12);
    EXPECT_NEAR(eval_sdf(*sphere, p).distance, oracle::sphere(p, {}, 4.5), 1e-6);
    EXPECT_NEAR(eval_sdf(*cube, p).distance, oracle::box(p, {3, 4, 2}), 1e-6);
    EXPECT_NEAR(eval_sdf(*rounded, p).distance, oracle::rounded_box(p, {3, 4, 2}, 1.25), 1e-6);
    EXPECT_NEAR(eval_sdf(*torus, p).distance, oracle::torus(p, 6.0, 1.5), 1e-6);
    EXPECT_NEAR(eval_sdf(*cylinder, p).distance, oracle::cylinder(p, 2.5, 4.0), 1e-6);
  }
}

TEST(EvalSdf, ExactPrimitivesAreOneLipschitz) {
  oracle::Rng rng(12);
  const ShapePtr shapes[] = {make_sphere(3.0), make_torus(5.0, 1.0), make_cylinder(2.0, 3.0),
                             make_cube({4, 6, 8}, 1.0)};
  for (int n = 0; n < 10000; ++n) {
    const Vec3 p = rng.point(-10, 10);
    const Vec3 q = p + rng.point(-2, 2);
    for (const auto& s : shapes)
      EXPECT_LE(std::abs(eval_sdf(*s, q).distance - eval_sdf(*s, p).distance), oracle::dist(p, q) + 1e-9);
  }
}

TEST(EvalSdf, HardBooleansMatchPointwiseMinMax) {
  oracle::Rng rng(13);
  const auto a = make_transformed(at({1, 0, 0}), make_sphere(3.0));
  const auto b = make_transformed(at({-1, 1, 0}), make_cube({4, 4, 4}));
  const auto u = make_union({a, b});
  const auto s = make_subtract(a, {b});
  const auto i = make_intersect({a, b});
  for (int n = 0; n < 5000; ++n) {
    const Vec3 p = rng.point(-6, 6);
    const double da = eval_sdf(*a, p).distance, db = eval_sdf(*b, p).distance;
    EXPECT_EQ(eval_sdf(*u, p).distance, std::min(da, db));
    EXPECT_EQ(eval_sdf(*s, p).distance, std::max(da, -db));
    EXPECT_EQ(eval_sdf(*i, p).distance, std::max(da, db));
  }
}

TEST(EvalSdf, UnionAndIntersectCommutativeIdempotent) {
  oracle::Rng rng(14);
  const auto a = make_torus(4.0, 1.0);
  const auto b = make_transformed(at({0, 0, 1}), make_cylinder(1.5, 3.0));
  for (int n = 0; n < 2000; ++n) {
    const Vec3 p = rng.point(-6, 6);
    EXPECT_EQ(eval_sdf(*make_union({a, b}), p).distance, eval_sdf(*make_union({b, a}), p).distance);
    EXPECT_EQ(eval_sdf(*make_intersect({a, b}), p).distance, eval_sdf(*make_intersect({b, a}), p).distance);
    EXPECT_EQ(eval_sdf(*make_union({a, a}), p).distance, eval_sdf(*a, p).distance);
    EXPECT_EQ(eval_sdf(*make_intersect({a, a}), p).distance, eval_sdf(*a, p).distance);
  }
}

// Inverse rigid transform built independently: undo yaw, then pitch, then roll.
Vec3 rotate_axis(const Vec3& v, int axis, double degrees) {
  const double r = degrees * std::numbers::pi / 180.0, c = std::cos(r), s = std::sin(r);
  switch (axis) {
    case 0: return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
    case 1: return {c * v.x + s * v.z, v.y, -s * v.x + c * v.z};
    default: return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
  }
}

TEST(Transform, RigidRoundTrip) {
  oracle::Rng rng(15);
  const auto cube = make_cube({2, 4, 6}, 0.5);
  for (int n = 0; n < 2000; ++n) {
    Transform t;
    t.location = rng.point(-5, 5);
    t.rotation = rng.point(-180, 180);
    const auto placed = make_transformed(t, cube);
    const Vec3 p = rng.point(-10, 10);
    Vec3 local = p - t.location;
    local = rotate_axis(local, 2, -t.rotation.z);
    local = rotate_axis(local, 1, -t.rotation.y);
    local = rotate_axis(local, 0, -t.rotation.x);
    EXPECT_NEAR(eval_sdf(*placed, p).distance, eval_sdf(*cube, local).distance, 1e-9);
    EXPECT_NEAR(oracle::dist(t.to_local(t.to_world(local)), local), 0.0, 1e-9);
  }
}

TEST(Transform, YawTurnsXTowardY) {
  Transform t;
  t.rotation = {0, 0, 90};
  const Vec3 w = t.to_world({1, 0, 0});
  EXPECT_NEAR(w.x, 0.0, 1e-12);
  EXPECT_NEAR(w.y, 1.0, 1e-12);
}

TEST(Transform, UniformScaleKeepsExactDistance) {
  Transform t;
  t.scale = {2, 2, 2};
  const auto big = make_transformed(t, make_sphere(1.0));
  EXPECT_DOUBLE_EQ(eval_sdf(*big, {5, 0, 0}).distance, 3.0);
}

TEST(MaterialHint, NearestLeafWins) {
  const auto red = make_transformed(at({-5, 0, 0}), make_sphere(2.0, 13));
  const auto blue = make_transformed(at({5, 0, 0}), make_sphere(2.0, 15));
  const auto both = make_union({red, blue}, 1.0);
  EXPECT_EQ(eval_sdf(*both, {-4, 0, 0}).material(), 13);
  EXPECT_EQ(eval_sdf(*both, {4, 0, 0}).material(), 15);
  const auto carved = make_subtract(red, {blue});
  EXPECT_EQ(eval_sdf(*carved, {0, 0, 0}).material(), 13);
}

}  // namespace
}  // namespace vf
