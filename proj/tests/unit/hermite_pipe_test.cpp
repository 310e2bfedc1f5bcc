#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "vf/geometry/errors.hpp"
#include "vf/geometry/sdf.hpp"

namespace vf {
namespace {

HermitePipeParams straight(double inner, bool closed) {
  HermitePipeParams p;
  p.start_position = {0, 0, 0};
  p.start_velocity = {20, 0, 0};
  p.end_position = {20, 0, 0};
  p.end_velocity = {20, 0, 0};
  p.outer_radius = 4.0;
  p.inner_radius = inner;
  p.closed_ends = closed;
  p.num_segments = 8;
  return p;
}

HermitePipeParams curved_example() {
  HermitePipeParams p;
  p.start_position = {0, 0, 0};
  p.start_velocity = {100, 0, 0};
  p.end_position = {200, 100, 50};
  p.end_velocity = {100, 0, 0};
  p.outer_radius = 5.0;
  p.inner_radius = 3.0;
  p.closed_ends = true;
  p.num_segments = 20;
  p.smoothness = 10.0;
  return p;
}

TEST(HermitePipe, CurveInterpolatesEndpoints) {
  const auto p = curved_example();
  EXPECT_NEAR(oracle::dist(hermite_point(p, 0.0), p.start_position), 0.0, 1e-12);
  EXPECT_NEAR(oracle::dist(hermite_point(p, 1.0), p.end_position), 0.0, 1e-12);
  // Midpoint of the cubic Hermite basis: (P0 + P1)/2 + (V0 - V1)/8.
  const Vec3 mid = hermite_point(p, 0.5);
  EXPECT_NEAR(mid.x, 100.0, 1e-9);
  EXPECT_NEAR(mid.y, 50.0, 1e-9);
  EXPECT_NEAR(mid.z, 25.0, 1e-9);
}

TEST(HermitePipe, SolidStraightPipeAxisMidpoint) {
  const auto node = make_hermite_pipe(straight(0.0, true));
  EXPECT_NEAR(eval_sdf(*node, {10, 0, 0}).distance, -4.0, 1e-9);
  EXPECT_NEAR(eval_sdf(*node, {10, 7, 0}).distance, 3.0, 1e-9);
}

TEST(HermitePipe, OpenHollowPipeAxisIsOutsideByInnerRadius) {
  const auto node = make_hermite_pipe(straight(1.5, false));
  for (double x : {0.0, 5.0, 10.0, 20.0}) EXPECT_NEAR(eval_sdf(*node, {x, 0, 0}).distance, 1.5, 1e-9) << x;
  // Wall midpoint is inside.
  EXPECT_NEAR(eval_sdf(*node, {10, 2.75, 0}).distance, -1.25, 1e-9);
}

TEST(HermitePipe, ClosedHollowPipeHasCappedBore) {
  const auto node = make_hermite_pipe(straight(1.5, true));
  EXPECT_NEAR(eval_sdf(*node, {10, 0, 0}).distance, 1.5, 1e-9);
  EXPECT_LT(eval_sdf(*node, {0, 0, 0}).distance, 0.0);
  EXPECT_LT(eval_sdf(*node, {20, 0, 0}).distance, 0.0);
}

TEST(HermitePipe, CurvedExampleStartIsInsideTheCap) {
  const double d = eval_sdf(*make_hermite_pipe(curved_example()), {0, 0, 0}).distance;
  EXPECT_GT(d, -5.0);
  EXPECT_LT(d, 0.0);
}

TEST(HermitePipe, CurvedExampleBoreIsHollowMidway) {
  const auto p = curved_example();
  const auto node = make_hermite_pipe(p);
  EXPECT_GT(eval_sdf(*node, hermite_point(p, 0.5)).distance, 0.0);
}

TEST(HermitePipe, RejectsInvalidParameters) {
  auto p = straight(0.0, true);
  p.inner_radius = 4.0;
  EXPECT_THROW(make_hermite_pipe(p), InvalidShapeParameters);
  p = straight(0.0, true);
  p.num_segments = 0;
  EXPECT_THROW(make_hermite_pipe(p), InvalidShapeParameters);
  p = straight(0.0, true);
  p.smoothness = -1;
  EXPECT_THROW(make_hermite_pipe(p), InvalidShapeParameters);
}

}  // namespace
}  // namespace vf
