#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support/oracles.hpp"
#include "vf/geometry/errors.hpp"
#include "vf/geometry/sdf.hpp"
#include "vf/stamp/stamp_ops.hpp"
#include "vf/stamp/vxg_io.hpp"

namespace vf {
namespace {

constexpr MaterialId kStone = 2;
constexpr MaterialId kRed = 13;
constexpr MaterialId kBlue = 15;

Transform at(const Vec3& location) {
  Transform t;
  t.location = location;
  return t;
}

std::vector<bool> occupancy(const Stamp& s) {
  std::vector<bool> out;
  for (float d : s.distance()) out.push_back(d < 0.0f);
  return out;
}

TEST(GridSpec, ValidatesDimsSpacingAndBudget) {
  GridSpec g;
  EXPECT_NO_THROW(g.validate());
  g.spacing = 0;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = GridSpec{};
  g.dims = {0, 4, 4};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = GridSpec{};
  g.dims = {1024, 1024, 1024};
  EXPECT_THROW(g.validate(), GridBudgetExceeded);
  EXPECT_THROW(Stamp(GridSpec::centered({}, {64, 64, 64}, 1.0), 0, 1000), GridBudgetExceeded);
}

TEST(Stamp, EmptyStampUsesSentinel) {
  const Stamp s(GridSpec::centered({}, {8, 4, 2}, 0.5));
  EXPECT_FLOAT_EQ(s.empty_distance(), 4.0f);
  EXPECT_EQ(s.occupied_count(), 0u);
  const auto g = export_geometry(s);
  EXPECT_EQ(g.occupied, 0u);
  EXPECT_TRUE(g.bounds.empty());
}

TEST(MakeStamp, SphereCountMatchesBruteForceAndVolume) {
  const auto spec = GridSpec::centered({}, {32, 32, 32}, 1.0);
  const Stamp s = make_stamp_from_node(make_sphere(5.0), kStone, 0, {}, spec);
  const std::size_t expected = oracle::count_centers(spec, [](const Vec3& c) { return oracle::sphere(c, {}, 5) < 0; });
  EXPECT_EQ(s.occupied_count(), expected);
  // Half-integer centers at spacing 1 admit 552 voxels; the volume estimate
  // tightens at finer spacing.
  EXPECT_EQ(expected, 552u);
  const Stamp fine = make_stamp_from_node(make_sphere(5.0), kStone, 0, {}, GridSpec::centered({}, {32, 32, 32}, 0.5));
  const double analytic = 4.0 / 3.0 * std::numbers::pi * 125.0;
  EXPECT_NEAR(double(fine.occupied_count()) * 0.125, analytic, 0.03 * analytic);
  for (std::size_t v = 0; v < s.distance().size(); ++v)
    EXPECT_EQ(s.material()[v], s.distance()[v] < 0 ? kStone : kNoMaterial);
}

TEST(MakeStamp, AlignedCubeIsExactlyOneThousand) {
  const Stamp s = make_stamp_from_node(make_cube({10, 10, 10}), kStone, 0, {}, GridSpec::default_scene());
  EXPECT_EQ(s.occupied_count(), 1000u);
}

TEST(MakeStamp, DistanceEqualsTransformedSdf) {
  const auto spec = GridSpec::centered({}, {16, 16, 16}, 1.0);
  Transform t = at({1, -2, 0.5});
  t.rotation = {10, 20, 30};
  const auto shape = make_torus(4.0, 1.0);
  const Stamp s = make_stamp_from_node(shape, kStone, 3, t, spec);
  const auto placed = make_transformed(t, shape);
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        ASSERT_EQ(s.distance()[spec.index(i, j, k)], static_cast<float>(eval_sdf(*placed, spec.center(i, j, k)).distance));
  EXPECT_EQ(s.layer(), 3);
  EXPECT_EQ(export_geometry(s).layer, 3);
}

TEST(MakeStamp, UnknownMaterialRejected) {
  EXPECT_THROW(make_stamp_from_node(make_sphere(1), 999, 0, {}, GridSpec::centered({}, {4, 4, 4}, 1)),
               UnknownMaterial);
}

TEST(MakeStamp, SphereVolumeConvergesWithSpacing) {
  const double analytic = 4.0 / 3.0 * std::numbers::pi * 125.0;
  double previous = 1e300;
  for (double spacing : {2.0, 1.0, 0.5}) {
    const int n = static_cast<int>(std::lround(14.0 / spacing));
    const Stamp s = make_stamp_from_node(make_sphere(5.0), kStone, 0, {}, GridSpec::centered({0.1, 0.2, 0.3}, {n, n, n}, spacing));
    const double error = std::abs(double(s.occupied_count()) * spacing * spacing * spacing - analytic);
    EXPECT_LT(error, previous) << spacing;
    previous = error;
  }
}

TEST(UnionShapes, CubeAndTorusMatchBruteForce) {
  Stamp s(GridSpec::default_scene());
  const ShapePtr shapes[] = {make_transformed(at({0, 0, 5}), make_cube({10, 10, 10}, 0.0, kRed)),
                             make_transformed(at({0, 0, 15}), make_torus(8.0, 2.0, kBlue))};
  union_shapes(s, shapes, 0.0);
  const std::size_t expected = oracle::count_centers(GridSpec::default_scene(), [](const Vec3& c) {
    return oracle::box(c - Vec3{0, 0, 5}, {5, 5, 5}) < 0 || oracle::torus(c - Vec3{0, 0, 15}, 8, 2) < 0;
  });
  EXPECT_EQ(s.occupied_count(), expected);
  const auto g = export_geometry(s);
  ASSERT_EQ(g.per_material.size(), 2u);
  EXPECT_EQ(g.per_material.at(kRed), 1000u);
  EXPECT_GT(g.per_material.at(kBlue), 0u);
}

TEST(UnionShapes, EmptyStampUnionEqualsMakeStamp) {
  const auto spec = GridSpec::centered({}, {24, 24, 24}, 1.0);
  const auto shape = make_cylinder(4.0, 6.0, kStone);
  Stamp s(spec);
  const ShapePtr shapes[] = {shape};
  union_shapes(s, shapes, 0.0);
  EXPECT_EQ(s, make_stamp_from_node(shape, kStone, 0, {}, spec));
  const Stamp before = s;
  union_shapes(s, shapes, 0.0);
  EXPECT_EQ(occupancy(s), occupancy(before));
}

TEST(UnionShapes, DisjointOrderIndependent) {
  const auto spec = GridSpec::centered({}, {32, 16, 16}, 1.0);
  const ShapePtr a = make_transformed(at({-8, 0, 0}), make_sphere(4.0, kRed));
  const ShapePtr b = make_transformed(at({8, 0, 0}), make_cube({6, 6, 6}, 1.0, kBlue));
  Stamp ab(spec), ba(spec);
  stamp_node(ab, a, kNoMaterial, {});
  stamp_node(ab, b, kNoMaterial, {});
  stamp_node(ba, b, kNoMaterial, {});
  stamp_node(ba, a, kNoMaterial, {});
  EXPECT_EQ(ab, ba);
}

TEST(UnionShapes, FirstWriterKeepsMaterialAndCountNeverDrops) {
  const auto spec = GridSpec::centered({}, {24, 24, 24}, 1.0);
  Stamp s = make_stamp_from_node(make_sphere(5.0), kRed, 0, {}, spec);
  const std::size_t before = s.occupied_count();
  const ShapePtr overlapping[] = {make_transformed(at({3, 0, 0}), make_sphere(5.0, kBlue))};
  union_shapes(s, overlapping, 0.0);
  EXPECT_GE(s.occupied_count(), before);
  EXPECT_EQ(s.material()[spec.index(12, 12, 12)], kRed);
  EXPECT_EQ(s.material()[spec.index(19, 12, 12)], kBlue);
}

TEST(SubtractShapes, BooleanCompositionVolume) {
  Stamp s(GridSpec::centered({}, {32, 32, 32}, 0.5));
  const ShapePtr sphere[] = {make_sphere(4.0)};
  subtract_shapes(s, make_cube({10, 10, 10}), sphere, 2.0, {});
  const double volume = double(s.occupied_count()) * 0.125;
  const double analytic = 1000.0 - 4.0 / 3.0 * std::numbers::pi * 64.0;
  EXPECT_NEAR(volume, analytic, 0.05 * analytic);
  EXPECT_GE(s.distance()[s.spec().index(16, 16, 16)], 0.0f);
}

TEST(SubtractShapes, DisjointAndSelf) {
  const auto spec = GridSpec::centered({}, {24, 24, 24}, 1.0);
  const auto base = make_cube({8, 8, 8});
  Stamp disjoint(spec);
  const ShapePtr far[] = {make_transformed(at({50, 0, 0}), make_sphere(3.0))};
  subtract_shapes(disjoint, base, far, 0.0, {});
  EXPECT_EQ(occupancy(disjoint), occupancy(make_stamp_from_node(base, kDefaultMaterial, 0, {}, spec)));

  Stamp self(spec);
  const ShapePtr same[] = {base};
  subtract_shapes(self, base, same, 0.0, {});
  EXPECT_EQ(self.occupied_count(), 0u);
}

TEST(StampNode, SubtractModeCarvesAndResetsMaterial) {
  const auto spec = GridSpec::centered({}, {24, 24, 24}, 1.0);
  Stamp s = make_stamp_from_node(make_cube({12, 12, 12}), kStone, 0, {}, spec);
  stamp_node(s, make_sphere(4.0), kNoMaterial, {}, BlendMode::Subtract);
  const std::size_t expected = oracle::count_centers(spec, [](const Vec3& c) {
    return oracle::box(c, {6, 6, 6}) < 0 && oracle::sphere(c, {}, 4) >= 0;
  });
  EXPECT_EQ(s.occupied_count(), expected);
  for (std::size_t v = 0; v < s.distance().size(); ++v)
    ASSERT_EQ(s.material()[v], s.distance()[v] < 0 ? kStone : kNoMaterial);
}

TEST(IntersectShapes, MatchesBruteForce) {
  const auto spec = GridSpec::centered({}, {24, 24, 24}, 1.0);
  Stamp s(spec);
  const ShapePtr shapes[] = {make_sphere(7.0), make_cube({10, 10, 10})};
  intersect_shapes(s, shapes, 0.0);
  const std::size_t expected = oracle::count_centers(
      spec, [](const Vec3& c) { return oracle::sphere(c, {}, 7) < 0 && oracle::box(c, {5, 5, 5}) < 0; });
  EXPECT_EQ(s.occupied_count(), expected);
}

TEST(ExportGeometry, SphereCentroidAndBounds) {
  const Vec3 center{2.3, -1.7, 0.4};
  const auto spec = GridSpec::centered({}, {32, 32, 32}, 1.0);
  const Stamp s = make_stamp_from_node(make_sphere(5.0), kStone, 0, at(center), spec);
  const auto g = export_geometry(s);
  EXPECT_LT(oracle::dist(g.centroid, center), spec.spacing);
  EXPECT_EQ(g.occupied, s.occupied_count());
  EXPECT_LE(g.bounds.min.x, center.x - 4.0);
  EXPECT_GE(g.bounds.max.x, center.x + 4.0);
  EXPECT_EQ(g.per_material.at(kStone), g.occupied);
}

TEST(Kernels, SerialAndParallelBitIdentical) {
  const auto spec = GridSpec::centered({}, {40, 40, 40}, 0.75);
  Transform t = at({1, 2, 3});
  t.rotation = {15, 25, 35};
  const auto shape = make_union({make_torus(8.0, 2.0, kRed), make_cube({6, 8, 10}, 1.0, kBlue)}, 1.5);
  const Stamp a = make_stamp_from_node(shape, kStone, 0, t, spec, Palette::standard(), {kernels::Execution::Serial});
  const Stamp b = make_stamp_from_node(shape, kStone, 0, t, spec, Palette::standard(), {kernels::Execution::Parallel});
  EXPECT_EQ(a, b);
}

TEST(Kernels, StopPredicateInterrupts) {
  const kernels::StopPredicate stop = [] { return true; };
  Stamp s(GridSpec::centered({}, {8, 8, 8}, 1.0));
  StampOptions options{kernels::Execution::Serial, &stop};
  EXPECT_THROW(stamp_node(s, make_sphere(2.0), kStone, {}, BlendMode::Union, options), OperationInterrupted);
}

TEST(Vxg, RoundTripIsBitExact) {
  const auto spec = GridSpec::centered({0.25, 0, -3}, {9, 7, 5}, 0.5);
  const Stamp s = make_stamp_from_node(make_sphere(1.5, kBlue), kBlue, 0, {}, spec);
  std::stringstream buffer;
  write_vxg(s, buffer);
  EXPECT_EQ(buffer.str().size(), 4 + 12 + 4 + 12 + spec.voxel_count() * 6);
  EXPECT_EQ(buffer.str().substr(0, 4), "VXG1");
  const Stamp back = read_vxg(buffer);
  EXPECT_EQ(back.spec(), s.spec());
  EXPECT_TRUE(std::equal(back.distance().begin(), back.distance().end(), s.distance().begin()));
  EXPECT_TRUE(std::equal(back.material().begin(), back.material().end(), s.material().begin()));
}

TEST(Vxg, RejectsBadInput) {
  std::stringstream bad("VXG2xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx");
  EXPECT_THROW(read_vxg(bad), IoFailure);
  const Stamp s(GridSpec::centered({}, {2, 2, 2}, 1.0));
  std::stringstream buffer;
  write_vxg(s, buffer);
  std::stringstream truncated(buffer.str().substr(0, buffer.str().size() - 3));
  EXPECT_THROW(read_vxg(truncated), IoFailure);
}

}  // namespace
}  // namespace vf
