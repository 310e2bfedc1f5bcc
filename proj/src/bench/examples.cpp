#include <cmath>
#include <random>

#include <fmt/format.h>

#include "vf/bench/task.hpp"
#include "vf/stamp/material.hpp"

namespace vf::bench {

namespace {

constexpr std::string_view kEx1 = R"(#vfprog v1 source=canonical
sphere = MakeSphereNode(
    Radius=5.0,
    Transform=FTransform(Location=(10, 0, 10))
)
MakeStampFromNode(sphere, ESurfaceType.Default, 0, FTransform())
)";

constexpr std::string_view kEx2 = R"(#vfprog v1 source=canonical
cube = MakeCubeNode(
    Size=FVector(10, 10, 10),
    Roundness=0.0,
    Transform=FTransform(Location=(0, 0, 5))
)
torus = MakeTorusNode(
    MajorRadius=8.0,
    MinorRadius=2.0,
    Transform=FTransform(Location=(0, 0, 15))
)
UnionShapes(Stamp=stamp, Shapes=[cube, torus], Smoothness=0.0)
)";

constexpr std::string_view kEx3 = R"(#vfprog v1 source=canonical
cube = MakeCubeNode(
    Size=FVector(10, 10, 10),
    Roundness=0.0,
    Transform=FTransform()
)
sphere = MakeSphereNode(Radius=4.0, Transform=FTransform())
SubtractShapes(
    Stamp=stamp,
    BaseShape=cube,
    ShapesToSubtract=[sphere],
    Smoothness=2.0,
    Transform=FTransform()
)
)";

constexpr std::string_view kEx5 = R"(#vfprog v1 source=canonical
pipe = MakeHermitePipeNode(
    StartPosition=FVector(0, 0, 0),
    StartVelocity=FVector(100, 0, 0),
    EndPosition=FVector(200, 100, 50),
    EndVelocity=FVector(100, 0, 0),
    PipeOuterRadius=5.0,
    PipeInnerRadius=3.0,
    bClosedPipeEnds=True,
    NumSegments=20,
    Smoothness=10.0,
    Transform=FTransform()
)
MakeStampFromNode(pipe, ESurfaceType.Metal, 0, FTransform())
)";

constexpr std::string_view kEx7 = R"(#vfprog v1 source=canonical
trunk = MakeCylinderNode(
    Radius=3.0, HalfHeight=20.0,
    SurfaceType=ESurfaceType.Wood,
    Transform=FTransform(Location=(0, 0, 20))
)
foliage = MakeSphereNode(
    Radius=15.0,
    SurfaceType=ESurfaceType.Foliage,
    Transform=FTransform(Location=(0, 0, 50))
)
UnionShapes(Stamp=stamp, Shapes=[trunk, foliage],
            Smoothness=5.0)
)";

std::string staircase() {
  std::string out = "#vfprog v1 source=canonical\n";
  for (int i = 0; i < 8; ++i)
    out += fmt::format(
        "step_{} = MakeCubeNode(Size=FVector(20, 50, 5), Roundness=0.0, "
        "Transform=FTransform(Location=(0, 0, {}), Rotation=(0, 0, {})))\n",
        i, i * 2, i * 45);
  out += "UnionShapes(Stamp=stamp, Shapes=[step_0, step_1, step_2, step_3, step_4, step_5, step_6, step_7], "
         "Smoothness=0.0)\n";
  return out;
}

std::string castle() {
  std::string out = "#vfprog v1 source=canonical\n";
  out += "keep = MakeHouseNode(Size=FVector(30, 24, 36), SurfaceType=ESurfaceType.Stone, "
         "Transform=FTransform(Location=(0, 0, 18)))\n";
  std::vector<std::string> parts{"keep"};
  const int corners[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (int c = 0; c < 4; ++c) {
    const int x = 35 * corners[c][0], y = 35 * corners[c][1];
    out += fmt::format(
        "tower_{0} = MakeCylinderNode(Radius=6.0, HalfHeight=16.0, SurfaceType=ESurfaceType.Stone, "
        "Transform=FTransform(Location=({1}, {2}, 16)))\n"
        "roof_{0} = MakePyramidNode(BaseHalfWidth=7.0, Height=10.0, SurfaceType=ESurfaceType.Red, "
        "Transform=FTransform(Location=({1}, {2}, 32)))\n",
        c, x, y);
    parts.push_back(fmt::format("tower_{}", c));
    parts.push_back(fmt::format("roof_{}", c));
  }
  // Walls along +Y, -Y (long in X) and +X, -X (long in Y), each with three merlons.
  const char* walls[4] = {"north", "south", "east", "west"};
  for (int w = 0; w < 4; ++w) {
    const bool along_x = w < 2;
    const int offset = (w % 2 == 0) ? 35 : -35;
    const int x = along_x ? 0 : offset, y = along_x ? offset : 0;
    out += fmt::format(
        "wall_{} = MakeCubeNode(Size=FVector({}, {}, 20), Roundness=0.0, SurfaceType=ESurfaceType.Brick, "
        "Transform=FTransform(Location=({}, {}, 10)))\n",
        walls[w], along_x ? 58 : 4, along_x ? 4 : 58, x, y);
    parts.push_back(fmt::format("wall_{}", walls[w]));
    for (int m = -1; m <= 1; ++m) {
      const int mx = along_x ? 15 * m : x, my = along_x ? y : 15 * m;
      out += fmt::format(
          "merlon_{}_{} = MakeCubeNode(Size=FVector(4, 4, 4), Roundness=0.0, SurfaceType=ESurfaceType.Brick, "
          "Transform=FTransform(Location=({}, {}, 22)))\n",
          walls[w], m + 1, mx, my);
      parts.push_back(fmt::format("merlon_{}_{}", walls[w], m + 1));
    }
  }
  out += fmt::format("UnionShapes(Stamp=stamp, Shapes=[{}], Smoothness=0.0)\n", fmt::join(parts, ", "));
  return out;
}

TaskSpec task(std::string id, Category category, std::string subcategory, Difficulty difficulty,
              std::string prompt) {
  TaskSpec t;
  t.id = std::move(id);
  t.category = category;
  t.subcategory = std::move(subcategory);
  t.difficulty = difficulty;
  t.prompt = std::move(prompt);
  return t;
}

std::pair<std::size_t, std::size_t> count_window(std::size_t count) {
  return {static_cast<std::size_t>(std::floor(0.97 * static_cast<double>(count))),
          static_cast<std::size_t>(std::ceil(1.03 * static_cast<double>(count)))};
}

std::vector<WorkedExample> build_examples() {
  std::vector<WorkedExample> out;
  const GridSpec scene = GridSpec::default_scene();

  TaskSpec t1 = task("ex1_primitive_instantiation", Category::Symbolic, "primitive instantiation", Difficulty::Easy,
                     "Create a sphere with radius 5 centered\nat position (10, 0, 10).");
  t1.truth.occupied = count_window(sphere_voxel_count(scene, {10, 0, 10}, 5.0));
  t1.truth.bbox = Aabb{{5, -5, 5}, {15, 5, 15}};
  t1.truth.materials = {"Default"};
  out.push_back({t1, std::string(kEx1)});

  TaskSpec t2 = task("ex2_multiple_primitives", Category::Symbolic, "multiple primitives", Difficulty::Easy,
                     "Place a torus above a cube, both centered\nat the origin.");
  t2.truth.bbox = Aabb{{-10, -10, 0}, {10, 10, 17}};
  t2.truth.materials = {"Default"};
  out.push_back({t2, std::string(kEx2)});

  TaskSpec t3 = task("ex3_boolean_composition", Category::Geometric, "boolean composition", Difficulty::Medium,
                     "Create a cube with side length 10, then carve\nout a sphere with radius 4 from its center.");
  t3.truth.occupied = {695, 769};  // 731.9 units^3 at spacing 1, +-5%
  t3.truth.bbox = Aabb{{-5, -5, -5}, {5, 5, 5}};
  out.push_back({t3, std::string(kEx3)});

  TaskSpec t4 = task("ex4_iterative_construction", Category::Geometric, "iterative construction", Difficulty::Medium,
                     "Create a spiral staircase with 8 steps, each\nrotated 45 degrees and elevated by 2 units.");
  out.push_back({t4, staircase()});

  TaskSpec t5 = task("ex5_curved_geometry", Category::Geometric, "curved geometry", Difficulty::Hard,
                     "Create a curved pipe connecting two points\nwith smooth bends.");
  GridSpec g5;
  g5.origin = {-16, -16, -16};
  g5.dims = {232, 132, 80};
  t5.grid = g5;
  out.push_back({t5, std::string(kEx5)});

  TaskSpec t6 = task("ex6_thematic_scene", Category::Artistic, "thematic scene", Difficulty::Hard,
                     "Build a small medieval castle with four corner\ntowers and a central keep.");
  out.push_back({t6, castle()});

  TaskSpec t7 = task("ex7_natural_forms", Category::Artistic, "natural forms", Difficulty::Medium,
                     "Create a simple tree with trunk and foliage.");
  t7.truth.bbox = Aabb{{-15, -15, 0}, {15, 15, 65}};
  t7.truth.materials = {"Foliage", "Wood"};
  out.push_back({t7, std::string(kEx7)});
  return out;
}

}  // namespace

const std::vector<WorkedExample>& worked_examples() {
  static const std::vector<WorkedExample> examples = build_examples();
  return examples;
}

std::size_t sphere_voxel_count(const GridSpec& grid, const Vec3& center, double radius) {
  std::size_t count = 0;
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 d = grid.center(i, j, k) - center;
        if (std::abs(d.x) >= radius || std::abs(d.y) >= radius || std::abs(d.z) >= radius) continue;
        if (std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z) - radius < 0.0) ++count;
      }
  return count;
}

std::vector<WorkedExample> generate_sphere_tasks(std::uint64_t seed, int count) {
  // Raw engine output only: distributions are not portable across standard libraries.
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  static const char* colors[] = {"Red", "Green", "Blue", "Yellow", "White", "Black", "Gold", "Stone"};
  const GridSpec scene = GridSpec::default_scene();
  std::vector<WorkedExample> out;
  for (int n = 0; n < count; ++n) {
    const double radius = draw(30, 150) / 10.0;
    const Vec3 c{static_cast<double>(draw(-80, 80)), static_cast<double>(draw(-80, 80)),
                 static_cast<double>(draw(-80, 80))};
    const std::string color = colors[draw(0, 7)];
    std::string lower = color;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    TaskSpec t = task(fmt::format("sphere_{:03}", n), Category::Symbolic, "primitive placement", Difficulty::Easy,
                      fmt::format("Create a {} sphere with radius {} centered at position ({}, {}, {}).", lower,
                                  radius, c.x, c.y, c.z));
    t.truth.occupied = count_window(sphere_voxel_count(scene, c, radius));
    t.truth.bbox = Aabb{c - Vec3{radius, radius, radius}, c + Vec3{radius, radius, radius}};
    t.truth.materials = {color};
    const std::string program = fmt::format(
        "#vfprog v1 source=canonical\n"
        "sphere = MakeSphereNode(Radius={}, SurfaceType=ESurfaceType.{}, Transform=FTransform(Location=({}, {}, {})))\n"
        "MakeStampFromNode(sphere)\n",
        radius, color, c.x, c.y, c.z);
    out.push_back({std::move(t), program});
  }
  return out;
}

std::vector<TaskSpec> seed_dataset(std::uint64_t seed) {
  std::vector<TaskSpec> tasks;
  for (const auto& e : worked_examples()) tasks.push_back(e.task);
  for (auto& e : generate_sphere_tasks(seed)) tasks.push_back(std::move(e.task));
  return tasks;
}

}  // namespace vf::bench
