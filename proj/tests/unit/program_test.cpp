#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "vf/program/compliance.hpp"
#include "vf/program/interpreter.hpp"
#include "vf/program/program.hpp"
#include "vf/stamp/stamp_ops.hpp"

namespace vf::program {
namespace {

constexpr std::string_view kEx1 = R"(sphere = MakeSphereNode(
    Radius=5.0,
    Transform=FTransform(Location=(10, 0, 10))
)
MakeStampFromNode(sphere, ESurfaceType.Default, 0, FTransform())
)";

constexpr std::string_view kEx3 = R"(cube = MakeCubeNode(Size=FVector(10, 10, 10), Roundness=0.0, Transform=FTransform())
sphere = MakeSphereNode(Radius=4.0, Transform=FTransform())
SubtractShapes(Stamp=stamp, BaseShape=cube, ShapesToSubtract=[sphere], Smoothness=2.0, Transform=FTransform())
)";

ExecutionLimits small_grid(double spacing = 1.0, int dims = 32) {
  ExecutionLimits limits;
  limits.grid = GridSpec::centered({}, {dims, dims, dims}, spacing);
  return limits;
}

std::vector<ViolationKind> kinds(std::string_view text) {
  std::vector<ViolationKind> out;
  for (const auto& v : check_compliance(parse_program(text))) out.push_back(v.kind);
  return out;
}

TEST(Parse, SingleCall) {
  const auto p = parse_program("s = MakeSphereNode(Radius=1)");
  ASSERT_EQ(p.calls.size(), 1u);
  EXPECT_EQ(p.calls[0].function, "MakeSphereNode");
  EXPECT_EQ(p.calls[0].targets, std::vector<std::string>{"s"});
  EXPECT_EQ(*p.calls[0].args[0].value.get_if<double>(), 1.0);
}

TEST(Parse, ExampleOneHasTwoCalls) {
  const auto p = parse_program(kEx1);
  ASSERT_EQ(p.calls.size(), 2u);
  EXPECT_EQ(p.calls[0].function, "MakeSphereNode");
  EXPECT_EQ(p.calls[1].function, "MakeStampFromNode");
  EXPECT_EQ(p.calls[1].pos.line, 5);
  const auto* nested = p.calls[0].args[1].value.get_if<NestedCall>();
  ASSERT_NE(nested, nullptr);
  EXPECT_EQ(nested->call->function, "FTransform");
}

TEST(Parse, LiteralForms) {
  const auto p = parse_program(R"(a = F(x=-1.5e2, y=True, z='q"t', w=(1,), v=(2), u=[], e=E.M)  # trailing
b = G(); c = H(a))");
  ASSERT_EQ(p.calls.size(), 3u);
  const auto& args = p.calls[0].args;
  EXPECT_EQ(*args[0].value.get_if<double>(), -150.0);
  EXPECT_EQ(*args[1].value.get_if<bool>(), true);
  EXPECT_EQ(*args[2].value.get_if<std::string>(), "q\"t");
  EXPECT_EQ(args[3].value.get_if<Tuple>()->items.size(), 1u);
  EXPECT_EQ(*args[4].value.get_if<double>(), 2.0);
  EXPECT_TRUE(args[5].value.get_if<List>()->items.empty());
  EXPECT_EQ(*args[6].value.get_if<EnumToken>(), (EnumToken{"E", "M"}));
  EXPECT_EQ(p.calls[2].args[0].value.get_if<Identifier>()->name, "a");
}

TEST(Parse, ErrorsCarryPosition) {
  auto pos_of = [](std::string_view text) {
    try {
      parse_program(text);
    } catch (const ParseError& e) {
      return e.pos();
    }
    return SourcePos{-1, -1};
  };
  // Truncated mid-call.
  const SourcePos truncated = pos_of("s = MakeSphereNode(Radius=5.0,\n    Transform=FTransform(");
  EXPECT_EQ(truncated.line, 2);
  EXPECT_GT(truncated.column, 0);
  EXPECT_EQ(pos_of("x = = F()").line, 1);
  EXPECT_EQ(pos_of("F()\nG(1 2)").line, 2);
  EXPECT_EQ(pos_of("F(a=1, a)").line, 1);  // positional after named
  EXPECT_EQ(pos_of("F('open").line, 1);
  EXPECT_EQ(pos_of("   \n  ").line, 1);
}

TEST(Parse, CallCapRaisesProgramTooLarge) {
  std::string text;
  for (std::size_t i = 0; i <= kMaxCalls; ++i) text += "F()\n";
  EXPECT_THROW(parse_program(text), ProgramTooLarge);
  text.resize(text.size() - 4);
  EXPECT_EQ(parse_program(text).calls.size(), kMaxCalls);
}

// Random programs over every value form, for the round-trip property.
class ProgramGen {
 public:
  explicit ProgramGen(unsigned seed) : rng_(seed) {}

  SceneProgram program() {
    SceneProgram p;
    p.meta.source = pick(2) ? SourceKind::TracedScript : SourceKind::Canonical;
    p.meta.source_hash = rng_();
    const int n = 1 + pick(12);
    for (int i = 0; i < n; ++i) p.calls.push_back(call(0));
    return p;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string name() {
    static const char* names[] = {"a", "cube", "sphere_2", "Foo", "_x", "stamp", "t0"};
    return names[pick(7)];
  }
  Call call(int depth) {
    Call c;
    if (depth == 0) {
      const int t = pick(4);
      for (int i = 0; i < (t == 3 ? 3 : t == 2 ? 0 : 1); ++i) c.targets.push_back(name());
    }
    static const char* fns[] = {"MakeSphereNode", "FVector", "UnionShapes", "MakePrismNode", "F"};
    c.function = fns[pick(5)];
    const int n = pick(5);
    const int positional = pick(n + 1);
    for (int i = 0; i < n; ++i) c.args.push_back({i < positional ? "" : "P" + std::to_string(i), value(depth)});
    return c;
  }
  Value value(int depth) {
    Value v;
    switch (pick(depth > 2 ? 5 : 8)) {
      case 0: {
        const double mags[] = {0.0, 1.0, 0.1, 1e-7, 123456.789, 1e21};
        v.data = (pick(2) ? -1.0 : 1.0) * mags[pick(6)] * std::uniform_real_distribution<double>(0.5, 2)(rng_);
        if (pick(3) == 0) v.data = static_cast<double>(pick(100) - 50);
        break;
      }
      case 1: v.data = pick(2) == 1; break;
      case 2: v.data = std::string(pick(2) ? "plain" : "q'uo\"te\\n\nx"); break;
      case 3: v.data = Identifier{name()}; break;
      case 4: v.data = EnumToken{"ESurfaceType", pick(2) ? "Stone" : "Wood"}; break;
      case 5: {
        Tuple t;
        for (int i = 0, n = pick(4); i < n; ++i) t.items.push_back(value(depth + 1));
        v.data = std::move(t);
        break;
      }
      case 6: {
        List l;
        for (int i = 0, n = pick(4); i < n; ++i) l.items.push_back(value(depth + 1));
        v.data = std::move(l);
        break;
      }
      default: v.data = NestedCall{std::make_shared<Call>(call(depth + 1))};
    }
    return v;
  }
  std::mt19937_64 rng_;
};

TEST(Parse, RoundTripProperty) {
  ProgramGen gen(42);
  for (int n = 0; n < 500; ++n) {
    const SceneProgram p = gen.program();
    const std::string text = serialize(p);
    SceneProgram back;
    ASSERT_NO_THROW(back = parse_program(text)) << text;
    ASSERT_EQ(back, p) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Parse, HashIsFnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Compliance, WorkedExamplesAreCompliant) {
  EXPECT_TRUE(kinds(kEx1).empty());
  EXPECT_TRUE(kinds(kEx3).empty());
}

TEST(Compliance, HallucinatedNames) {
  EXPECT_EQ(kinds("p = MakePrismNode(Radius=1)"), std::vector{ViolationKind::UnknownFunction});
  EXPECT_EQ(kinds("s = MakeSphereNode(Radius=1)\n"
                  "MakeStampFromNode(s, BlendMode=EVoxelBooleanOperation.Intersection)"),
            std::vector{ViolationKind::UnknownEnumValue});
  EXPECT_EQ(kinds("s = MakeSphereNode(Radius=1, Colour=ESurfaceType.Red)"),
            std::vector{ViolationKind::UnknownParameter});
  EXPECT_EQ(kinds("s = MakeSphereNode(Radius=1, SurfaceType=ESurfaceType.Mauve)"),
            std::vector{ViolationKind::UnknownEnumValue});
}

TEST(Compliance, RangesTypesAndReferences) {
  EXPECT_EQ(kinds("s = MakeSphereNode(Radius=-1)"), std::vector{ViolationKind::ParameterOutOfRange});
  EXPECT_EQ(kinds("c = MakeCubeNode(Size=(1, 0, 1))"), std::vector{ViolationKind::ParameterOutOfRange});
  EXPECT_EQ(kinds("s = MakeSphereNode()"), std::vector{ViolationKind::MissingParameter});
  EXPECT_EQ(kinds("s = MakeSphereNode(Radius='big')"), std::vector{ViolationKind::TypeMismatch});
  EXPECT_EQ(kinds("UnionShapes(stamp, [ghost])"), std::vector{ViolationKind::DanglingReference});
  EXPECT_EQ(kinds("c = MakeCubeNode(Size=(1, 2))"), std::vector{ViolationKind::ArityMismatch});
  EXPECT_EQ(kinds("a, b = FVector(1, 2, 3)"), std::vector{ViolationKind::ArityMismatch});
  EXPECT_TRUE(kinds("x, y, z = FVector(1, 2, 3)").empty());
  const auto v = check_compliance(parse_program("s = MakeSphereNode(Radius=1)\nt = MakeTorusNode(1, 0.5)\n"
                                                "UnionShapes(stamp, [s, t, u])"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].call_index, 2u);
  EXPECT_EQ(v[0].pos.line, 3);
}

TEST(Execute, ExampleOneStampsSphere) {
  ExecutionLimits limits;
  limits.grid = GridSpec::centered({10, 0, 10}, {32, 32, 32}, 1.0);
  const auto out = run_source(kEx1, limits);
  ASSERT_EQ(out.status, Status::Success) << out.error_message;
  EXPECT_EQ(out.error, ErrorClass::None);
  EXPECT_EQ(out.calls_executed, 2u);
  const auto summary = export_geometry(*out.stamp);
  EXPECT_NEAR(summary.occupied, 4.0 / 3.0 * std::numbers::pi * 125, 0.06 * 523.6);
  EXPECT_NEAR(summary.centroid.x, 10.0, 1.0);
  EXPECT_NEAR(summary.centroid.z, 10.0, 1.0);
  EXPECT_EQ(summary.per_material.begin()->first, kDefaultMaterial);
}

TEST(Execute, ExampleThreeMatchesDirectStamp) {
  const ExecutionLimits limits = small_grid(0.5, 32);
  const auto out = run_source(kEx3, limits);
  ASSERT_EQ(out.status, Status::Success) << out.error_message;
  Stamp direct(limits.grid);
  subtract_shapes(direct, make_cube({10, 10, 10}), std::vector{make_sphere(4.0)}, 2.0, Transform{});
  EXPECT_TRUE(std::ranges::equal(out.stamp->distance(), direct.distance()));
  EXPECT_TRUE(std::ranges::equal(out.stamp->material(), direct.material()));
  const double volume = static_cast<double>(export_geometry(*out.stamp).occupied) * 0.125;
  EXPECT_NEAR(volume, 731.9, 0.05 * 731.9);
}

TEST(Execute, EmptyEffectIsSuccessWithNothingOccupied) {
  const auto out = run_source("s = MakeSphereNode(Radius=3)", small_grid());
  EXPECT_EQ(out.status, Status::Success);
  EXPECT_EQ(export_geometry(*out.stamp).occupied, 0u);
}

TEST(Execute, SurfaceOverrideAndBlendModes) {
  const auto out = run_source(R"(c = MakeCubeNode(Size=(10, 10, 10), SurfaceType=ESurfaceType.Stone)
MakeStampFromNode(c, Layer=2)
s = MakeSphereNode(Radius=3)
MakeStampFromNode(s, ESurfaceType.Gold, BlendMode=EVoxelBooleanOperation.Subtract)
)",
                              small_grid());
  ASSERT_EQ(out.status, Status::Success) << out.error_message;
  const auto summary = export_geometry(*out.stamp);
  EXPECT_EQ(summary.layer, 2);
  ASSERT_EQ(summary.per_material.size(), 1u);
  EXPECT_EQ(summary.per_material.begin()->first, 2);  // Stone kept, carved region empty
  EXPECT_LT(summary.occupied, 1000u);
}

TEST(Execute, VectorUnpackingBindsScalars) {
  const auto out = run_source("x, y, z = FVector(1, 2, 3)\ns = MakeSphereNode(Radius=z)\nMakeStampFromNode(s)",
                              small_grid());
  ASSERT_EQ(out.status, Status::Success) << out.error_message;
  EXPECT_GT(export_geometry(*out.stamp).occupied, 50u);
}

TEST(Execute, MeshRequestsAreRecorded) {
  const auto out = run_source("GenerateSurfaceMesh(stamp, 0.5)\nSmoothSurfaceMesh(stamp, Iterations=5, Lambda=0.25)",
                              small_grid());
  ASSERT_EQ(out.status, Status::Success) << out.error_message;
  EXPECT_TRUE(out.mesh.requested);
  EXPECT_EQ(out.mesh.iso_level, 0.5);
  EXPECT_EQ(out.mesh.smooth_iterations, 5);
  EXPECT_EQ(out.mesh.smooth_lambda, 0.25);
}

struct Classified {
  const char* text;
  Status status;
  ErrorClass error;
};

TEST(Classify, TaxonomyRows) {
  const Classified cases[] = {
      {"p = MakePrismNode(Radius=1)", Status::Failed, ErrorClass::InvalidApiAttribute},
      {"s = MakeSphereNode(Radius=1)\nMakeStampFromNode(s, BlendMode=EVoxelBooleanOperation.Intersection)",
       Status::Failed, ErrorClass::InvalidApiAttribute},
      {"UnionShapes(stamp, [ghost])", Status::Failed, ErrorClass::InvalidApiAttribute},
      {"a, b = FVector(1, 2, 3)", Status::Failed, ErrorClass::TypeUnpackingError},
      {"c = MakeCubeNode(Size=(1, 2))", Status::Failed, ErrorClass::TypeUnpackingError},
      {"s = MakeSphereNode(Radius=(1, 2, 3))", Status::Failed, ErrorClass::TypeUnpackingError},
      {"s = MakeSphereNode(Radius=-1)", Status::Failed, ErrorClass::TimeoutOrCrash},
      {"m = MakeMeshNode([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])\nMakeStampFromNode(m)", Status::Failed,
       ErrorClass::TimeoutOrCrash},
      {"s = MakeSphereNode(Radius=1", Status::Failed, ErrorClass::SyntaxError},
  };
  for (const auto& c : cases) {
    const auto out = run_source(c.text, small_grid());
    EXPECT_EQ(out.status, c.status) << c.text;
    EXPECT_EQ(out.error, c.error) << c.text << "\n" << out.error_message;
    EXPECT_FALSE(out.error_message.empty());
    EXPECT_FALSE(out.logs.empty());
  }
}

TEST(Classify, SyntaxErrorKeepsPosition) {
  const auto out = run_source("s = MakeSphereNode(Radius=1)\nMakeStampFromNode(s,,)", small_grid());
  EXPECT_EQ(out.error, ErrorClass::SyntaxError);
  EXPECT_EQ(out.error_pos.line, 2);
  EXPECT_EQ(out.stamp, nullptr);
}

TEST(Classify, CompliantSuccessHasNoHallucinations) {
  const auto out = run_source(kEx3, small_grid());
  ASSERT_EQ(out.status, Status::Success);
  for (const auto& v : out.violations) {
    EXPECT_NE(v.kind, ViolationKind::UnknownFunction);
    EXPECT_NE(v.kind, ViolationKind::UnknownEnumValue);
  }
}

TEST(Limits, OpBudgetStopsLongProgramsEarly) {
  std::string text = "s = MakeSphereNode(Radius=2)\n";
  for (int i = 0; i < 5000; ++i) text += "MakeStampFromNode(s)\n";
  ExecutionLimits limits = small_grid();
  limits.op_budget = 1000;
  const auto out = run_source(text, limits);
  EXPECT_EQ(out.status, Status::Failed);
  EXPECT_EQ(out.error, ErrorClass::TimeoutOrCrash);
  EXPECT_LE(out.ops_used, 1000u);
  EXPECT_LT(out.calls_executed, 5000u);
}

TEST(Limits, CallCapClassifiedAsTimeoutOrCrash) {
  std::string text;
  for (std::size_t i = 0; i <= kMaxCalls; ++i) text += "v = FVector(1, 2, 3)\n";
  const auto out = run_source(text, small_grid());
  EXPECT_EQ(out.status, Status::Failed);
  EXPECT_EQ(out.error, ErrorClass::TimeoutOrCrash);
}

TEST(Limits, WallClockTimeoutInterruptsKernels) {
  // A dense pipe on the full default scene takes far longer than 200 ms.
  const std::string text =
      "p = MakeHermitePipeNode((-100, 0, 0), (300, 0, 0), (100, 50, 0), (300, 0, 0), 8.0, 0, True, 4096, 4.0)\n"
      "MakeStampFromNode(p)\nMakeStampFromNode(p)\n";
  ExecutionLimits limits;
  limits.timeout = std::chrono::milliseconds(200);
  limits.op_budget = std::uint64_t{1} << 40;
  const auto start = std::chrono::steady_clock::now();
  const auto out = run_source(text, limits);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(out.status, Status::TimedOut);
  EXPECT_EQ(out.error, ErrorClass::TimeoutOrCrash);
  EXPECT_GE(out.wall_seconds, 0.2);
  EXPECT_LT(elapsed, 0.2 + 2.0);
}

TEST(Isolation, PriorProgramDoesNotLeak) {
  const ExecutionLimits limits = small_grid();
  const std::string_view q = "t = MakeTorusNode(6, 2)\nMakeStampFromNode(t, ESurfaceType.Glass)";
  const auto alone = run_source(q, limits);
  run_source("c = MakeCubeNode(Size=(20, 20, 20))\nMakeStampFromNode(c)\nx = FVector(1, 2, 3)", limits);
  const auto after = run_source(q, limits);
  ASSERT_EQ(alone.status, Status::Success);
  EXPECT_EQ(after.status, alone.status);
  EXPECT_TRUE(std::ranges::equal(after.stamp->distance(), alone.stamp->distance()));
  EXPECT_TRUE(std::ranges::equal(after.stamp->material(), alone.stamp->material()));
  EXPECT_EQ(run_source("UnionShapes(stamp, [c])", limits).error, ErrorClass::InvalidApiAttribute);
}

TEST(Outcome, RecordRoundTrip) {
  auto out = run_source("s = MakeSphereNode(Radius=-1)", small_grid());
  out.wall_seconds = 0.25;
  const std::string text = format_outcome(out);
  EXPECT_EQ(text.rfind("outcome.v1\n", 0), 0u);
  const auto back = parse_outcome(text);
  EXPECT_EQ(back.status, out.status);
  EXPECT_EQ(back.error, out.error);
  EXPECT_EQ(back.error_message, out.error_message);
  EXPECT_EQ(back.error_pos.line, out.error_pos.line);
  EXPECT_EQ(back.wall_seconds, 0.25);
  EXPECT_EQ(back.ops_used, out.ops_used);
  EXPECT_THROW(parse_outcome("outcome.v2\n"), std::invalid_argument);
}

}  // namespace
}  // namespace vf::program
