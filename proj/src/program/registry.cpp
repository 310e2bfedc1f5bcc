#include "vf/program/registry.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "vf/stamp/material.hpp"

namespace vf::program {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::PrimitivePlacement: return "primitive placement";
    case Category::GeometricShapes: return "geometric shapes";
    case Category::BooleanOperations: return "boolean operations";
    case Category::SurfaceUtilities: return "surface utilities";
  }
  return "?";
}

std::string_view to_string(ParamType type) {
  switch (type) {
    case ParamType::Number: return "float";
    case ParamType::Integer: return "int";
    case ParamType::Bool: return "bool";
    case ParamType::Vec3: return "FVector";
    case ParamType::Transform: return "FTransform";
    case ParamType::Shape: return "ShapeNode";
    case ParamType::ShapeList: return "list[ShapeNode]";
    case ParamType::Stamp: return "Stamp";
    case ParamType::SurfaceType: return "ESurfaceType";
    case ParamType::BlendMode: return "EVoxelBooleanOperation";
    case ParamType::VertexList: return "list[FVector]";
    case ParamType::TriangleList: return "list[(int, int, int)]";
  }
  return "?";
}

std::string_view to_string(ResultType type) {
  switch (type) {
    case ResultType::Vec3: return "FVector";
    case ResultType::Transform: return "FTransform";
    case ResultType::Shape: return "ShapeNode";
    case ResultType::Stamp: return "Stamp";
    case ResultType::Mesh: return "SurfaceMesh";
  }
  return "?";
}

bool Range::contains(double v) const {
  if (min && (min_exclusive ? v <= *min : v < *min)) return false;
  if (max && (max_exclusive ? v >= *max : v > *max)) return false;
  return true;
}

std::string Range::describe() const {
  std::string lo = min ? fmt::format("{}{}", min_exclusive ? "> " : ">= ", *min) : "";
  std::string hi = max ? fmt::format("{}{}", max_exclusive ? "< " : "<= ", *max) : "";
  if (!lo.empty() && !hi.empty()) return lo + " and " + hi;
  return lo + hi;
}

const ParamSchema* FunctionSchema::param(std::string_view n) const {
  for (const auto& p : params)
    if (p.name == n) return &p;
  return nullptr;
}

bool EnumSchema::contains(std::string_view member) const {
  return std::find(members.begin(), members.end(), member) != members.end();
}

namespace {

Range positive() { return {0.0, std::nullopt, true, false}; }
Range non_negative() { return {0.0, std::nullopt, false, false}; }

ParamSchema req(std::string name, ParamType type, std::optional<Range> range = std::nullopt, std::string doc = "") {
  return {std::move(name), type, true, "", range, std::move(doc)};
}

ParamSchema opt(std::string name, ParamType type, std::string def, std::optional<Range> range = std::nullopt,
                std::string doc = "") {
  return {std::move(name), type, false, std::move(def), range, std::move(doc)};
}

ParamSchema surface() { return opt("SurfaceType", ParamType::SurfaceType, "ESurfaceType.Default"); }
ParamSchema transform() { return opt("Transform", ParamType::Transform, "FTransform()"); }

}  // namespace

const ApiRegistry& ApiRegistry::standard() {
  static const ApiRegistry registry = [] {
    ApiRegistry r;
    using P = ParamType;
    using C = Category;
    r.functions_ = {
        {"FVector", C::PrimitivePlacement,
         {opt("X", P::Number, "0"), opt("Y", P::Number, "0"), opt("Z", P::Number, "0")}, ResultType::Vec3,
         "3D vector (world units)."},
        {"FTransform", C::PrimitivePlacement,
         {opt("Location", P::Vec3, "(0, 0, 0)"), opt("Rotation", P::Vec3, "(0, 0, 0)", std::nullopt,
                                                      "(roll, pitch, yaw) in degrees about X, Y, Z"),
          opt("Scale", P::Vec3, "(1, 1, 1)")},
         ResultType::Transform, "Placement: scale, then rotate, then translate."},
        {"MakeStampFromNode", C::PrimitivePlacement,
         {req("Shape", P::Shape), opt("SurfaceType", P::SurfaceType, "ESurfaceType.Default"),
          opt("Layer", P::Integer, "0", non_negative()), transform(),
          opt("BlendMode", P::BlendMode, "EVoxelBooleanOperation.Union")},
         ResultType::Stamp, "Stamps a shape into the scene stamp and returns it."},
        {"MakeSphereNode", C::GeometricShapes, {req("Radius", P::Number, positive()), surface(), transform()},
         ResultType::Shape, "Sphere centered at the origin."},
        {"MakeCubeNode", C::GeometricShapes,
         {req("Size", P::Vec3, positive()), opt("Roundness", P::Number, "0", non_negative(), "corner radius <= min(Size) / 2"),
          surface(), transform()},
         ResultType::Shape, "Box of full extents Size centered at the origin."},
        {"MakeTorusNode", C::GeometricShapes,
         {req("MajorRadius", P::Number, positive()), req("MinorRadius", P::Number, positive(), "< MajorRadius"),
          surface(), transform()},
         ResultType::Shape, "Torus around the Z axis."},
        {"MakeCylinderNode", C::GeometricShapes,
         {req("Radius", P::Number, positive()), req("HalfHeight", P::Number, positive()), surface(), transform()},
         ResultType::Shape, "Cylinder along Z from -HalfHeight to +HalfHeight."},
        {"MakePyramidNode", C::GeometricShapes,
         {req("BaseHalfWidth", P::Number, positive()), req("Height", P::Number, positive()), surface(), transform()},
         ResultType::Shape, "Square pyramid with its base on z = 0 and apex at z = Height."},
        {"MakeHouseNode", C::GeometricShapes, {req("Size", P::Vec3, positive()), surface(), transform()}, ResultType::Shape,
         "Box body (lower 2/3 of Size.Z) under a gabled roof whose ridge runs along X."},
        {"MakeHermitePipeNode", C::GeometricShapes,
         {req("StartPosition", P::Vec3), req("StartVelocity", P::Vec3), req("EndPosition", P::Vec3),
          req("EndVelocity", P::Vec3), req("PipeOuterRadius", P::Number, positive()),
          opt("PipeInnerRadius", P::Number, "0", non_negative(), "< PipeOuterRadius"),
          opt("bClosedPipeEnds", P::Bool, "True"), opt("NumSegments", P::Integer, "16", Range{1.0, 4096.0}),
          opt("Smoothness", P::Number, "0", non_negative()), surface(), transform()},
         ResultType::Shape, "Tube along a cubic Hermite curve; hollow when PipeInnerRadius > 0."},
        {"MakeMeshNode", C::GeometricShapes,
         {req("Vertices", P::VertexList), req("Triangles", P::TriangleList), opt("bAllowOpenMesh", P::Bool, "False"),
          surface(), transform()},
         ResultType::Shape, "Closed triangle mesh; open meshes need bAllowOpenMesh=True (unsigned distance)."},
        {"UnionShapes", C::BooleanOperations,
         {req("Stamp", P::Stamp), req("Shapes", P::ShapeList), opt("Smoothness", P::Number, "0", non_negative())},
         ResultType::Stamp, "Adds the union of Shapes to the stamp."},
        {"SubtractShapes", C::BooleanOperations,
         {req("Stamp", P::Stamp), req("BaseShape", P::Shape), req("ShapesToSubtract", P::ShapeList),
          opt("Smoothness", P::Number, "0", non_negative()), transform()},
         ResultType::Stamp, "Adds BaseShape minus ShapesToSubtract to the stamp."},
        {"IntersectShapes", C::BooleanOperations,
         {req("Stamp", P::Stamp), req("Shapes", P::ShapeList), opt("Smoothness", P::Number, "0", non_negative())},
         ResultType::Stamp, "Adds the intersection of Shapes to the stamp."},
        {"GenerateSurfaceMesh", C::SurfaceUtilities,
         {req("Stamp", P::Stamp), opt("IsoLevel", P::Number, "0")}, ResultType::Mesh,
         "Requests marching-cubes mesh export at IsoLevel."},
        {"SmoothSurfaceMesh", C::SurfaceUtilities,
         {req("Stamp", P::Stamp), opt("Iterations", P::Integer, "3", Range{0.0, 1000.0}),
          opt("Lambda", P::Number, "0.5", Range{0.0, 1.0, true, false})},
         ResultType::Mesh, "Requests Laplacian smoothing of the exported mesh."},
    };
    EnumSchema surfaces{std::string(kSurfaceEnum), {}};
    for (const auto& m : Palette::standard().materials()) surfaces.members.push_back(m.name);
    r.enums_ = {std::move(surfaces), {std::string(kBlendEnum), {"Union", "Subtract", "Intersect"}}};
    return r;
  }();
  return registry;
}

const FunctionSchema* ApiRegistry::function(std::string_view name) const {
  for (const auto& f : functions_)
    if (f.name == name) return &f;
  return nullptr;
}

const EnumSchema* ApiRegistry::enumeration(std::string_view name) const {
  for (const auto& e : enums_)
    if (e.name == name) return &e;
  return nullptr;
}

std::string ApiRegistry::reference() const {
  std::string out;
  for (Category c : {Category::PrimitivePlacement, Category::GeometricShapes, Category::BooleanOperations,
                     Category::SurfaceUtilities}) {
    out += fmt::format("## {}\n\n", to_string(c));
    for (const auto& f : functions_) {
      if (f.category != c) continue;
      out += fmt::format("{}(", f.name);
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        const auto& p = f.params[i];
        out += fmt::format("{}{}: {}", i ? ", " : "", p.name, to_string(p.type));
        if (!p.required) out += " = " + p.default_text;
      }
      out += fmt::format(") -> {}\n    {}\n", to_string(f.result), f.doc);
      for (const auto& p : f.params) {
        if (!p.range && p.doc.empty()) continue;
        out += fmt::format("    {}:", p.name);
        if (p.range) out += " " + p.range->describe();
        if (!p.doc.empty()) out += (p.range ? "; " : " ") + p.doc;
        out += "\n";
      }
    }
    out += "\n";
  }
  for (const auto& e : enums_) {
    out += fmt::format("{}: ", e.name);
    for (std::size_t i = 0; i < e.members.size(); ++i) out += (i ? ", " : "") + e.name + "." + e.members[i];
    out += "\n";
  }
  out += fmt::format("\nThe name `{}` refers to the scene stamp.\n", kSceneStamp);
  return out;
}

}  // namespace vf::program
