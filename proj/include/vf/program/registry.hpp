#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vf/program/program.hpp"

namespace vf::program {

enum class Category { PrimitivePlacement, GeometricShapes, BooleanOperations, SurfaceUtilities };
std::string_view to_string(Category category);

enum class ParamType {
  Number,
  Integer,
  Bool,
  Vec3,        // FVector(...) or a 3-tuple of numbers
  Transform,   // FTransform(...)
  Shape,
  ShapeList,
  Stamp,
  SurfaceType,  // ESurfaceType.<material>
  BlendMode,    // EVoxelBooleanOperation.<member>
  VertexList,   // list of Vec3
  TriangleList, // list of integer 3-tuples
};
std::string_view to_string(ParamType type);

enum class ResultType { Vec3, Transform, Shape, Stamp, Mesh };
std::string_view to_string(ResultType type);

struct Range {
  std::optional<double> min;
  std::optional<double> max;
  bool min_exclusive = false;
  bool max_exclusive = false;

  bool contains(double v) const;
  std::string describe() const;
};

struct ParamSchema {
  std::string name;
  ParamType type;
  bool required = false;
  std::string default_text;  // canonical encoding of the default, for docs
  std::optional<Range> range;  // per component for FVector parameters
  std::string doc;
};

struct FunctionSchema {
  std::string name;
  Category category;
  std::vector<ParamSchema> params;  // positional order
  ResultType result;
  std::string doc;

  const ParamSchema* param(std::string_view name) const;
};

struct EnumSchema {
  std::string name;
  std::vector<std::string> members;
  bool contains(std::string_view member) const;
};

/// The callable API: the single source of truth for compliance and execution.
class ApiRegistry {
 public:
  static const ApiRegistry& standard();

  const FunctionSchema* function(std::string_view name) const;
  const EnumSchema* enumeration(std::string_view name) const;
  std::span<const FunctionSchema> functions() const { return functions_; }
  std::span<const EnumSchema> enums() const { return enums_; }

  /// Plain-text reference listing every function by category.
  std::string reference() const;

 private:
  std::vector<FunctionSchema> functions_;
  std::vector<EnumSchema> enums_;
};

inline constexpr std::string_view kSurfaceEnum = "ESurfaceType";
inline constexpr std::string_view kBlendEnum = "EVoxelBooleanOperation";
/// Name pre-bound to the scene stamp in every program.
inline constexpr std::string_view kSceneStamp = "stamp";

}  // namespace vf::program
