#pragma once

#include <map>
#include <span>
#include <stdexcept>

#include "vf/geometry/shape_node.hpp"
#include "vf/kernels/field_fill.hpp"
#include "vf/stamp/material.hpp"
#include "vf/stamp/stamp.hpp"

namespace vf {

/// How a stamped node combines with the field already in the stamp.
enum class BlendMode { Union, Subtract, Intersect };

struct StampOptions {
  kernels::Execution execution = kernels::Execution::Parallel;
  const kernels::StopPredicate* should_stop = nullptr;
};

/// Thrown when StampOptions::should_stop interrupts an operation. The stamp
/// is left partially updated and must be discarded.
class OperationInterrupted : public std::runtime_error {
 public:
  OperationInterrupted() : std::runtime_error("stamp operation interrupted") {}
};

/// Fresh stamp holding `node` placed by `t`; every occupied voxel gets `surface`.
Stamp make_stamp_from_node(const ShapePtr& node, MaterialId surface, int layer, const Transform& t,
                           const GridSpec& spec, const Palette& palette = Palette::standard(),
                           StampOptions options = {});

/// Writes `node` placed by `t` into an existing stamp. Newly occupied voxels
/// get `surface` (or the leaf surface when `surface` is kNoMaterial).
void stamp_node(Stamp& stamp, const ShapePtr& node, MaterialId surface, const Transform& t,
                BlendMode mode = BlendMode::Union, StampOptions options = {});

/// distance <- smooth_min(old, smooth-union(shapes), smoothness).
void union_shapes(Stamp& stamp, std::span<const ShapePtr> shapes, double smoothness, StampOptions options = {});

/// Unions smooth_max(base, -union(subtrahends)) placed by `t` into the stamp.
void subtract_shapes(Stamp& stamp, const ShapePtr& base, std::span<const ShapePtr> subtrahends, double smoothness,
                     const Transform& t, StampOptions options = {});

/// Unions the smooth intersection of `shapes` into the stamp.
void intersect_shapes(Stamp& stamp, std::span<const ShapePtr> shapes, double smoothness, StampOptions options = {});

struct GeometrySummary {
  std::size_t occupied = 0;
  Aabb bounds;  // union of occupied voxel cells; empty() when nothing is occupied
  Vec3 centroid;
  std::map<MaterialId, std::size_t> per_material;
  int layer = 0;
  GridSpec grid;
};

GeometrySummary export_geometry(const Stamp& stamp);

}  // namespace vf
