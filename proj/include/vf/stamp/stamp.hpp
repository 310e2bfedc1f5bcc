#pragma once

#include <span>
#include <vector>

#include "vf/geometry/shape_node.hpp"
#include "vf/stamp/grid_spec.hpp"

namespace vf {

/// Mutable voxel scene state: a dense signed-distance grid plus one material
/// id per voxel. Voxels with distance < 0 are occupied and always carry a
/// material; unoccupied voxels carry kNoMaterial.
class Stamp {
 public:
  explicit Stamp(const GridSpec& spec, int layer = 0, std::size_t voxel_budget = kDefaultVoxelBudget);

  const GridSpec& spec() const noexcept { return spec_; }
  int layer() const noexcept { return layer_; }
  void set_layer(int layer) noexcept { layer_ = layer; }

  /// Distance stored for untouched voxels: spacing * max(dims).
  float empty_distance() const noexcept { return empty_distance_; }

  std::span<const float> distance() const noexcept { return distance_; }
  std::span<float> distance() noexcept { return distance_; }
  std::span<const MaterialId> material() const noexcept { return material_; }
  std::span<MaterialId> material() noexcept { return material_; }

  std::size_t occupied_count() const;
  void clear();

  friend bool operator==(const Stamp&, const Stamp&) = default;

 private:
  GridSpec spec_;
  int layer_;
  float empty_distance_;
  std::vector<float> distance_;
  std::vector<MaterialId> material_;
};

}  // namespace vf
