#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vf/geometry/shape_node.hpp"

namespace vf {

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Material {
  MaterialId id = kNoMaterial;
  Rgb base_color;
  std::string name;
};

/// Surface palette. Ids are unique and nonzero; 0 marks empty voxels.
class Palette {
 public:
  /// The built-in palette exposed to programs as ESurfaceType.<name>.
  static const Palette& standard();

  /// Throws std::invalid_argument on a duplicate/zero id or out-of-range color.
  void add(Material material);

  const Material* find(MaterialId id) const;
  /// Throws UnknownMaterial.
  const Material& at(MaterialId id) const;
  std::optional<MaterialId> find_by_name(std::string_view name) const;
  bool contains(MaterialId id) const { return find(id) != nullptr; }
  std::span<const Material> materials() const { return materials_; }

 private:
  std::vector<Material> materials_;
};

}  // namespace vf
