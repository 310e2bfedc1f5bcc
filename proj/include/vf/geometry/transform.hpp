#pragma once

#include "vf/geometry/vec3.hpp"

namespace vf {

/// Location / rotation / scale. Rotation holds Euler degrees about the
/// X (roll), Y (pitch) and Z (yaw) axes, composed intrinsically Z-Y-X:
/// R = Rz(yaw) * Ry(pitch) * Rx(roll). World point = R * (scale * local) + location.
struct Transform {
  Vec3 location{};
  Vec3 rotation{};
  Vec3 scale{1.0, 1.0, 1.0};

  static Transform identity() { return {}; }

  Mat3 rotation_matrix() const;

  Vec3 to_world(const Vec3& local) const;
  Vec3 to_local(const Vec3& world) const;

  /// Factor that keeps distances measured in local space conservative in
  /// world space. Exact when scale is uniform.
  double distance_scale() const { return min_component(scale); }

  bool is_identity() const;
  bool is_rigid() const { return scale == Vec3{1.0, 1.0, 1.0}; }

  /// Throws InvalidShapeParameters on non-positive scale or non-finite fields.
  void validate() const;

  friend bool operator==(const Transform&, const Transform&) = default;
};

}  // namespace vf
