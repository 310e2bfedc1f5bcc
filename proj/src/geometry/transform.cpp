#include "vf/geometry/transform.hpp"

#include <numbers>

#include "vf/geometry/errors.hpp"

namespace vf {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace

Mat3 Transform::rotation_matrix() const {
  const double cr = std::cos(radians(rotation.x)), sr = std::sin(radians(rotation.x));
  const double cp = std::cos(radians(rotation.y)), sp = std::sin(radians(rotation.y));
  const double cy = std::cos(radians(rotation.z)), sy = std::sin(radians(rotation.z));
  Mat3 rx, ry, rz;
  rx.m = {1, 0, 0, 0, cr, -sr, 0, sr, cr};
  ry.m = {cp, 0, sp, 0, 1, 0, -sp, 0, cp};
  rz.m = {cy, -sy, 0, sy, cy, 0, 0, 0, 1};
  return rz * ry * rx;
}

Vec3 Transform::to_world(const Vec3& local) const {
  return rotation_matrix() * cwise_mul(scale, local) + location;
}

Vec3 Transform::to_local(const Vec3& world) const {
  return cwise_div(rotation_matrix().transposed() * (world - location), scale);
}

bool Transform::is_identity() const { return *this == Transform{}; }

void Transform::validate() const {
  if (!is_finite(location)) throw InvalidShapeParameters("Transform.Location", "must be finite");
  if (!is_finite(rotation)) throw InvalidShapeParameters("Transform.Rotation", "must be finite");
  if (!is_finite(scale) || min_component(scale) <= 0.0)
    throw InvalidShapeParameters("Transform.Scale", "components must be finite and > 0");
}

}  // namespace vf
