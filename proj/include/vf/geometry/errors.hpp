#pragma once

#include <stdexcept>
#include <string>

namespace vf {

/// A shape parameter broke its invariant. `field()` names the parameter.
class InvalidShapeParameters : public std::invalid_argument {
 public:
  InvalidShapeParameters(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Mesh input cannot produce a signed field (no triangles, non-finite
/// vertices, or open surface without the unsigned fallback).
class DegenerateMesh : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class UnknownMaterial : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vf
