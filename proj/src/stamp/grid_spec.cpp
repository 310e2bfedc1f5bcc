#include "vf/stamp/grid_spec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vf/geometry/errors.hpp"

namespace vf {

GridSpec GridSpec::centered(const Vec3& center, std::array<int, 3> dims, double spacing) {
  GridSpec spec;
  spec.dims = dims;
  spec.spacing = spacing;
  spec.origin = center - Vec3{dims[0] * spacing, dims[1] * spacing, dims[2] * spacing} * 0.5;
  return spec;
}

void GridSpec::validate(std::size_t budget) const {
  if (!is_finite(origin)) throw std::invalid_argument("grid origin must be finite");
  if (!std::isfinite(spacing) || spacing <= 0.0) throw std::invalid_argument("grid spacing must be > 0");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("grid dims must be >= 1");
  // Guard the product against overflow before comparing with the budget.
  const double approx = static_cast<double>(dims[0]) * dims[1] * dims[2];
  if (approx > static_cast<double>(budget) || voxel_count() > budget)
    throw GridBudgetExceeded("grid of " + std::to_string(dims[0]) + "x" + std::to_string(dims[1]) + "x" +
                             std::to_string(dims[2]) + " voxels exceeds budget of " + std::to_string(budget));
}

}  // namespace vf
