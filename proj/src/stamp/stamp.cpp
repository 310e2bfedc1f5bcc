#include "vf/stamp/stamp.hpp"

#include <algorithm>

namespace vf {

Stamp::Stamp(const GridSpec& spec, int layer, std::size_t voxel_budget) : spec_(spec), layer_(layer) {
  spec_.validate(voxel_budget);
  empty_distance_ = static_cast<float>(spec_.spacing * spec_.max_dim());
  distance_.assign(spec_.voxel_count(), empty_distance_);
  material_.assign(spec_.voxel_count(), kNoMaterial);
}

std::size_t Stamp::occupied_count() const {
  return static_cast<std::size_t>(std::count_if(distance_.begin(), distance_.end(), [](float d) { return d < 0.0f; }));
}

void Stamp::clear() {
  std::fill(distance_.begin(), distance_.end(), empty_distance_);
  std::fill(material_.begin(), material_.end(), kNoMaterial);
}

}  // namespace vf
