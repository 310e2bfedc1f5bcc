#include "vf/stamp/stamp_ops.hpp"

#include <algorithm>
#include <vector>

#include "vf/geometry/sdf.hpp"

namespace vf {

namespace {

// Combines the node's field into the stamp voxel by voxel. Materials follow
// first-writer-wins: a voxel that was already occupied keeps its material, a
// newly occupied voxel takes `surface` or, if that is kNoMaterial, the
// nearest contributing leaf's surface.
template <class Combine>
void apply_field(Stamp& stamp, const ShapeNode& node, MaterialId surface, Combine combine, const StampOptions& opt) {
  const auto dist = stamp.distance();
  const auto mat = stamp.material();
  auto body = [&](std::size_t idx, const Vec3& center) {
    const DistanceSample s = eval_sdf(node, center);
    const float old = dist[idx];
    const float next = static_cast<float>(combine(static_cast<double>(old), s.distance));
    if (next < 0.0f) {
      if (!(old < 0.0f)) {
        const MaterialId m = surface != kNoMaterial ? surface : s.material();
        mat[idx] = m != kNoMaterial ? m : kDefaultMaterial;
      }
    } else {
      mat[idx] = kNoMaterial;
    }
    dist[idx] = next;
  };
  if (!kernels::fill(opt.execution, stamp.spec(), body, opt.should_stop)) throw OperationInterrupted();
}

double hard_min(double a, double b) { return std::min(a, b); }

}  // namespace

Stamp make_stamp_from_node(const ShapePtr& node, MaterialId surface, int layer, const Transform& t,
                           const GridSpec& spec, const Palette& palette, StampOptions options) {
  palette.at(surface);
  Stamp stamp(spec, layer);
  stamp_node(stamp, node, surface, t, BlendMode::Union, options);
  return stamp;
}

void stamp_node(Stamp& stamp, const ShapePtr& node, MaterialId surface, const Transform& t, BlendMode mode,
                StampOptions options) {
  const ShapePtr placed = make_transformed(t, node);
  switch (mode) {
    case BlendMode::Union: apply_field(stamp, *placed, surface, hard_min, options); break;
    case BlendMode::Subtract:
      apply_field(stamp, *placed, surface, [](double old, double d) { return std::max(old, -d); }, options);
      break;
    case BlendMode::Intersect:
      apply_field(stamp, *placed, surface, [](double old, double d) { return std::max(old, d); }, options);
      break;
  }
}

void union_shapes(Stamp& stamp, std::span<const ShapePtr> shapes, double smoothness, StampOptions options) {
  const ShapePtr node = make_union({shapes.begin(), shapes.end()}, smoothness);
  apply_field(
      stamp, *node, kNoMaterial, [smoothness](double old, double d) { return smooth_min(old, d, smoothness); },
      options);
}

void subtract_shapes(Stamp& stamp, const ShapePtr& base, std::span<const ShapePtr> subtrahends, double smoothness,
                     const Transform& t, StampOptions options) {
  const ShapePtr node = make_transformed(t, make_subtract(base, {subtrahends.begin(), subtrahends.end()}, smoothness));
  apply_field(stamp, *node, kNoMaterial, hard_min, options);
}

void intersect_shapes(Stamp& stamp, std::span<const ShapePtr> shapes, double smoothness, StampOptions options) {
  const ShapePtr node = make_intersect({shapes.begin(), shapes.end()}, smoothness);
  apply_field(stamp, *node, kNoMaterial, hard_min, options);
}

GeometrySummary export_geometry(const Stamp& stamp) {
  GeometrySummary summary;
  summary.layer = stamp.layer();
  summary.grid = stamp.spec();
  const GridSpec& spec = stamp.spec();
  const auto dist = stamp.distance();
  const auto mat = stamp.material();
  const double half = spec.spacing * 0.5;
  Vec3 sum;
  for (int k = 0; k < spec.dims[2]; ++k)
    for (int j = 0; j < spec.dims[1]; ++j)
      for (int i = 0; i < spec.dims[0]; ++i) {
        const std::size_t idx = spec.index(i, j, k);
        if (!(dist[idx] < 0.0f)) continue;
        const Vec3 c = spec.center(i, j, k);
        ++summary.occupied;
        sum += c;
        summary.bounds.expand(c - Vec3{half, half, half});
        summary.bounds.expand(c + Vec3{half, half, half});
        ++summary.per_material[mat[idx]];
      }
  if (summary.occupied > 0) summary.centroid = sum / static_cast<double>(summary.occupied);
  return summary;
}

}  // namespace vf
