#include "vf/render/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vf/stamp/stamp_ops.hpp"

namespace vf {

namespace {

constexpr int kMaxSteps = 256;
constexpr int kBisections = 20;
const Vec3 kLightDirection = normalize(Vec3{-1, -1, -2});

struct Ray {
  Vec3 origin;
  Vec3 direction;
};

// Trilinear view of the distance grid restricted to the box of voxel centers.
class Field {
 public:
  explicit Field(const Stamp& stamp) : stamp_(stamp), spec_(stamp.spec()), dist_(stamp.distance()) {
    const double h = 0.5 * spec_.spacing;
    box_ = {spec_.origin + Vec3{h, h, h},
            spec_.origin + Vec3{(spec_.dims[0] - 0.5) * spec_.spacing, (spec_.dims[1] - 0.5) * spec_.spacing,
                                (spec_.dims[2] - 0.5) * spec_.spacing}};
  }

  const Aabb& box() const { return box_; }

  double sample(const Vec3& p) const {
    int i0[3];
    double f[3];
    cell(p, i0, f);
    auto at = [&](int dx, int dy, int dz) {
      return static_cast<double>(dist_[spec_.index(i0[0] + dx, i0[1] + dy, i0[2] + dz)]);
    };
    const double c00 = at(0, 0, 0) + (at(1, 0, 0) - at(0, 0, 0)) * f[0];
    const double c10 = at(0, 1, 0) + (at(1, 1, 0) - at(0, 1, 0)) * f[0];
    const double c01 = at(0, 0, 1) + (at(1, 0, 1) - at(0, 0, 1)) * f[0];
    const double c11 = at(0, 1, 1) + (at(1, 1, 1) - at(0, 1, 1)) * f[0];
    const double c0 = c00 + (c10 - c00) * f[1];
    const double c1 = c01 + (c11 - c01) * f[1];
    return c0 + (c1 - c0) * f[2];
  }

  Vec3 normal(const Vec3& p) const {
    const double h = 0.5 * spec_.spacing;
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
      Vec3 lo = p, hi = p;
      lo[a] = std::max(p[a] - h, box_.min[a]);
      hi[a] = std::min(p[a] + h, box_.max[a]);
      const double span = hi[a] - lo[a];
      g[a] = span > 0 ? (sample(hi) - sample(lo)) / span : 0.0;
    }
    const double len = length(g);
    return len > 0 ? g / len : Vec3{0, 0, 1};
  }

  /// Material of the most-inside corner of the cell containing p.
  MaterialId material(const Vec3& p) const {
    int i0[3];
    double f[3];
    cell(p, i0, f);
    MaterialId best = kNoMaterial;
    float best_d = std::numeric_limits<float>::infinity();
    for (int c = 0; c < 8; ++c) {
      const std::size_t idx = spec_.index(i0[0] + (c & 1), i0[1] + ((c >> 1) & 1), i0[2] + ((c >> 2) & 1));
      const MaterialId m = stamp_.material()[idx];
      if (m != kNoMaterial && dist_[idx] < best_d) {
        best_d = dist_[idx];
        best = m;
      }
    }
    return best;
  }

 private:
  void cell(const Vec3& p, int i0[3], double f[3]) const {
    for (int a = 0; a < 3; ++a) {
      const double u = (p[a] - spec_.origin[a]) / spec_.spacing - 0.5;
      const int n = spec_.dims[a];
      if (n == 1) {
        i0[a] = 0;
        f[a] = 0.0;
        continue;
      }
      int i = static_cast<int>(std::floor(u));
      i = std::clamp(i, 0, n - 2);
      i0[a] = i;
      f[a] = std::clamp(u - i, 0.0, 1.0);
    }
  }

  const Stamp& stamp_;
  const GridSpec& spec_;
  std::span<const float> dist_;
  Aabb box_;
};

// Slab test; returns false when the ray misses `box` or it lies behind.
bool clip(const Ray& ray, const Aabb& box, double& t0, double& t1) {
  t0 = 0.0;
  t1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double o = ray.origin[a], d = ray.direction[a];
    if (std::abs(d) < 1e-15) {
      if (o < box.min[a] || o > box.max[a]) return false;
      continue;
    }
    double ta = (box.min[a] - o) / d, tb = (box.max[a] - o) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  return t0 <= t1;
}

Aabb intersect(const Aabb& a, const Aabb& b) {
  return {{std::max(a.min.x, b.min.x), std::max(a.min.y, b.min.y), std::max(a.min.z, b.min.z)},
          {std::min(a.max.x, b.max.x), std::min(a.max.y, b.max.y), std::min(a.max.z, b.max.z)}};
}

// Sphere tracing with zero-crossing refinement: near the surface the march
// switches to short steps until the field changes sign, then bisects, so the
// hit lies on the interpolated iso-surface rather than an epsilon shell.
double trace(const Field& field, const Ray& ray, double t0, double t1, double spacing) {
  const double near_band = 0.5 * spacing, min_step = 0.1 * spacing;
  double t = t0;
  double prev_t = t0;
  double d = field.sample(ray.origin + ray.direction * t);
  if (d <= 0) return t;
  for (int step = 0; step < kMaxSteps && t <= t1; ++step) {
    prev_t = t;
    t = std::min(t + (d < near_band ? std::max(d, min_step) : d), t1);
    d = field.sample(ray.origin + ray.direction * t);
    if (d <= 0) {
      double lo = prev_t, hi = t;
      for (int b = 0; b < kBisections; ++b) {
        const double mid = 0.5 * (lo + hi);
        (field.sample(ray.origin + ray.direction * mid) > 0 ? lo : hi) = mid;
      }
      return hi;
    }
    if (t >= t1) break;
  }
  return std::numeric_limits<double>::infinity();
}

std::uint8_t to_byte(double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); }

Vec3 basis_right(const Camera& cam, const Vec3& forward) { return normalize(cross(forward, cam.up)); }

}  // namespace

void Camera::validate() const {
  const Vec3 f = look_at - position;
  if (length(f) <= 0) throw std::invalid_argument("camera position equals look_at");
  if (length(cross(normalize(f), up)) < 1e-9) throw std::invalid_argument("camera up is parallel to view direction");
  if (projection == Projection::Perspective && !(fov_deg > 10.0 && fov_deg < 120.0))
    throw std::invalid_argument("camera fov must be in (10, 120) degrees");
  if (projection == Projection::Orthographic && !(ortho_width > 0)) throw std::invalid_argument("ortho width must be > 0");
  if (width < 1 || height < 1) throw std::invalid_argument("image dims must be >= 1");
}

RenderResult render(const Stamp& stamp, const Camera& camera, const RenderOptions& options) {
  camera.validate();
  const Palette& palette = options.palette ? *options.palette : Palette::standard();
  const int w = camera.width, h = camera.height;
  RenderResult out;
  out.image.width = w;
  out.image.height = h;
  out.image.rgb.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  out.depth.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), std::numeric_limits<float>::infinity());
  for (std::size_t p = 0; p < out.depth.size(); ++p)
    for (int c = 0; c < 3; ++c) out.image.rgb[p * 3 + c] = kBackground[c];

  const GeometrySummary summary = export_geometry(stamp);
  if (summary.occupied == 0) return out;

  const Field field(stamp);
  const double spacing = stamp.spec().spacing;
  Aabb occupied = summary.bounds;
  occupied.min = occupied.min - Vec3{spacing, spacing, spacing};
  occupied.max = occupied.max + Vec3{spacing, spacing, spacing};
  const Aabb march_box = intersect(field.box(), occupied);
  const double max_ray = 4.0 * length(stamp.spec().bounds().extent());

  const Vec3 forward = normalize(camera.look_at - camera.position);
  const Vec3 right = basis_right(camera, forward);
  const Vec3 up = cross(right, forward);
  const double aspect = static_cast<double>(w) / h;
  const double tan_half = std::tan(camera.fov_deg * std::numbers::pi / 360.0);
  const bool ortho = camera.projection == Camera::Projection::Orthographic;
  const double ortho_h = camera.ortho_width / aspect;

  auto shade_row = [&](int y) {
    const double sy = 1.0 - 2.0 * (y + 0.5) / h;
    for (int x = 0; x < w; ++x) {
      const double sx = 2.0 * (x + 0.5) / w - 1.0;
      Ray ray;
      if (ortho) {
        ray.origin = camera.position + right * (0.5 * sx * camera.ortho_width) + up * (0.5 * sy * ortho_h);
        ray.direction = forward;
      } else {
        ray.origin = camera.position;
        ray.direction = normalize(forward + right * (sx * tan_half * aspect) + up * (sy * tan_half));
      }
      double t0, t1;
      if (!clip(ray, march_box, t0, t1)) continue;
      t1 = std::min(t1, max_ray);
      if (t0 > t1) continue;
      const double t = trace(field, ray, t0, t1, spacing);
      if (!std::isfinite(t)) continue;
      const Vec3 p = ray.origin + ray.direction * t;
      const Vec3 n = field.normal(p);
      const double light = std::min(1.0, 0.25 + std::max(0.0, dot(n, kLightDirection * -1.0)));
      const MaterialId m = field.material(p);
      const Material* material = palette.find(m == kNoMaterial ? kDefaultMaterial : m);
      const Rgb albedo = material ? material->base_color : palette.at(kDefaultMaterial).base_color;
      const std::size_t pixel = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
      out.image.rgb[pixel * 3 + 0] = to_byte(albedo.r * light);
      out.image.rgb[pixel * 3 + 1] = to_byte(albedo.g * light);
      out.image.rgb[pixel * 3 + 2] = to_byte(albedo.b * light);
      out.depth[pixel] = static_cast<float>(t);
    }
  };

  if (options.execution == kernels::Execution::Serial) {
    for (int y = 0; y < h; ++y) shade_row(y);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (int y = 0; y < h; ++y) shade_row(y);
  }
  return out;
}

double silhouette_fraction(const Image& image) {
  std::size_t hits = 0;
  const std::size_t n = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  for (std::size_t p = 0; p < n; ++p)
    if (image.rgb[p * 3] != kBackground[0] || image.rgb[p * 3 + 1] != kBackground[1] ||
        image.rgb[p * 3 + 2] != kBackground[2])
      ++hits;
  return n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
}

std::string_view to_string(View view) {
  switch (view) {
    case View::Front: return "front";
    case View::Side: return "side";
    case View::Top: return "top";
    case View::Perspective: return "perspective";
  }
  return "?";
}

Camera canonical_camera(View view, const Aabb& bounds, int width, int height) {
  constexpr double kMargin = 1.15;
  const Vec3 center = bounds.center();
  Vec3 size = bounds.extent();
  for (int a = 0; a < 3; ++a) size[a] = std::max(size[a], 1e-3);
  const double aspect = static_cast<double>(width) / height;
  const double standoff = 2.0 * length(size) + 1.0;

  Camera cam;
  cam.width = width;
  cam.height = height;
  cam.look_at = center;
  auto ortho = [&](const Vec3& direction, const Vec3& up, double horizontal, double vertical) {
    cam.projection = Camera::Projection::Orthographic;
    cam.position = center - direction * standoff;
    cam.up = up;
    cam.ortho_width = kMargin * std::max(horizontal, vertical * aspect);
  };
  switch (view) {
    case View::Front: ortho({0, -1, 0}, {0, 0, 1}, size.x, size.z); break;
    case View::Side: ortho({1, 0, 0}, {0, 0, 1}, size.y, size.z); break;
    case View::Top: ortho({0, 0, -1}, {0, 1, 0}, size.x, size.y); break;
    case View::Perspective: {
      const double az = 45.0 * std::numbers::pi / 180.0, el = 35.0 * std::numbers::pi / 180.0;
      const Vec3 offset{std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
      cam.projection = Camera::Projection::Perspective;
      cam.fov_deg = 50.0;
      const double radius = 0.5 * kMargin * length(size);
      const double half_fov = std::min(25.0, std::atan(std::tan(25.0 * std::numbers::pi / 180.0) * aspect) * 180.0 /
                                                 std::numbers::pi);
      cam.position = center + offset * (radius / std::sin(half_fov * std::numbers::pi / 180.0));
      cam.up = {0, 0, 1};
      break;
    }
  }
  return cam;
}

RenderSet render_canonical(const Stamp& stamp, int width, int height, const RenderOptions& options) {
  const GeometrySummary summary = export_geometry(stamp);
  const Aabb frame = summary.occupied ? summary.bounds : stamp.spec().bounds();
  RenderSet set;
  for (std::size_t v = 0; v < kViews.size(); ++v)
    set.views[v] = render(stamp, canonical_camera(kViews[v], frame, width, height), options);
  return set;
}

}  // namespace vf
