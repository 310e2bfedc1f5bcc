#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vf/kernels/field_fill.hpp"
#include "vf/stamp/material.hpp"
#include "vf/stamp/stamp.hpp"

namespace vf {

struct Camera {
  enum class Projection { Perspective, Orthographic };

  Vec3 position{0, -10, 0};
  Vec3 look_at{};
  Vec3 up{0, 0, 1};
  Projection projection = Projection::Perspective;
  double fov_deg = 50.0;       // vertical, perspective only
  double ortho_width = 10.0;   // world units across the image, orthographic only
  int width = 1920;
  int height = 1080;

  /// Throws std::invalid_argument when position == look_at, up is parallel to
  /// the view direction, fov is outside (10, 120), or dims < 1.
  void validate() const;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  std::array<std::uint8_t, 3> at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
  friend bool operator==(const Image&, const Image&) = default;
};

struct RenderResult {
  Image image;
  std::vector<float> depth;  // ray parameter of the hit; +inf on a miss
};

inline constexpr std::array<std::uint8_t, 3> kBackground = {30, 30, 40};

struct RenderOptions {
  kernels::Execution execution = kernels::Execution::Parallel;
  const Palette* palette = nullptr;  // standard palette when null
};

/// Sphere-traces the trilinearly interpolated distance grid.
RenderResult render(const Stamp& stamp, const Camera& camera, const RenderOptions& options = {});

/// Fraction of pixels that differ from the background.
double silhouette_fraction(const Image& image);

enum class View { Front, Side, Top, Perspective };
inline constexpr std::array<View, 4> kViews = {View::Front, View::Side, View::Top, View::Perspective};
std::string_view to_string(View view);

/// Camera for a canonical view, framing `bounds` with a 15% margin.
Camera canonical_camera(View view, const Aabb& bounds, int width = 1920, int height = 1080);

struct RenderSet {
  std::array<RenderResult, 4> views;  // indexed like kViews
};

/// Frames the occupied voxel cells (the whole grid when empty) from all four views.
RenderSet render_canonical(const Stamp& stamp, int width = 1920, int height = 1080,
                           const RenderOptions& options = {});

enum class ImageFormat { Png, Ppm };

void write_png(const Image& image, const std::filesystem::path& path);
void write_ppm(const Image& image, const std::filesystem::path& path);
Image read_png(const std::filesystem::path& path);

/// Writes `<task_id>__<model_id>__<view>.<ext>` into `dir`; returns the paths in kViews order.
std::array<std::filesystem::path, 4> write_render_set(const RenderSet& set, const std::filesystem::path& dir,
                                                      std::string_view task_id, std::string_view model_id,
                                                      ImageFormat format = ImageFormat::Png);

}  // namespace vf
