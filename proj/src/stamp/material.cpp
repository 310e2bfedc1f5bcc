#include "vf/stamp/material.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vf/geometry/errors.hpp"

namespace vf {

namespace {

Palette build_standard() {
  Palette p;
  const struct {
    const char* name;
    Rgb color;
  } entries[] = {
      {"Default", {0.80, 0.80, 0.80}}, {"Stone", {0.55, 0.55, 0.52}}, {"Wood", {0.55, 0.36, 0.20}},
      {"Foliage", {0.20, 0.55, 0.18}}, {"Metal", {0.70, 0.72, 0.75}}, {"Brick", {0.65, 0.25, 0.18}},
      {"Glass", {0.70, 0.85, 0.90}},   {"Sand", {0.86, 0.78, 0.55}},  {"Water", {0.20, 0.40, 0.80}},
      {"Grass", {0.35, 0.70, 0.25}},   {"Snow", {0.95, 0.95, 0.97}},  {"Gold", {0.90, 0.72, 0.20}},
      {"Red", {0.85, 0.12, 0.10}},     {"Green", {0.15, 0.70, 0.20}}, {"Blue", {0.12, 0.25, 0.85}},
      {"Yellow", {0.92, 0.85, 0.15}},  {"White", {0.97, 0.97, 0.97}}, {"Black", {0.08, 0.08, 0.08}},
  };
  MaterialId id = 1;
  for (const auto& e : entries) p.add({id++, e.color, e.name});
  return p;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

const Palette& Palette::standard() {
  static const Palette palette = build_standard();
  return palette;
}

void Palette::add(Material material) {
  if (material.id == kNoMaterial) throw std::invalid_argument("material id 0 is reserved for empty voxels");
  if (contains(material.id)) throw std::invalid_argument("duplicate material id " + std::to_string(material.id));
  const Rgb& c = material.base_color;
  if (!in_unit(c.r) || !in_unit(c.g) || !in_unit(c.b))
    throw std::invalid_argument("material color out of [0, 1]: " + material.name);
  materials_.push_back(std::move(material));
}

const Material* Palette::find(MaterialId id) const {
  const auto it = std::find_if(materials_.begin(), materials_.end(), [id](const Material& m) { return m.id == id; });
  return it == materials_.end() ? nullptr : &*it;
}

const Material& Palette::at(MaterialId id) const {
  if (const auto* m = find(id)) return *m;
  throw UnknownMaterial("unknown material id " + std::to_string(id));
}

std::optional<MaterialId> Palette::find_by_name(std::string_view name) const {
  for (const auto& m : materials_)
    if (m.name == name) return m.id;
  return std::nullopt;
}

}  // namespace vf
