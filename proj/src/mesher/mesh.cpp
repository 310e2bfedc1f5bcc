#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "vf/geometry/errors.hpp"
#include "vf/mesher/mesh.hpp"

namespace vf {

namespace {

using EdgeKey = std::pair<std::uint32_t, std::uint32_t>;

std::map<EdgeKey, int> edge_use(const TriangleMesh& mesh) {
  std::map<EdgeKey, int> use;
  for (const auto& t : mesh.triangles)
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = t[i], b = t[(i + 1) % 3];
      ++use[{std::min(a, b), std::max(a, b)}];
    }
  return use;
}

template <class T>
void put(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>;
  const U bits = std::bit_cast<U>(value);
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, sizeof(U));
}

template <class T>
T get(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>;
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw IoFailure("VXM1: truncated stream");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits = static_cast<U>(bits | (static_cast<U>(bytes[i]) << (8 * i)));
  return std::bit_cast<T>(bits);
}

}  // namespace

double TriangleMesh::surface_area() const {
  double area = 0.0;
  for (const auto& t : triangles)
    area += 0.5 * length(cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]));
  return area;
}

double TriangleMesh::signed_volume() const {
  double volume = 0.0;
  for (const auto& t : triangles) volume += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]])) / 6.0;
  return volume;
}

TriangleMesh laplacian_smooth(const TriangleMesh& mesh, int iterations, double lambda) {
  if (iterations < 0) throw std::invalid_argument("Iterations must be >= 0");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("Lambda must be in (0, 1]");
  TriangleMesh out = mesh;
  if (iterations == 0) return out;

  std::vector<std::vector<std::uint32_t>> neighbors(mesh.vertices.size());
  for (const auto& t : mesh.triangles)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) neighbors[t[i]].push_back(t[j]);
  for (auto& n : neighbors) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }

  std::vector<Vec3> next(out.vertices.size());
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      const Vec3& p = out.vertices[v];
      if (neighbors[v].empty()) {
        next[v] = p;
        continue;
      }
      Vec3 sum;
      for (std::uint32_t n : neighbors[v]) sum += out.vertices[n];
      const Vec3 centroid = sum / static_cast<double>(neighbors[v].size());
      next[v] = p + (centroid - p) * lambda;
    }
    std::swap(out.vertices, next);
  }
  return out;
}

bool is_watertight(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) return false;
  const auto use = edge_use(mesh);
  return std::all_of(use.begin(), use.end(), [](const auto& e) { return e.second == 2; });
}

long euler_characteristic(const TriangleMesh& mesh) {
  return static_cast<long>(mesh.vertices.size()) - static_cast<long>(edge_use(mesh).size()) +
         static_cast<long>(mesh.triangles.size());
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
  out << fmt::format("# voxelforge mesh: {} vertices, {} triangles\n", mesh.vertices.size(), mesh.triangles.size());
  for (const Vec3& v : mesh.vertices) out << fmt::format("v {:.9g} {:.9g} {:.9g}\n", v.x, v.y, v.z);
  std::map<MaterialId, std::vector<std::size_t>> groups;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) groups[mesh.materials.at(t)].push_back(t);
  for (const auto& [material, tris] : groups) {
    out << fmt::format("g material_{}\n", material);
    for (std::size_t t : tris) {
      const auto& tri = mesh.triangles[t];
      out << fmt::format("f {} {} {}\n", tri[0] + 1, tri[1] + 1, tri[2] + 1);
    }
  }
  if (!out) throw IoFailure("OBJ: write failed");
}

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path.string());
  write_obj(mesh, out);
}

void write_vxm(const TriangleMesh& mesh, std::ostream& out) {
  out.write("VXM1", 4);
  put(out, static_cast<std::uint32_t>(mesh.vertices.size()));
  put(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const Vec3& v : mesh.vertices)
    for (int a = 0; a < 3; ++a) put(out, static_cast<float>(v[a]));
  for (const auto& t : mesh.triangles)
    for (std::uint32_t i : t) put(out, i);
  for (MaterialId m : mesh.materials) put(out, m);
  if (!out) throw IoFailure("VXM1: write failed");
}

TriangleMesh read_vxm(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string_view(magic, 4) != "VXM1") throw IoFailure("VXM1: bad magic");
  const auto nv = get<std::uint32_t>(in);
  const auto nt = get<std::uint32_t>(in);
  TriangleMesh mesh;
  mesh.vertices.resize(nv);
  for (auto& v : mesh.vertices)
    for (int a = 0; a < 3; ++a) v[a] = get<float>(in);
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles)
    for (auto& i : t) {
      i = get<std::uint32_t>(in);
      if (i >= nv) throw IoFailure("VXM1: index out of range");
    }
  mesh.materials.resize(nt);
  for (auto& m : mesh.materials) m = get<MaterialId>(in);
  return mesh;
}

}  // namespace vf
