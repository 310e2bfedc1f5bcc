#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vf/mesher/mesh.hpp"

namespace vf {

namespace {

// Cube corner c sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
struct Edge {
  int from;  // corner with the axis bit clear
  int axis;
};

constexpr std::array<Edge, 12> kEdges = {{{0, 0}, {2, 0}, {4, 0}, {6, 0},
                                          {0, 1}, {1, 1}, {4, 1}, {5, 1},
                                          {0, 2}, {1, 2}, {2, 2}, {3, 2}}};

int edge_between(int a, int b) {
  const int lo = std::min(a, b);
  const int axis = std::countr_zero(static_cast<unsigned>(a ^ b));
  for (int e = 0; e < 12; ++e)
    if (kEdges[e].from == lo && kEdges[e].axis == axis) return e;
  return -1;
}

Vec3 corner_position(int c) { return {double(c & 1), double((c >> 1) & 1), double((c >> 2) & 1)}; }

Vec3 edge_midpoint(int e) {
  Vec3 p = corner_position(kEdges[e].from);
  p[kEdges[e].axis] += 0.5;
  return p;
}

bool share_face(int a, int b) {
  for (int axis = 0; axis < 3; ++axis)
    if (axis != kEdges[a].axis && axis != kEdges[b].axis &&
        ((kEdges[a].from >> axis) & 1) == ((kEdges[b].from >> axis) & 1))
      return true;
  return false;
}

// A contour loop of local edge ids, rotated so a fan from edges[0] only adds
// diagonals through the cube interior. When no such start exists the loop is
// fanned around an extra centroid vertex instead.
struct Loop {
  std::vector<int> edges;
  bool centroid = false;
};

struct CaseTable {
  std::array<std::vector<Loop>, 256> loops;
};

Loop make_loop(std::vector<int> edges) {
  const std::size_t n = edges.size();
  for (std::size_t start = 0; start < n; ++start) {
    bool safe = true;
    for (std::size_t i = 2; i + 1 < n && safe; ++i) safe = !share_face(edges[start], edges[(start + i) % n]);
    if (safe) {
      std::rotate(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(start), edges.end());
      return {std::move(edges), false};
    }
  }
  return {std::move(edges), true};
}

// Builds each case from per-face contour segments. A face with four crossings
// cuts off its two inside corners separately; the rule depends only on the
// face's own corners, so neighboring cubes agree and the surface is closed.
// Segments are directed with the inside corner on their right as seen from
// outside the cube, which chains them into outward-wound loops.
CaseTable build_case_table() {
  CaseTable table;
  for (int mask = 1; mask < 255; ++mask) {
    auto inside = [&](int c) { return (mask >> c) & 1; };
    std::array<int, 12> next;
    next.fill(-1);
    for (int axis = 0; axis < 3; ++axis) {
      const int u = 1 << ((axis + 1) % 3), v = 1 << ((axis + 2) % 3);
      for (int side = 0; side < 2; ++side) {
        const int base = side ? (1 << axis) : 0;
        const std::array<int, 4> q = {base, base | u, base | u | v, base | v};
        Vec3 normal;
        normal[axis] = side ? 1.0 : -1.0;
        std::array<int, 4> e;
        for (int i = 0; i < 4; ++i) e[i] = edge_between(q[i], q[(i + 1) % 4]);
        auto add = [&](int ea, int eb, int corner) {
          const Vec3 a = edge_midpoint(ea), b = edge_midpoint(eb);
          if (dot(cross(b - a, corner_position(corner) - a), normal) > 0) std::swap(ea, eb);
          next[ea] = eb;
        };
        std::array<int, 4> crossing{};
        int n = 0;
        for (int i = 0; i < 4; ++i)
          if (inside(q[i]) != inside(q[(i + 1) % 4])) crossing[n++] = i;
        if (n == 2) {
          int corner = 0;
          for (int i = 0; i < 4; ++i)
            if (inside(q[i])) corner = q[i];
          add(e[crossing[0]], e[crossing[1]], corner);
        } else if (n == 4) {
          for (int i = 0; i < 4; ++i)
            if (inside(q[i])) add(e[(i + 3) % 4], e[i], q[i]);
        }
      }
    }
    std::array<bool, 12> used{};
    for (int start = 0; start < 12; ++start) {
      if (next[start] < 0 || used[start]) continue;
      std::vector<int> loop;
      for (int e = start; !used[e]; e = next[e]) {
        used[e] = true;
        loop.push_back(e);
      }
      table.loops[mask].push_back(make_loop(std::move(loop)));
    }
  }
  return table;
}

const CaseTable& case_table() {
  static const CaseTable table = build_case_table();
  return table;
}

}  // namespace

TriangleMesh marching_cubes(const Stamp& stamp, double iso) {
  const GridSpec& spec = stamp.spec();
  const auto dist = stamp.distance();
  const auto mat = stamp.material();
  const auto& table = case_table();
  const int nx = spec.dims[0], ny = spec.dims[1], nz = spec.dims[2];

  TriangleMesh mesh;
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_of_edge;
  const std::array<std::size_t, 3> stride = {1, static_cast<std::size_t>(nx),
                                             static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)};

  std::array<std::size_t, 8> corner_index;
  std::array<double, 8> value;
  for (int k = 0; k + 1 < nz; ++k)
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const std::size_t origin = spec.index(i, j, k);
        int mask = 0;
        for (int c = 0; c < 8; ++c) {
          corner_index[c] = origin + (c & 1) * stride[0] + ((c >> 1) & 1) * stride[1] + ((c >> 2) & 1) * stride[2];
          value[c] = static_cast<double>(dist[corner_index[c]]) - iso;
          if (value[c] < 0) mask |= 1 << c;
        }
        const auto& loops = table.loops[mask];
        if (loops.empty()) continue;

        auto vertex = [&](int e) {
          const Edge& edge = kEdges[e];
          const std::size_t from = corner_index[edge.from];
          const std::uint64_t key = static_cast<std::uint64_t>(from) * 3 + static_cast<std::uint64_t>(edge.axis);
          const auto [it, fresh] = vertex_of_edge.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
          if (fresh) {
            const double a = value[edge.from], b = value[edge.from | (1 << edge.axis)];
            const double t = std::clamp(a / (a - b), 1e-3, 1.0 - 1e-3);
            const int ci = (edge.from & 1), cj = (edge.from >> 1) & 1, ck = (edge.from >> 2) & 1;
            Vec3 p = spec.center(i + ci, j + cj, k + ck);
            p[edge.axis] += t * spec.spacing;
            mesh.vertices.push_back(p);
          }
          return it->second;
        };
        auto material = [&](int e) {
          const Edge& edge = kEdges[e];
          const int in = value[edge.from] < 0 ? edge.from : edge.from | (1 << edge.axis);
          if (const MaterialId m = mat[corner_index[in]]; m != kNoMaterial) return m;
          for (int c = 0; c < 8; ++c)
            if (mat[corner_index[c]] != kNoMaterial) return mat[corner_index[c]];
          return kNoMaterial;
        };
        for (const Loop& loop : loops) {
          const MaterialId m = material(loop.edges[0]);
          std::vector<std::uint32_t> ring;
          for (int e : loop.edges) ring.push_back(vertex(e));
          if (loop.centroid) {
            Vec3 sum;
            for (std::uint32_t v : ring) sum += mesh.vertices[v];
            const auto center = static_cast<std::uint32_t>(mesh.vertices.size());
            mesh.vertices.push_back(sum / static_cast<double>(ring.size()));
            for (std::size_t r = 0; r < ring.size(); ++r) {
              mesh.triangles.push_back({center, ring[r], ring[(r + 1) % ring.size()]});
              mesh.materials.push_back(m);
            }
          } else {
            for (std::size_t r = 1; r + 1 < ring.size(); ++r) {
              mesh.triangles.push_back({ring[0], ring[r], ring[r + 1]});
              mesh.materials.push_back(m);
            }
          }
        }
      }
  if (mesh.triangles.empty()) throw EmptySurface();
  return mesh;
}

}  // namespace vf
