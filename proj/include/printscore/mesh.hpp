// Copyright 2026 The Printscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "printscore/vec.hpp"

namespace printscore {

/** Triangle as three indices into a vertex array, wound counter-clockwise
 *  when viewed from outside the solid. */
struct Triangle {
  int v[3] = {0, 0, 0};

  int operator[](int i) const { return v[i]; }
  int& operator[](int i) { return v[i]; }
};

/** Indexed triangle mesh. Coordinates are millimeters. */
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::string name;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Throws MeshError if any triangle index is out of range or any vertex
 *  coordinate is non-finite. */
inline void validate_mesh(const TriangleMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices) {
    if (!is_finite(v)) throw MeshError("mesh has non-finite vertex");
  }
  for (const Triangle& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      if (t[i] < 0 || t[i] >= nv) {
        throw MeshError("triangle index out of range");
      }
    }
  }
}

inline Vec3 triangle_cross(const TriangleMesh& m, const Triangle& t) {
  const Vec3& a = m.vertices[t[0]];
  const Vec3& b = m.vertices[t[1]];
  const Vec3& c = m.vertices[t[2]];
  return cross(b - a, c - a);
}

inline double triangle_area(const TriangleMesh& m, const Triangle& t) {
  return 0.5 * norm(triangle_cross(m, t));
}

/** Unit outward normal; zero for degenerate triangles. */
inline Vec3 triangle_normal(const TriangleMesh& m, const Triangle& t) {
  return normalized(triangle_cross(m, t));
}

/** Total surface area in mm^2. Degenerate triangles contribute zero. */
inline double surface_area(const TriangleMesh& mesh) {
  double a = 0.0;
  for (const Triangle& t : mesh.triangles) a += triangle_area(mesh, t);
  return a;
}

/** Sum of signed tetrahedron volumes det(v0,v1,v2)/6 in mm^3. Positive for
 *  consistently outward-wound closed surfaces; meaningless for open ones,
 *  which is why callers should prefer signed_volume(). */
inline double signed_volume_unchecked(const TriangleMesh& mesh) {
  double v6 = 0.0;
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    v6 += dot(a, cross(b, c));
  }
  return v6 / 6.0;
}

inline BoundingBox bounding_box(const TriangleMesh& mesh) {
  BoundingBox box;
  for (const Vec3& v : mesh.vertices) box.expand(v);
  return box;
}

/** Edge incidence and degeneracy summary. Computed on the mesh as given;
 *  weld first if the mesh still has duplicated vertices. */
struct MeshDiagnostics {
  std::int64_t boundary_edge_count = 0;      // edges used by exactly one face
  std::int64_t non_manifold_edge_count = 0;  // edges used by three or more
  std::int64_t degenerate_triangle_count = 0;
  std::int64_t duplicate_vertex_count = 0;  // vertices a default weld removes
  bool watertight = false;  // no boundary and no non-manifold edges
};

namespace detail {

/** Map from undirected edge to the number of incident triangles. */
inline std::map<std::pair<int, int>, int> edge_use_counts(
    const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> uses;
  for (const Triangle& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i];
      int b = t[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      ++uses[{a, b}];
    }
  }
  return uses;
}

struct GridKey {
  std::int64_t x, y, z;
  bool operator==(const GridKey&) const = default;
};

struct GridKeyHash {
  std::size_t operator()(const GridKey& k) const {
    std::size_t h = std::hash<std::int64_t>()(k.x);
    h = h * 1000003u ^ std::hash<std::int64_t>()(k.y);
    h = h * 1000003u ^ std::hash<std::int64_t>()(k.z);
    return h;
  }
};

/** Assigns each vertex to a representative so that every vertex lies within
 *  `tolerance` of its representative and representatives are pairwise farther
 *  apart than `tolerance`. Tolerance zero merges exactly equal coordinates.
 *  Returns representative index (into the original vertex array) per vertex,
 *  always the lowest-index member of its cluster encountered first. */
inline std::vector<int> weld_representatives(const std::vector<Vec3>& vertices,
                                             double tolerance) {
  std::vector<int> rep(vertices.size());
  std::unordered_map<GridKey, std::vector<int>, GridKeyHash> grid;
  const double cell = tolerance > 0.0 ? tolerance : 1.0;
  const double tol2 = tolerance * tolerance;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    const Vec3& p = vertices[i];
    GridKey base{static_cast<std::int64_t>(std::floor(p.x / cell)),
                 static_cast<std::int64_t>(std::floor(p.y / cell)),
                 static_cast<std::int64_t>(std::floor(p.z / cell))};
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    const int reach = tolerance > 0.0 ? 1 : 0;
    for (std::int64_t dx = -reach; dx <= reach; ++dx) {
      for (std::int64_t dy = -reach; dy <= reach; ++dy) {
        for (std::int64_t dz = -reach; dz <= reach; ++dz) {
          auto it = grid.find(GridKey{base.x + dx, base.y + dy, base.z + dz});
          if (it == grid.end()) continue;
          for (int j : it->second) {
            double d2 = norm2(p - vertices[j]);
            // Lowest distance wins; ties resolve to the earliest vertex.
            if (d2 <= tol2 && (d2 < best_d2 || (d2 == best_d2 && j < best))) {
              best = j;
              best_d2 = d2;
            }
          }
        }
      }
    }
    if (best < 0) {
      rep[i] = i;
      grid[base].push_back(i);
    } else {
      rep[i] = best;
    }
  }
  return rep;
}

}  // namespace detail

constexpr double kDefaultWeldTolerance = 1e-6;  // mm

/** Merges vertices closer than `tolerance`, re-indexes triangles, and drops
 *  triangles left without three distinct vertices. Vertex order of the
 *  surviving representatives is preserved, so welding an already-welded mesh
 *  returns it unchanged. */
inline TriangleMesh weld_vertices(const TriangleMesh& mesh,
                                  double tolerance = kDefaultWeldTolerance) {
  if (tolerance < 0.0) throw std::invalid_argument("weld tolerance < 0");
  validate_mesh(mesh);
  std::vector<int> rep = detail::weld_representatives(mesh.vertices, tolerance);

  std::vector<int> remap(mesh.vertices.size(), -1);
  TriangleMesh out;
  out.name = mesh.name;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (rep[i] == static_cast<int>(i)) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(mesh.vertices[i]);
    }
  }
  for (const Triangle& t : mesh.triangles) {
    Triangle n;
    for (int i = 0; i < 3; ++i) n[i] = remap[rep[t[i]]];
    if (n[0] == n[1] || n[1] == n[2] || n[2] == n[0]) continue;
    out.triangles.push_back(n);
  }
  return out;
}

constexpr double kDegenerateAreaEps = 1e-12;  // mm^2

/** Edge/degeneracy survey. `weld_tolerance` only affects the duplicate
 *  vertex count; edge incidence uses the indices as given. */
inline MeshDiagnostics diagnostics(
    const TriangleMesh& mesh, double weld_tolerance = kDefaultWeldTolerance) {
  validate_mesh(mesh);
  MeshDiagnostics d;
  for (auto& [edge, uses] : detail::edge_use_counts(mesh)) {
    if (uses == 1) ++d.boundary_edge_count;
    if (uses >= 3) ++d.non_manifold_edge_count;
  }
  for (const Triangle& t : mesh.triangles) {
    if (triangle_area(mesh, t) <= kDegenerateAreaEps) {
      ++d.degenerate_triangle_count;
    }
  }
  std::vector<int> rep =
      detail::weld_representatives(mesh.vertices, weld_tolerance);
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (rep[i] != static_cast<int>(i)) ++d.duplicate_vertex_count;
  }
  d.watertight =
      d.boundary_edge_count == 0 && d.non_manifold_edge_count == 0 &&
      !mesh.triangles.empty();
  return d;
}

/** True when every interior edge is traversed once in each direction, i.e.
 *  neighbouring triangles agree on winding. */
inline bool is_consistently_oriented(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> dir;
  for (const Triangle& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i];
      int b = t[(i + 1) % 3];
      ++dir[{a, b}];
    }
  }
  for (auto& [edge, n] : dir) {
    if (n > 1) return false;  // same directed edge twice => a flipped pair
  }
  return true;
}

/** Signed enclosed volume in mm^3. Requires a watertight mesh unless `force`;
 *  with `force` the raw divergence-theorem sum is returned regardless. */
inline double signed_volume(const TriangleMesh& mesh, bool force = false) {
  if (!force) {
    MeshDiagnostics d = diagnostics(mesh);
    if (!d.watertight) {
      throw MeshError(
          "signed_volume requires a watertight mesh (boundary edges: " +
          std::to_string(d.boundary_edge_count) +
          ", non-manifold edges: " + std::to_string(d.non_manifold_edge_count) +
          "); pass force=true to override");
    }
  }
  return signed_volume_unchecked(mesh);
}

}  // namespace printscore
