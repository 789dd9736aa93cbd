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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "printscore/features.hpp"
#include "printscore/mesh.hpp"

namespace printscore {

/// Triangles whose every vertex sits within this height of the lowest point
/// of the model (along the build direction) count as build-plate contact and
/// never need support.
inline constexpr double kPlateContactTolerance = 1e-3;

namespace detail {

/// Disjoint-set over triangle indices, used to cluster detector hits.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline Vec3 normalized_build_direction(const Vec3& build_direction) {
  double len = norm(build_direction);
  if (!(len > 0.0) || !is_finite(build_direction)) {
    throw std::invalid_argument("build direction must be a non-zero vector");
  }
  return (1.0 / len) * build_direction;
}

/** Watertight Möller-Trumbore ray/triangle test. Returns the ray parameter
 *  of the hit, or a negative value if the ray misses. */
inline double ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                           const Vec3& b, const Vec3& c) {
  constexpr double kEps = 1e-12;
  Vec3 ab = b - a;
  Vec3 ac = c - a;
  Vec3 p = cross(dir, ac);
  double det = dot(ab, p);
  if (std::abs(det) < kEps) return -1.0;  // parallel to the plane
  double inv_det = 1.0 / det;
  Vec3 s = origin - a;
  double u = dot(s, p) * inv_det;
  if (u < -1e-9 || u > 1.0 + 1e-9) return -1.0;
  Vec3 q = cross(s, ab);
  double v = dot(dir, q) * inv_det;
  if (v < -1e-9 || u + v > 1.0 + 1e-9) return -1.0;
  return dot(ac, q) * inv_det;
}

}  // namespace detail

/** One connected patch of down-facing surface that would need support. */
struct OverhangRegion {
  double min_angle_deg = 90.0;  ///< Worst surface angle from horizontal.
  double area_mm2 = 0.0;        ///< Total patch area.
  std::vector<int> triangles;   ///< Member triangle indices, ascending.
};

/** Finds connected clusters of triangles that would need support when
 *  printing along `build_direction`.
 *
 *  `threshold_angle_deg` follows the slicer convention: it is the steepest
 *  self-supporting incline measured from the vertical, so a triangle needs
 *  support when the angle between its outward normal and straight down is
 *  below 90 deg - threshold — equivalently, when the surface leans at less
 *  than 90 deg - threshold from the horizontal. At 45 deg (the default) any
 *  surface flatter than 45 deg from horizontal is flagged; at 90 deg nothing
 *  is. Down-facing triangles resting on the build plate (all vertices within
 *  kPlateContactTolerance of the lowest point) are the first layer and are
 *  excluded. Clusters connect through shared edges; they are returned in
 *  order of their smallest triangle index.
 */
inline std::vector<OverhangRegion> overhang_regions(
    const TriangleMesh& mesh, const Vec3& build_direction = Vec3{0, 0, 1},
    double threshold_angle_deg = 45.0) {
  validate_mesh(mesh);
  if (!(threshold_angle_deg > 0.0) || threshold_angle_deg > 90.0) {
    throw std::invalid_argument("overhang threshold must lie in (0, 90] deg");
  }
  Vec3 up = detail::normalized_build_direction(build_direction);

  double floor_height = std::numeric_limits<double>::infinity();
  for (const Vec3& v : mesh.vertices) {
    floor_height = std::min(floor_height, dot(v, up));
  }

  std::size_t tri_count = mesh.triangles.size();
  std::vector<char> flagged(tri_count, 0);
  std::vector<double> angle_deg(tri_count, 90.0);
  std::vector<double> area(tri_count, 0.0);
  for (std::size_t t = 0; t < tri_count; ++t) {
    Vec3 cr = triangle_cross(mesh, mesh.triangles[t]);
    double len = norm(cr);
    if (len < 2.0 * kDegenerateAreaEps) continue;
    double cos_down = dot(cr, -1.0 * up) / len;
    if (cos_down <= 0.0) continue;  // facing sideways or up
    // Angle between the normal and straight down equals the surface's angle
    // from the horizontal plane.
    double from_horizontal =
        rad_to_deg(std::acos(std::clamp(cos_down, -1.0, 1.0)));
    if (from_horizontal >= 90.0 - threshold_angle_deg) continue;

    bool on_plate = true;
    for (int k = 0; k < 3; ++k) {
      const Vec3& v =
          mesh.vertices[static_cast<std::size_t>(mesh.triangles[t].v[k])];
      if (dot(v, up) > floor_height + kPlateContactTolerance) {
        on_plate = false;
        break;
      }
    }
    if (on_plate) continue;

    flagged[t] = 1;
    angle_deg[t] = from_horizontal;
    area[t] = 0.5 * len;
  }

  // Cluster flagged triangles across shared undirected edges.
  detail::UnionFind uf(tri_count);
  std::map<std::pair<int, int>, int> edge_owner;
  for (std::size_t t = 0; t < tri_count; ++t) {
    if (!flagged[t]) continue;
    const Triangle& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri.v[k];
      int b = tri.v[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] =
          edge_owner.emplace(std::pair<int, int>(key.first, key.second),
                             static_cast<int>(t));
      if (!inserted) uf.unite(static_cast<std::size_t>(it->second), t);
    }
  }

  std::map<std::size_t, std::size_t> root_to_region;
  std::vector<OverhangRegion> regions;
  for (std::size_t t = 0; t < tri_count; ++t) {
    if (!flagged[t]) continue;
    std::size_t root = uf.find(t);
    auto [it, inserted] = root_to_region.emplace(root, regions.size());
    if (inserted) regions.emplace_back();
    OverhangRegion& region = regions[it->second];
    region.min_angle_deg = std::min(region.min_angle_deg, angle_deg[t]);
    region.area_mm2 += area[t];
    region.triangles.push_back(static_cast<int>(t));
  }
  return regions;
}

/** Wraps each overhang region in a scoreable feature instance whose
 *  dimension is the region's worst (smallest) angle from horizontal. */
inline std::vector<FeatureInstance> detect_overhangs(
    const TriangleMesh& mesh, const Vec3& build_direction = Vec3{0, 0, 1},
    double threshold_angle_deg = 45.0) {
  std::vector<OverhangRegion> regions =
      overhang_regions(mesh, build_direction, threshold_angle_deg);
  std::vector<FeatureInstance> features;
  features.reserve(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    FeatureInstance f;
    f.kind = FeatureKind::kOverhang;
    f.d = regions[i].min_angle_deg;
    f.label = "overhang_" + std::to_string(i + 1);
    features.push_back(std::move(f));
  }
  return features;
}

/** Fraction of the surface area that would rest on support structures:
 *  flagged overhang area (excluding build-plate contact) over total area. */
inline double support_area_ratio(const TriangleMesh& mesh,
                                 const Vec3& build_direction = Vec3{0, 0, 1},
                                 double threshold_angle_deg = 45.0) {
  double total = surface_area(mesh);
  if (!(total > 0.0)) return 0.0;
  double flagged = 0.0;
  for (const OverhangRegion& r :
       overhang_regions(mesh, build_direction, threshold_angle_deg)) {
    flagged += r.area_mm2;
  }
  return flagged / total;
}

/** One thin-walled patch found by ray sampling. */
struct ThinRegion {
  double min_thickness_mm = 0.0;  ///< Thinnest measurement in the patch.
  std::size_t sample_count = 0;   ///< Thin samples supporting the patch.
};

/** Probes local wall thickness by area-weighted surface sampling.
 *
 *  Deterministic for a fixed seed: sample points are drawn from a seeded
 *  generator, and each sample casts a ray inward along the triangle normal;
 *  the distance to the first exit surface is the local thickness. Samples
 *  thinner than `thickness_cap_mm` are clustered: two samples belong
 *  together when their source triangles share an edge, or when one sample's
 *  source triangle is the wall face its counterpart ray hit (which welds the
 *  two sides of a thin wall into one region). Each cluster emits one
 *  unsupported_wall instance with d = the minimum thickness found.
 *
 *  Complexity is O(samples x triangles); intended for design review of
 *  moderate meshes, not for bulk batch scans.
 */
inline std::vector<FeatureInstance> detect_thin_regions(
    const TriangleMesh& mesh, double thickness_cap_mm,
    std::size_t sample_count = 10000, std::uint32_t seed = 42) {
  validate_mesh(mesh);
  if (!(thickness_cap_mm > 0.0) || !std::isfinite(thickness_cap_mm)) {
    throw std::invalid_argument("thickness cap must be positive");
  }
  MeshDiagnostics diag = diagnostics(mesh, 0.0);
  if (!diag.watertight) {
    throw MeshError(
        "thin-region detection needs a watertight mesh: " +
        std::to_string(diag.boundary_edge_count) + " boundary and " +
        std::to_string(diag.non_manifold_edge_count) + " non-manifold edges");
  }
  if (mesh.triangles.empty() || sample_count == 0) return {};

  // Cumulative-area table for area-weighted triangle selection.
  std::size_t tri_count = mesh.triangles.size();
  std::vector<double> cumulative(tri_count, 0.0);
  double total_area = 0.0;
  for (std::size_t t = 0; t < tri_count; ++t) {
    total_area += triangle_area(mesh, mesh.triangles[t]);
    cumulative[t] = total_area;
  }
  if (!(total_area > 0.0)) return {};

  std::mt19937 rng(seed);
  auto uniform01 = [&rng]() {
    return (static_cast<double>(rng()) + 0.5) / 4294967296.0;
  };

  double ray_offset = 1e-6 * bounding_box(mesh).diagonal();
  struct ThinSample {
    std::size_t source_tri;
    std::size_t hit_tri;
    double thickness;
  };
  std::vector<ThinSample> thin;

  for (std::size_t s = 0; s < sample_count; ++s) {
    double pick = uniform01() * total_area;
    std::size_t t = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin());
    if (t >= tri_count) t = tri_count - 1;

    const Triangle& tri = mesh.triangles[t];
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(tri.v[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(tri.v[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(tri.v[2])];
    double r1 = std::sqrt(uniform01());
    double r2 = uniform01();
    Vec3 point = (1.0 - r1) * a + (r1 * (1.0 - r2)) * b + (r1 * r2) * c;

    Vec3 n = triangle_normal(mesh, tri);
    if (!(norm2(n) > 0.0)) continue;
    Vec3 dir = -1.0 * n;  // probe inward
    Vec3 origin = point + ray_offset * dir;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_tri = tri_count;
    for (std::size_t other = 0; other < tri_count; ++other) {
      if (other == t) continue;
      const Triangle& o = mesh.triangles[other];
      double hit = detail::ray_triangle(
          origin, dir, mesh.vertices[static_cast<std::size_t>(o.v[0])],
          mesh.vertices[static_cast<std::size_t>(o.v[1])],
          mesh.vertices[static_cast<std::size_t>(o.v[2])]);
      if (hit > ray_offset && hit < best) {
        best = hit;
        best_tri = other;
      }
    }
    if (best_tri == tri_count) continue;
    double thickness = best + ray_offset;
    if (thickness < thickness_cap_mm) {
      thin.push_back({t, best_tri, thickness});
    }
  }
  if (thin.empty()) return {};

  // Cluster thin samples: adjacency through shared edges plus the
  // source-to-hit link that joins the two faces of one wall.
  detail::UnionFind uf(tri_count);
  std::map<std::pair<int, int>, int> edge_owner;
  std::vector<char> involved(tri_count, 0);
  for (const ThinSample& s : thin) {
    involved[s.source_tri] = 1;
    involved[s.hit_tri] = 1;
    uf.unite(s.source_tri, s.hit_tri);
  }
  for (std::size_t t = 0; t < tri_count; ++t) {
    if (!involved[t]) continue;
    const Triangle& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      auto key = std::minmax(tri.v[k], tri.v[(k + 1) % 3]);
      auto [it, inserted] =
          edge_owner.emplace(std::pair<int, int>(key.first, key.second),
                             static_cast<int>(t));
      if (!inserted) uf.unite(static_cast<std::size_t>(it->second), t);
    }
  }

  std::map<std::size_t, ThinRegion> by_root;
  for (const ThinSample& s : thin) {
    ThinRegion& region = by_root[uf.find(s.source_tri)];
    if (region.sample_count == 0 || s.thickness < region.min_thickness_mm) {
      region.min_thickness_mm = s.thickness;
    }
    ++region.sample_count;
  }

  std::vector<FeatureInstance> features;
  std::size_t index = 1;
  for (const auto& [root, region] : by_root) {
    FeatureInstance f;
    f.kind = FeatureKind::kUnsupportedWall;
    f.d = region.min_thickness_mm;
    f.label = "thin_region_" + std::to_string(index++);
    features.push_back(std::move(f));
  }
  return features;
}

}  // namespace printscore
