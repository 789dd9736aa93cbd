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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "printscore/mesh.hpp"
#include "printscore/metrics.hpp"

namespace printscore {

/// Discrete mean curvature is clamped to this magnitude (1/mm) so that
/// near-degenerate vertex fans cannot produce unbounded histogram ranges.
inline constexpr double kCurvatureClamp = 1e4;

/** Per-vertex discrete mean curvature of a welded manifold mesh. */
struct CurvatureField {
  std::vector<double> mean_curvature;  ///< H per vertex, 1/mm; finite.
  std::vector<double> mixed_area;      ///< Mixed Voronoi area per vertex, mm^2.
};

/** Computes per-vertex mean curvature with the cotangent-weighted discrete
 *  Laplace-Beltrami operator and mixed Voronoi vertex areas.
 *
 *  H at a vertex is half the norm of the Laplacian of the position, signed
 *  by agreement with the (area-weighted) vertex normal: convex regions of an
 *  outward-oriented mesh read positive, so a sphere of radius r reads +1/r.
 *  Boundary edges are tolerated (open patches get one-sided estimates along
 *  the rim); non-manifold edges are rejected. The input should be welded:
 *  duplicated vertices sever the vertex fans the estimator relies on.
 */
inline CurvatureField mean_curvature(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  for (const auto& [edge, uses] : detail::edge_use_counts(mesh)) {
    if (uses > 2) {
      throw MeshError("mean curvature requires a manifold mesh: edge {" +
                      std::to_string(edge.first) + "," +
                      std::to_string(edge.second) + "} borders " +
                      std::to_string(uses) + " triangles");
    }
  }

  std::size_t n = mesh.vertices.size();
  std::vector<Vec3> laplacian(n, Vec3{0.0, 0.0, 0.0});
  std::vector<Vec3> vertex_normal(n, Vec3{0.0, 0.0, 0.0});
  std::vector<double> area(n, 0.0);

  for (const Triangle& t : mesh.triangles) {
    const Vec3 p[3] = {mesh.vertices[static_cast<std::size_t>(t.v[0])],
                       mesh.vertices[static_cast<std::size_t>(t.v[1])],
                       mesh.vertices[static_cast<std::size_t>(t.v[2])]};
    Vec3 cr = cross(p[1] - p[0], p[2] - p[0]);
    double twice_area = norm(cr);
    if (twice_area < 2.0 * kDegenerateAreaEps) continue;

    // cot of the corner angle: dot of the two emanating edges over twice the
    // triangle area (the cross-product norm is the same at every corner).
    double cot[3];
    for (int k = 0; k < 3; ++k) {
      Vec3 u = p[(k + 1) % 3] - p[k];
      Vec3 v = p[(k + 2) % 3] - p[k];
      cot[k] = dot(u, v) / twice_area;
    }

    for (int k = 0; k < 3; ++k) {
      auto i = static_cast<std::size_t>(t.v[k]);
      vertex_normal[i] = vertex_normal[i] + cr;

      // The edge opposite corner k connects the other two corners; the
      // cotangent at k weights that edge in the Laplacian of both endpoints.
      auto a = static_cast<std::size_t>(t.v[(k + 1) % 3]);
      auto b = static_cast<std::size_t>(t.v[(k + 2) % 3]);
      Vec3 d = mesh.vertices[a] - mesh.vertices[b];
      laplacian[a] = laplacian[a] + cot[k] * d;
      laplacian[b] = laplacian[b] - cot[k] * d;
    }

    bool obtuse = cot[0] < 0.0 || cot[1] < 0.0 || cot[2] < 0.0;
    double tri_area = 0.5 * twice_area;
    for (int k = 0; k < 3; ++k) {
      auto i = static_cast<std::size_t>(t.v[k]);
      if (!obtuse) {
        // Voronoi share: squared emanating edges times opposite cotangents.
        double e_next = norm2(p[(k + 1) % 3] - p[k]);
        double e_prev = norm2(p[(k + 2) % 3] - p[k]);
        area[i] += (e_next * cot[(k + 2) % 3] + e_prev * cot[(k + 1) % 3]) / 8.0;
      } else {
        area[i] += (cot[k] < 0.0) ? tri_area / 2.0 : tri_area / 4.0;
      }
    }
  }

  CurvatureField field;
  field.mean_curvature.resize(n, 0.0);
  field.mixed_area = area;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(area[i] > 0.0)) continue;  // isolated or fully degenerate fan
    Vec3 k_vec = (1.0 / (2.0 * area[i])) * laplacian[i];
    double h = 0.5 * norm(k_vec);
    if (!std::isfinite(h)) h = kCurvatureClamp;
    if (h > kCurvatureClamp) h = kCurvatureClamp;
    if (dot(k_vec, vertex_normal[i]) < 0.0) h = -h;
    field.mean_curvature[i] = h;
  }
  return field;
}

/** Histogram of the per-vertex mean-curvature values. */
inline Histogram curvature_histogram(const CurvatureField& field,
                                     int bins = 64) {
  if (field.mean_curvature.empty()) {
    throw std::invalid_argument("curvature field is empty");
  }
  return make_histogram(field.mean_curvature, bins);
}

}  // namespace printscore
