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

// Shared fixtures for the unit tests: small hand-built meshes and rigid
// transform utilities for invariance checks.

#pragma once

#include <array>
#include <random>

#include "printscore/mesh.hpp"
#include "printscore/vec.hpp"

namespace test_helpers {

using printscore::Triangle;
using printscore::TriangleMesh;
using printscore::Vec3;

// Axis-aligned box as an indexed, welded, outward-wound mesh.
inline TriangleMesh make_box(Vec3 lo, Vec3 hi) {
  TriangleMesh m;
  m.name = "box";
  m.vertices = {
      {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z},
      {lo.x, hi.y, lo.z}, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z},
      {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z},
  };
  auto quad = [&m](int a, int b, int c, int d) {
    m.triangles.push_back({{a, b, c}});
    m.triangles.push_back({{a, c, d}});
  };
  quad(0, 3, 2, 1);  // bottom (z = lo.z), outward -z
  quad(4, 5, 6, 7);  // top, outward +z
  quad(0, 1, 5, 4);  // front (y = lo.y)
  quad(2, 3, 7, 6);  // back
  quad(1, 2, 6, 5);  // right (x = hi.x)
  quad(3, 0, 4, 7);  // left
  return m;
}

inline TriangleMesh make_unit_cube() { return make_box({0, 0, 0}, {1, 1, 1}); }

// The same cube as a triangle soup (three fresh vertices per facet), the way
// an STL file stores it.
inline TriangleMesh to_soup(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.name = mesh.name;
  for (const Triangle& t : mesh.triangles) {
    Triangle n;
    for (int i = 0; i < 3; ++i) {
      n[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(mesh.vertices[t[i]]);
    }
    out.triangles.push_back(n);
  }
  return out;
}

// Regular tetrahedron with vertices on alternating cube corners, edge 2*sqrt(2),
// volume 8/3.
inline TriangleMesh make_tetrahedron() {
  TriangleMesh m;
  m.name = "tet";
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.triangles = {{{0, 1, 2}}, {{0, 3, 1}}, {{0, 2, 3}}, {{1, 3, 2}}};
  return m;
}

// Rodrigues rotation about a unit axis.
inline Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  const Vec3 k = printscore::normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + printscore::cross(k, v) * s + k * (printscore::dot(k, v) * (1 - c));
}

inline TriangleMesh transformed(const TriangleMesh& mesh, const Vec3& axis,
                                double angle, const Vec3& translation,
                                double scale = 1.0) {
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) {
    v = rotate(v * scale, axis, angle) + translation;
  }
  return out;
}

inline std::mt19937_64 test_rng(unsigned seed = 42) {
  return std::mt19937_64{seed};
}

}  // namespace test_helpers
