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
#include <sstream>
#include <string>

#include "printscore/features.hpp"
#include "printscore/mesh.hpp"

namespace printscore {

enum class PrimitiveKind { kSphere, kUvSphere, kCylinder, kTorus, kBox };

inline const char* primitive_kind_name(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::kSphere: return "sphere";
    case PrimitiveKind::kUvSphere: return "uvsphere";
    case PrimitiveKind::kCylinder: return "cylinder";
    case PrimitiveKind::kTorus: return "torus";
    case PrimitiveKind::kBox: return "box";
  }
  return "?";
}

/** Parametric test-solid request. `level` is the single resolution knob:
 *   sphere    icosphere subdivision level, 20*4^level faces
 *   uvsphere  ignored when stacks is set; otherwise stacks = 5*2^level
 *   cylinder  6*2^level segments around, 2^level bands along the axis
 *   torus     6*2^level major segments, 3*2^level minor segments
 *   box       2^(level-1) grid squares per face edge
 */
struct PrimitiveSpec {
  PrimitiveKind kind = PrimitiveKind::kSphere;
  int level = 4;

  // sphere / uvsphere
  double diameter = 30.0;
  int stacks = 0;  // uvsphere polar bands; 0 = derive from level
  int slices = 0;  // uvsphere longitudes; 0 = 2*stacks

  // cylinder
  double cylinder_diameter = 30.0;
  double cylinder_height = 30.0;

  // torus (ring = centerline circle, tube = cross-section)
  double ring_diameter = 20.0;
  double tube_diameter = 10.0;

  // box edge lengths
  Vec3 box_extents{30.0, 30.0, 30.0};

  std::int64_t triangle_cap = 2'000'000;
};

/** A generated mesh plus its as-designed ground truth. */
struct GeneratedModel {
  TriangleMesh mesh;
  FeatureManifest manifest;
  double analytic_area_mm2 = 0.0;
  double analytic_volume_mm3 = 0.0;
};

namespace detail {

inline void check_cap(std::int64_t faces, std::int64_t cap) {
  if (faces > cap) {
    throw std::invalid_argument(
        "resolution would produce " + std::to_string(faces) +
        " triangles, over the cap of " + std::to_string(cap));
  }
}

inline std::string fmt_mm(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/** Icosphere: regular icosahedron, each subdivision splits every triangle in
 *  four via edge midpoints re-projected onto the sphere. */
inline TriangleMesh make_icosphere(double radius, int level) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh m;
  m.vertices = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (Vec3& v : m.vertices) v = normalized(v) * radius;
  m.triangles = {
      {{0, 11, 5}}, {{0, 5, 1}},  {{0, 1, 7}},   {{0, 7, 10}}, {{0, 10, 11}},
      {{1, 5, 9}},  {{5, 11, 4}}, {{11, 10, 2}}, {{10, 7, 6}}, {{7, 1, 8}},
      {{3, 9, 4}},  {{3, 4, 2}},  {{3, 2, 6}},   {{3, 6, 8}},  {{3, 8, 9}},
      {{4, 9, 5}},  {{2, 4, 11}}, {{6, 2, 10}},  {{8, 6, 7}},  {{9, 8, 1}},
  };
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 p = normalized((m.vertices[a] + m.vertices[b]) * 0.5) * radius;
      int id = static_cast<int>(m.vertices.size());
      m.vertices.push_back(p);
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(m.triangles.size() * 4);
    for (const Triangle& t : m.triangles) {
      int ab = mid(t[0], t[1]);
      int bc = mid(t[1], t[2]);
      int ca = mid(t[2], t[0]);
      next.push_back({{t[0], ab, ca}});
      next.push_back({{t[1], bc, ab}});
      next.push_back({{t[2], ca, bc}});
      next.push_back({{ab, bc, ca}});
    }
    m.triangles = std::move(next);
  }
  return m;
}

/** Latitude/longitude sphere: `stacks` polar bands, `slices` longitudes,
 *  poles on the z axis, 2*slices*(stacks-1) faces. */
inline TriangleMesh make_uvsphere(double radius, int stacks, int slices) {
  TriangleMesh m;
  const int north = 0;
  m.vertices.push_back({0, 0, radius});
  // rings[j][k], j = 0..stacks-2 from the north.
  std::vector<std::vector<int>> rings;
  for (int j = 1; j < stacks; ++j) {
    double theta = kPi * j / stacks;
    double z = radius * std::cos(theta);
    double rj = radius * std::sin(theta);
    std::vector<int> ring;
    for (int k = 0; k < slices; ++k) {
      double phi = 2.0 * kPi * k / slices;
      ring.push_back(static_cast<int>(m.vertices.size()));
      m.vertices.push_back({rj * std::cos(phi), rj * std::sin(phi), z});
    }
    rings.push_back(std::move(ring));
  }
  const int south = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, -radius});

  auto at = [&](int j, int k) { return rings[j][k % slices]; };
  for (int k = 0; k < slices; ++k) {
    m.triangles.push_back({{north, at(0, k), at(0, k + 1)}});
  }
  for (int j = 0; j + 1 < static_cast<int>(rings.size()); ++j) {
    for (int k = 0; k < slices; ++k) {
      int a = at(j, k), b = at(j, k + 1);
      int c = at(j + 1, k + 1), d = at(j + 1, k);
      m.triangles.push_back({{a, d, c}});
      m.triangles.push_back({{a, c, b}});
    }
  }
  const int last = static_cast<int>(rings.size()) - 1;
  for (int k = 0; k < slices; ++k) {
    m.triangles.push_back({{south, at(last, k + 1), at(last, k)}});
  }
  return m;
}

/** Right circular cylinder, axis +z, base in the z=0 plane. */
inline TriangleMesh make_cylinder(double radius, double height, int segments,
                                  int bands) {
  TriangleMesh m;
  std::vector<std::vector<int>> rings(bands + 1);
  for (int i = 0; i <= bands; ++i) {
    double z = height * i / bands;
    for (int k = 0; k < segments; ++k) {
      double phi = 2.0 * kPi * k / segments;
      rings[i].push_back(static_cast<int>(m.vertices.size()));
      m.vertices.push_back({radius * std::cos(phi), radius * std::sin(phi), z});
    }
  }
  int bottom_center = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, 0});
  int top_center = static_cast<int>(m.vertices.size());
  m.vertices.push_back({0, 0, height});

  auto at = [&](int i, int k) { return rings[i][k % segments]; };
  for (int k = 0; k < segments; ++k) {
    m.triangles.push_back({{bottom_center, at(0, k + 1), at(0, k)}});
    m.triangles.push_back({{top_center, at(bands, k), at(bands, k + 1)}});
  }
  for (int i = 0; i < bands; ++i) {
    for (int k = 0; k < segments; ++k) {
      int a = at(i, k), b = at(i, k + 1);
      int c = at(i + 1, k + 1), d = at(i + 1, k);
      m.triangles.push_back({{a, b, c}});
      m.triangles.push_back({{a, c, d}});
    }
  }
  return m;
}

/** Torus around the z axis: ring radius R (centerline), tube radius r. */
inline TriangleMesh make_torus(double ring_radius, double tube_radius,
                               int major_segments, int minor_segments) {
  TriangleMesh m;
  for (int i = 0; i < major_segments; ++i) {
    double u = 2.0 * kPi * i / major_segments;
    double cu = std::cos(u), su = std::sin(u);
    for (int j = 0; j < minor_segments; ++j) {
      double v = 2.0 * kPi * j / minor_segments;
      double w = ring_radius + tube_radius * std::cos(v);
      m.vertices.push_back({w * cu, w * su, tube_radius * std::sin(v)});
    }
  }
  auto at = [&](int i, int j) {
    return (i % major_segments) * minor_segments + (j % minor_segments);
  };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      int a = at(i, j), b = at(i + 1, j);
      int c = at(i + 1, j + 1), d = at(i, j + 1);
      m.triangles.push_back({{a, b, c}});
      m.triangles.push_back({{a, c, d}});
    }
  }
  return m;
}

/** Axis-aligned box centered at the origin with a g x g vertex grid per
 *  face, indexed through a shared surface-lattice so no welding is needed. */
inline TriangleMesh make_box_mesh(Vec3 extents, int g) {
  TriangleMesh m;
  std::map<std::tuple<int, int, int>, int> lattice;
  auto vid = [&](int i, int j, int k) {
    auto key = std::make_tuple(i, j, k);
    auto it = lattice.find(key);
    if (it != lattice.end()) return it->second;
    Vec3 p{extents.x * (static_cast<double>(i) / g - 0.5),
           extents.y * (static_cast<double>(j) / g - 0.5),
           extents.z * (static_cast<double>(k) / g - 0.5)};
    int id = static_cast<int>(m.vertices.size());
    m.vertices.push_back(p);
    lattice.emplace(key, id);
    return id;
  };
  // Each face: fixed axis at 0 or g, the other two sweep the grid. The
  // lambda emits the quad with corners in (u,v) order and flips when needed.
  auto face = [&](int axis, bool positive) {
    for (int u = 0; u < g; ++u) {
      for (int v = 0; v < g; ++v) {
        auto corner = [&](int du, int dv) {
          int w = positive ? g : 0;
          int uu = u + du, vv = v + dv;
          switch (axis) {
            case 0: return vid(w, uu, vv);
            case 1: return vid(uu, w, vv);
            default: return vid(uu, vv, w);
          }
        };
        int a = corner(0, 0), b = corner(1, 0), c = corner(1, 1),
            d = corner(0, 1);
        // +x, -y, +z faces wind (a,b,c,d); mirrored faces reverse.
        bool forward = (axis == 1) ? !positive : positive;
        if (forward) {
          m.triangles.push_back({{a, b, c}});
          m.triangles.push_back({{a, c, d}});
        } else {
          m.triangles.push_back({{a, d, c}});
          m.triangles.push_back({{a, c, b}});
        }
      }
    }
  };
  for (int axis = 0; axis < 3; ++axis) {
    face(axis, false);
    face(axis, true);
  }
  return m;
}

}  // namespace detail

/** Builds the requested solid with an empty feature list and analytic
 *  reference area/volume in the manifest. All outputs are watertight,
 *  consistently outward-wound indexed meshes. */
inline GeneratedModel gen_primitive(const PrimitiveSpec& spec) {
  if (spec.level < 0 || spec.level > 10) {
    throw std::invalid_argument("primitive level must be in [0, 10]");
  }
  GeneratedModel out;
  std::ostringstream name;
  switch (spec.kind) {
    case PrimitiveKind::kSphere: {
      if (!(spec.diameter > 0)) throw std::invalid_argument("diameter <= 0");
      std::int64_t faces = 20ll << (2 * spec.level);
      detail::check_cap(faces, spec.triangle_cap);
      double r = spec.diameter / 2.0;
      out.mesh = detail::make_icosphere(r, spec.level);
      out.analytic_area_mm2 = 4.0 * kPi * r * r;
      out.analytic_volume_mm3 = 4.0 / 3.0 * kPi * r * r * r;
      name << "sphere_d" << detail::fmt_mm(spec.diameter) << "_L" << spec.level;
      break;
    }
    case PrimitiveKind::kUvSphere: {
      if (!(spec.diameter > 0)) throw std::invalid_argument("diameter <= 0");
      int stacks = spec.stacks > 0 ? spec.stacks : 5 * (1 << spec.level);
      int slices = spec.slices > 0 ? spec.slices : 2 * stacks;
      if (stacks < 2 || slices < 3) {
        throw std::invalid_argument("uvsphere needs stacks >= 2, slices >= 3");
      }
      detail::check_cap(2ll * slices * (stacks - 1), spec.triangle_cap);
      double r = spec.diameter / 2.0;
      out.mesh = detail::make_uvsphere(r, stacks, slices);
      out.analytic_area_mm2 = 4.0 * kPi * r * r;
      out.analytic_volume_mm3 = 4.0 / 3.0 * kPi * r * r * r;
      name << "uvsphere_d" << detail::fmt_mm(spec.diameter) << "_t" << stacks
           << "x" << slices;
      break;
    }
    case PrimitiveKind::kCylinder: {
      if (!(spec.cylinder_diameter > 0) || !(spec.cylinder_height > 0)) {
        throw std::invalid_argument("cylinder dimensions must be positive");
      }
      int segments = 6 * (1 << spec.level);
      int bands = std::max(1, 1 << spec.level);
      detail::check_cap(2ll * segments * bands + 2ll * segments,
                        spec.triangle_cap);
      double r = spec.cylinder_diameter / 2.0;
      double h = spec.cylinder_height;
      out.mesh = detail::make_cylinder(r, h, segments, bands);
      out.analytic_area_mm2 = 2.0 * kPi * r * h + 2.0 * kPi * r * r;
      out.analytic_volume_mm3 = kPi * r * r * h;
      name << "cylinder_d" << detail::fmt_mm(spec.cylinder_diameter) << "_h"
           << detail::fmt_mm(h) << "_n" << segments;
      break;
    }
    case PrimitiveKind::kTorus: {
      double R = spec.ring_diameter / 2.0;
      double r = spec.tube_diameter / 2.0;
      if (!(r > 0) || !(R > r)) {
        throw std::invalid_argument(
            "torus needs ring radius > tube radius > 0");
      }
      int major = 6 * (1 << spec.level);
      int minor = 3 * (1 << spec.level);
      detail::check_cap(2ll * major * minor, spec.triangle_cap);
      out.mesh = detail::make_torus(R, r, major, minor);
      out.analytic_area_mm2 = 4.0 * kPi * kPi * R * r;
      out.analytic_volume_mm3 = 2.0 * kPi * kPi * R * r * r;
      name << "torus_R" << detail::fmt_mm(R) << "_r" << detail::fmt_mm(r)
           << "_n" << major << "x" << minor;
      break;
    }
    case PrimitiveKind::kBox: {
      const Vec3& e = spec.box_extents;
      if (!(e.x > 0) || !(e.y > 0) || !(e.z > 0)) {
        throw std::invalid_argument("box extents must be positive");
      }
      int g = spec.level <= 1 ? 1 : 1 << (spec.level - 1);
      detail::check_cap(12ll * g * g, spec.triangle_cap);
      out.mesh = detail::make_box_mesh(e, g);
      out.analytic_area_mm2 = 2.0 * (e.x * e.y + e.y * e.z + e.z * e.x);
      out.analytic_volume_mm3 = e.x * e.y * e.z;
      name << "box_" << detail::fmt_mm(e.x) << "x" << detail::fmt_mm(e.y)
           << "x" << detail::fmt_mm(e.z) << "_g" << g;
      break;
    }
  }
  out.mesh.name = name.str();
  out.manifest.source = std::string("generated:") +
                        primitive_kind_name(spec.kind);
  out.manifest.reference_area_mm2 = out.analytic_area_mm2;
  out.manifest.reference_volume_mm3 = out.analytic_volume_mm3;
  return out;
}

}  // namespace printscore
