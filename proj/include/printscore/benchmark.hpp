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
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "printscore/features.hpp"
#include "printscore/primitives.hpp"

namespace printscore {

/** Test-plate request: a rectangular base plate carrying one specimen per
 *  ladder entry, arranged in a single row along x. All ladders may be empty
 *  (a bare plate results). Angles are degrees from the horizontal. */
struct BenchmarkSpec {
  std::string name = "custom";

  double plate_x = 120.0;
  double plate_y = 30.0;
  double plate_thickness = 6.0;

  std::vector<double> supported_wall_thicknesses;
  std::vector<double> unsupported_wall_thicknesses;
  std::vector<double> hole_diameters;       // through the plate
  std::vector<double> overhang_angles_deg;  // leaning-column specimens
  std::vector<double> bridge_thicknesses;   // horizontal beam on two legs
  std::vector<double> emboss_sizes;
  std::vector<double> engrave_sizes;
  std::vector<double> pin_diameters;
  std::vector<double> dome_radii;  // curvature specimens, no manifest entry
  std::optional<double> circular_wall_thickness;
  double circular_wall_diameter = 12.0;  // centerline diameter
  double circular_wall_height = 8.0;

  double wall_height = 8.0;
  double wall_depth = 12.0;
  double fin_width = 3.0;
  double fin_depth = 8.0;
  double fin_length = 12.0;
  double bridge_gap = 6.0;
  double bridge_leg_width = 3.0;
  double bridge_leg_height = 6.0;
  double bridge_depth = 8.0;
  double pin_height = 8.0;
  double margin = 4.0;  // spacing between specimen cells
  int circle_segments = 32;
  int dome_slices = 48;
  int dome_stacks = 12;
  std::int64_t triangle_cap = 2'000'000;
};

namespace detail {

inline void check_ladder(const std::vector<double>& v, const char* what,
                         double lo, double hi) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > lo) || !(v[i] < hi)) {
      throw std::invalid_argument(std::string(what) + " value " +
                                  std::to_string(v[i]) + " outside (" +
                                  std::to_string(lo) + ", " +
                                  std::to_string(hi) + ")");
    }
    if (i > 0 && !(v[i] > v[i - 1])) {
      throw std::invalid_argument(std::string(what) +
                                  " ladder must be strictly increasing");
    }
  }
}

class PlateBuilder {
 public:
  explicit PlateBuilder(const BenchmarkSpec& spec) : s_(spec) {}

  GeneratedModel build() {
    validate();
    place_features();
    collect_breaks();
    emit_plate();
    for (Placed& f : placed_) emit_feature(f);
    finalize();
    return std::move(out_);
  }

 private:
  enum class Type {
    kWall,
    kFin,
    kHole,
    kBridge,
    kEmboss,
    kEngrave,
    kPin,
    kCircularWall,
    kDome
  };

  struct Placed {
    Type type;
    double value = 0.0;  // ladder entry
    double x0, x1, y0, y1;
    FeatureKind kind = FeatureKind::kSupportedWall;
    bool in_manifest = true;
    std::string label;
  };

  // ---- validation and layout -------------------------------------------

  void validate() const {
    if (!(s_.plate_x > 0) || !(s_.plate_y > 0) || !(s_.plate_thickness > 0)) {
      throw std::invalid_argument("plate extents must be positive");
    }
    if (!(s_.margin > 0)) throw std::invalid_argument("margin must be positive");
    const double big = 1e4;
    check_ladder(s_.supported_wall_thicknesses, "supported wall", 0, big);
    check_ladder(s_.unsupported_wall_thicknesses, "unsupported wall", 0, big);
    check_ladder(s_.hole_diameters, "hole diameter", 0, big);
    check_ladder(s_.overhang_angles_deg, "overhang angle", 0.0, 90.0);
    check_ladder(s_.bridge_thicknesses, "bridge thickness", 0, big);
    check_ladder(s_.emboss_sizes, "emboss size", 0, big);
    check_ladder(s_.engrave_sizes, "engrave size", 0, big);
    check_ladder(s_.pin_diameters, "pin diameter", 0, big);
    check_ladder(s_.dome_radii, "dome radius", 0, big);
    if (s_.circular_wall_thickness) {
      double t = *s_.circular_wall_thickness;
      if (!(t > 0) || !(s_.circular_wall_diameter - t > 0.2)) {
        throw std::invalid_argument(
            "circular wall thickness incompatible with its diameter");
      }
    }
    if (s_.circle_segments < 8 || s_.dome_slices < 8 || s_.dome_stacks < 2) {
      throw std::invalid_argument("circle resolution too coarse");
    }
  }

  std::string make_label(FeatureKind kind, double v, bool angular,
                         const char* override_stem = nullptr) {
    std::ostringstream os;
    os << (override_stem ? override_stem : kind_name(kind)) << "_" << v
       << (angular ? "deg" : "mm");
    return os.str();
  }

  void add_placed(Type type, FeatureKind kind, double value, double width,
                  double depth, double trailing, bool in_manifest = true,
                  const char* stem = nullptr) {
    if (depth + 2.0 * s_.margin > s_.plate_y + 1e-9) {
      throw std::invalid_argument(
          "feature " + make_label(kind, value, is_angular(kind), stem) +
          " is too deep for the plate (needs " +
          std::to_string(depth + 2 * s_.margin) + " mm in y)");
    }
    Placed p;
    p.type = type;
    p.kind = kind;
    p.value = value;
    p.x0 = cursor_;
    p.x1 = cursor_ + width;
    p.y0 = (s_.plate_y - depth) / 2.0;
    p.y1 = p.y0 + depth;
    p.in_manifest = in_manifest;
    if (in_manifest) p.label = make_label(kind, value, is_angular(kind), stem);
    placed_.push_back(p);
    cursor_ = p.x1 + std::max(s_.margin, trailing);
  }

  void place_features() {
    cursor_ = s_.margin;
    const double pad = 2.0;  // flat shelf between a round feature and its rim
    for (double t : s_.supported_wall_thicknesses) {
      add_placed(Type::kWall, FeatureKind::kSupportedWall, t, t, s_.wall_depth,
                 0);
    }
    for (double t : s_.unsupported_wall_thicknesses) {
      add_placed(Type::kWall, FeatureKind::kUnsupportedWall, t, t,
                 s_.wall_depth, 0);
    }
    if (s_.circular_wall_thickness) {
      double t = *s_.circular_wall_thickness;
      double outer = s_.circular_wall_diameter / 2.0 + t / 2.0;
      add_placed(Type::kCircularWall, FeatureKind::kUnsupportedWall, t,
                 2 * outer + 2 * pad, 2 * outer + 2 * pad, 0, true,
                 "circular_wall");
    }
    for (double a : s_.overhang_angles_deg) {
      double reach = s_.fin_length * std::cos(deg_to_rad(a));
      add_placed(Type::kFin, FeatureKind::kOverhang, a, s_.fin_width,
                 s_.fin_depth, reach + 2.0);
    }
    for (double d : s_.hole_diameters) {
      add_placed(Type::kHole, FeatureKind::kThroughHole, d, d + 2 * pad,
                 d + 2 * pad, 0);
    }
    for (double t : s_.bridge_thicknesses) {
      add_placed(Type::kBridge, FeatureKind::kBridge, t,
                 2 * s_.bridge_leg_width + s_.bridge_gap, s_.bridge_depth, 0);
    }
    for (double d : s_.pin_diameters) {
      add_placed(Type::kPin, FeatureKind::kPin, d, d + 2 * pad, d + 2 * pad, 0);
    }
    for (double e : s_.emboss_sizes) {
      add_placed(Type::kEmboss, FeatureKind::kEmbossedDetail, e, e, e, 0);
    }
    for (double e : s_.engrave_sizes) {
      add_placed(Type::kEngrave, FeatureKind::kEngravedDetail, e, e, e, 0);
    }
    for (double r : s_.dome_radii) {
      add_placed(Type::kDome, FeatureKind::kEmbossedDetail, r, 2 * r + 2 * pad,
                 2 * r + 2 * pad, 0, /*in_manifest=*/false, "dome");
    }
    double need = cursor_;
    if (need > s_.plate_x + 1e-9) {
      throw std::invalid_argument(
          "features need " + std::to_string(need) +
          " mm of plate length, the plate is " + std::to_string(s_.plate_x));
    }
  }

  // ---- lattice ----------------------------------------------------------

  void collect_breaks() {
    xs_ = {0.0, s_.plate_x};
    ys_ = {0.0, s_.plate_y};
    for (const Placed& p : placed_) {
      xs_.push_back(p.x0);
      xs_.push_back(p.x1);
      ys_.push_back(p.y0);
      ys_.push_back(p.y1);
      if (p.type == Type::kBridge) {
        xs_.push_back(p.x0 + s_.bridge_leg_width);
        xs_.push_back(p.x1 - s_.bridge_leg_width);
      }
    }
    auto dedupe = [](std::vector<double>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(xs_);
    dedupe(ys_);
    skip_top_.assign((xs_.size() - 1) * (ys_.size() - 1), 0);
    skip_bottom_.assign(skip_top_.size(), 0);

    for (const Placed& p : placed_) {
      bool leg_columns_only = p.type == Type::kBridge;
      int i0 = xi(p.x0), i1 = xi(p.x1), j0 = yi(p.y0), j1 = yi(p.y1);
      for (int i = i0; i < i1; ++i) {
        for (int j = j0; j < j1; ++j) {
          if (leg_columns_only) {
            double cx = xs_[i];
            bool in_leg = cx < p.x0 + s_.bridge_leg_width - 1e-12 ||
                          cx > p.x1 - s_.bridge_leg_width - 1e-12;
            if (!in_leg) continue;
          }
          skip_top_[cell(i, j)] = 1;
          if (p.type == Type::kHole) skip_bottom_[cell(i, j)] = 1;
        }
      }
    }
  }

  int xi(double x) const {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    return static_cast<int>(it - xs_.begin());
  }
  int yi(double y) const {
    auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
    return static_cast<int>(it - ys_.begin());
  }
  std::size_t cell(int i, int j) const {
    return static_cast<std::size_t>(i) * (ys_.size() - 1) + j;
  }

  int add_vertex(Vec3 p) {
    out_.mesh.vertices.push_back(p);
    return static_cast<int>(out_.mesh.vertices.size()) - 1;
  }
  void tri(int a, int b, int c) { out_.mesh.triangles.push_back({{a, b, c}}); }
  void quad(int a, int b, int c, int d) {
    tri(a, b, c);
    tri(a, c, d);
  }

  int top_id(int i, int j) {
    auto key = (static_cast<std::int64_t>(i) << 32) | j;
    auto it = top_ids_.find(key);
    if (it != top_ids_.end()) return it->second;
    int id = add_vertex({xs_[i], ys_[j], s_.plate_thickness});
    top_ids_.emplace(key, id);
    return id;
  }
  int bot_id(int i, int j) {
    auto key = (static_cast<std::int64_t>(i) << 32) | j;
    auto it = bot_ids_.find(key);
    if (it != bot_ids_.end()) return it->second;
    int id = add_vertex({xs_[i], ys_[j], 0.0});
    bot_ids_.emplace(key, id);
    return id;
  }

  /** Counter-clockwise (from +z) loop of lattice ids around a break-aligned
   *  rectangle, including every lattice station on its boundary. */
  template <typename IdFn>
  std::vector<int> rect_loop(int i0, int i1, int j0, int j1, IdFn id) {
    std::vector<int> loop;
    for (int i = i0; i < i1; ++i) loop.push_back(id(i, j0));
    for (int j = j0; j < j1; ++j) loop.push_back(id(i1, j));
    for (int i = i1; i > i0; --i) loop.push_back(id(i, j1));
    for (int j = j1; j > j0; --j) loop.push_back(id(i0, j));
    return loop;
  }

  Vec3 centroid(const std::vector<int>& ids) const {
    Vec3 c;
    for (int id : ids) c += out_.mesh.vertices[id];
    return c / static_cast<double>(ids.size());
  }

  // ---- generic surface pieces ------------------------------------------

  /** Solid prism (or oblique prism) on a CCW base loop lying in the plate
   *  top: side walls plus a fan-capped top, open at the base. */
  void prism(const std::vector<int>& base, Vec3 offset) {
    const int n = static_cast<int>(base.size());
    std::vector<int> top(n);
    for (int k = 0; k < n; ++k) {
      top[k] = add_vertex(out_.mesh.vertices[base[k]] + offset);
    }
    for (int k = 0; k < n; ++k) {
      int k1 = (k + 1) % n;
      quad(base[k], base[k1], top[k1], top[k]);
    }
    int c = add_vertex(centroid(top));
    for (int k = 0; k < n; ++k) tri(c, top[k], top[(k + 1) % n]);
  }

  /** Rectangular pocket sunk below a CCW rim loop in the plate top. */
  void pocket(const std::vector<int>& rim, double depth) {
    const int n = static_cast<int>(rim.size());
    std::vector<int> floor(n);
    for (int k = 0; k < n; ++k) {
      floor[k] = add_vertex(out_.mesh.vertices[rim[k]] - Vec3{0, 0, depth});
    }
    for (int k = 0; k < n; ++k) {
      int k1 = (k + 1) % n;
      quad(rim[k], rim[k1], floor[k1], floor[k]);
    }
    int c = add_vertex(centroid(floor));
    for (int k = 0; k < n; ++k) tri(c, floor[k], floor[(k + 1) % n]);
  }

  std::vector<int> add_ring(Vec3 center, double r, int n, double z) {
    std::vector<int> ring(n);
    for (int k = 0; k < n; ++k) {
      double phi = 2.0 * kPi * k / n;
      ring[k] = add_vertex(
          {center.x + r * std::cos(phi), center.y + r * std::sin(phi), z});
    }
    return ring;
  }

  /** Planar ring between two CCW loops that are star-shaped around `center`,
   *  triangulated by an angular merge walk. `face_up` selects the winding. */
  void annulus(const std::vector<int>& outer, const std::vector<int>& inner,
               Vec3 center, bool face_up) {
    auto angles = [&](const std::vector<int>& ids) {
      std::vector<double> a(ids.size());
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const Vec3& p = out_.mesh.vertices[ids[k]];
        a[k] = std::atan2(p.y - center.y, p.x - center.x);
      }
      return a;
    };
    auto step = [](double prev, double next) {
      double d = next - prev;
      while (d <= 0) d += 2.0 * kPi;
      while (d > 2.0 * kPi) d -= 2.0 * kPi;
      return d;
    };
    const int n = static_cast<int>(outer.size());
    const int m = static_cast<int>(inner.size());
    std::vector<double> oa = angles(outer), ia = angles(inner);

    std::vector<double> ou(n + 1), iu(m + 1);
    ou[0] = oa[0];
    for (int k = 1; k <= n; ++k) ou[k] = ou[k - 1] + step(oa[(k - 1) % n], oa[k % n]);
    // Start the inner walk at the last inner vertex not ahead of outer[0].
    int j0 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
      double behind = oa[0] - ia[k];
      while (behind < 0) behind += 2.0 * kPi;
      while (behind >= 2.0 * kPi) behind -= 2.0 * kPi;
      if (behind < best) {
        best = behind;
        j0 = k;
      }
    }
    iu[0] = ou[0] - best;
    for (int k = 1; k <= m; ++k) {
      iu[k] = iu[k - 1] + step(ia[(j0 + k - 1) % m], ia[(j0 + k) % m]);
    }

    auto emit = [&](int a, int b, int c) {
      if (face_up) tri(a, b, c);
      else tri(a, c, b);
    };
    int i = 0, j = 0;
    while (i < n || j < m) {
      bool take_outer = (j == m) || (i < n && ou[i + 1] <= iu[j + 1]);
      if (take_outer) {
        emit(outer[i % n], outer[(i + 1) % n], inner[(j0 + j) % m]);
        ++i;
      } else {
        emit(outer[i % n], inner[(j0 + j + 1) % m], inner[(j0 + j) % m]);
        ++j;
      }
    }
  }

  // ---- features ---------------------------------------------------------

  void emit_feature(const Placed& p) {
    const double T = s_.plate_thickness;
    const int i0 = xi(p.x0), i1 = xi(p.x1), j0 = yi(p.y0), j1 = yi(p.y1);
    auto top = [&](int i, int j) { return top_id(i, j); };
    const Vec3 center{(p.x0 + p.x1) / 2.0, (p.y0 + p.y1) / 2.0, T};

    switch (p.type) {
      case Type::kWall:
      case Type::kEmboss: {
        double h = p.type == Type::kWall ? s_.wall_height : p.value;
        prism(rect_loop(i0, i1, j0, j1, top), {0, 0, h});
        break;
      }
      case Type::kFin: {
        double a = deg_to_rad(p.value);
        Vec3 axis{s_.fin_length * std::cos(a), 0, s_.fin_length * std::sin(a)};
        prism(rect_loop(i0, i1, j0, j1, top), axis);
        break;
      }
      case Type::kEngrave: {
        double depth = std::min(p.value, s_.plate_thickness / 2.0);
        pocket(rect_loop(i0, i1, j0, j1, top), depth);
        break;
      }
      case Type::kHole: {
        const double r = p.value / 2.0;
        const int n = s_.circle_segments;
        std::vector<int> rim_top = rect_loop(i0, i1, j0, j1, top);
        std::vector<int> ring_top = add_ring(center, r, n, T);
        annulus(rim_top, ring_top, center, /*face_up=*/true);
        std::vector<int> rim_bot = rect_loop(
            i0, i1, j0, j1, [&](int i, int j) { return bot_id(i, j); });
        std::vector<int> ring_bot = add_ring(center, r, n, 0.0);
        annulus(rim_bot, ring_bot, center, /*face_up=*/false);
        for (int k = 0; k < n; ++k) {  // bore wall faces the hole axis
          int k1 = (k + 1) % n;
          quad(ring_top[k], ring_top[k1], ring_bot[k1], ring_bot[k]);
        }
        break;
      }
      case Type::kPin: {
        const double r = p.value / 2.0;
        const int n = s_.circle_segments;
        std::vector<int> rim = rect_loop(i0, i1, j0, j1, top);
        std::vector<int> base = add_ring(center, r, n, T);
        annulus(rim, base, center, /*face_up=*/true);
        std::vector<int> cap = add_ring(center, r, n, T + s_.pin_height);
        for (int k = 0; k < n; ++k) {
          int k1 = (k + 1) % n;
          quad(base[k], base[k1], cap[k1], cap[k]);
        }
        int c = add_vertex({center.x, center.y, T + s_.pin_height});
        for (int k = 0; k < n; ++k) tri(c, cap[k], cap[(k + 1) % n]);
        break;
      }
      case Type::kCircularWall: {
        const double t = p.value;
        const double r_out = s_.circular_wall_diameter / 2.0 + t / 2.0;
        const double r_in = s_.circular_wall_diameter / 2.0 - t / 2.0;
        const double h = s_.circular_wall_height;
        const int n = s_.circle_segments;
        std::vector<int> rim = rect_loop(i0, i1, j0, j1, top);
        std::vector<int> out_base = add_ring(center, r_out, n, T);
        annulus(rim, out_base, center, /*face_up=*/true);
        std::vector<int> out_top = add_ring(center, r_out, n, T + h);
        std::vector<int> in_top = add_ring(center, r_in, n, T + h);
        std::vector<int> in_base = add_ring(center, r_in, n, T);
        for (int k = 0; k < n; ++k) {
          int k1 = (k + 1) % n;
          quad(out_base[k], out_base[k1], out_top[k1], out_top[k]);
          quad(in_top[k], in_top[k1], in_base[k1], in_base[k]);
        }
        annulus(out_top, in_top, {center.x, center.y, T + h}, /*face_up=*/true);
        int c = add_vertex(center);  // plate floor inside the tube
        for (int k = 0; k < n; ++k) tri(c, in_base[k], in_base[(k + 1) % n]);
        break;
      }
      case Type::kDome: {
        const double r = p.value;
        const int n = s_.dome_slices;
        std::vector<int> rim = rect_loop(i0, i1, j0, j1, top);
        std::vector<int> equator = add_ring(center, r, n, T);
        annulus(rim, equator, center, /*face_up=*/true);
        std::vector<int> below = equator;
        for (int m = 1; m < s_.dome_stacks; ++m) {
          double theta = (kPi / 2.0) * (1.0 - static_cast<double>(m) / s_.dome_stacks);
          std::vector<int> ring =
              add_ring(center, r * std::sin(theta), n, T + r * std::cos(theta));
          for (int k = 0; k < n; ++k) {
            int k1 = (k + 1) % n;
            quad(below[k], below[k1], ring[k1], ring[k]);
          }
          below = ring;
        }
        int pole = add_vertex({center.x, center.y, T + r});
        for (int k = 0; k < n; ++k) tri(pole, below[k], below[(k + 1) % n]);
        break;
      }
      case Type::kBridge:
        emit_bridge(p);
        break;
    }
  }

  void emit_bridge(const Placed& p) {
    const double T = s_.plate_thickness;
    const double hb = s_.bridge_leg_height;
    const double tb = p.value;  // beam thickness
    const double X[4] = {p.x0, p.x0 + s_.bridge_leg_width,
                         p.x1 - s_.bridge_leg_width, p.x1};
    const int ix[4] = {xi(X[0]), xi(X[1]), xi(X[2]), xi(X[3])};
    const int j0 = yi(p.y0), j1 = yi(p.y1);

    // Shared verticals at the four columns, one per y-break in [j0, j1].
    auto grid = [&](double z) {
      std::vector<std::vector<int>> m(4);
      for (int c = 0; c < 4; ++c) {
        for (int j = j0; j <= j1; ++j) {
          m[c].push_back(add_vertex({X[c], ys_[j], z}));
        }
      }
      return m;
    };
    std::vector<std::vector<int>> mid = grid(T + hb);
    std::vector<std::vector<int>> topv = grid(T + hb + tb);
    auto jj = [&](int j) { return j - j0; };

    // Leg walls from the plate rims up to the mid level. The rim loops carry
    // every lattice station, and each station maps onto a mid-level vertex.
    for (int leg = 0; leg < 2; ++leg) {
      int a = leg == 0 ? ix[0] : ix[2];
      int b = leg == 0 ? ix[1] : ix[3];
      std::vector<int> rim =
          rect_loop(a, b, j0, j1, [&](int i, int j) { return top_id(i, j); });
      auto lift = [&](int i, int j) {
        int c = i == ix[0] ? 0 : i == ix[1] ? 1 : i == ix[2] ? 2 : 3;
        return mid[c][jj(j)];
      };
      // Reconstruct each rim station's (i, j) from its position in the walk.
      std::vector<std::pair<int, int>> stations;
      for (int i = a; i < b; ++i) stations.push_back({i, j0});
      for (int j = j0; j < j1; ++j) stations.push_back({b, j});
      for (int i = b; i > a; --i) stations.push_back({i, j1});
      for (int j = j1; j > j0; --j) stations.push_back({a, j});
      const int nloop = static_cast<int>(rim.size());
      for (int k = 0; k < nloop; ++k) {
        int k1 = (k + 1) % nloop;
        quad(rim[k], rim[k1], lift(stations[k1].first, stations[k1].second),
             lift(stations[k].first, stations[k].second));
      }
    }

    for (int j = j0; j < j1; ++j) {
      int u = jj(j), v = jj(j + 1);
      // Beam underside between the legs, facing down.
      quad(mid[1][u], mid[1][v], mid[2][v], mid[2][u]);
      // Outer wall upper bands.
      quad(mid[0][v], mid[0][u], topv[0][u], topv[0][v]);
      quad(mid[3][u], mid[3][v], topv[3][v], topv[3][u]);
      // Beam top, three strips sharing the column verticals.
      for (int c = 0; c < 3; ++c) {
        quad(topv[c][u], topv[c + 1][u], topv[c + 1][v], topv[c][v]);
      }
    }
    // Beam end caps above the legs' front/back walls.
    for (int c = 0; c < 3; ++c) {
      quad(mid[c][jj(j0)], mid[c + 1][jj(j0)], topv[c + 1][jj(j0)],
           topv[c][jj(j0)]);
      quad(mid[c + 1][jj(j1)], mid[c][jj(j1)], topv[c][jj(j1)],
           topv[c + 1][jj(j1)]);
    }
  }

  // ---- plate ------------------------------------------------------------

  void emit_plate() {
    const int nx = static_cast<int>(xs_.size());
    const int ny = static_cast<int>(ys_.size());
    for (int i = 0; i + 1 < nx; ++i) {
      for (int j = 0; j + 1 < ny; ++j) {
        if (!skip_top_[cell(i, j)]) {
          quad(top_id(i, j), top_id(i + 1, j), top_id(i + 1, j + 1),
               top_id(i, j + 1));
        }
        if (!skip_bottom_[cell(i, j)]) {
          quad(bot_id(i, j), bot_id(i, j + 1), bot_id(i + 1, j + 1),
               bot_id(i + 1, j));
        }
      }
    }
    // Perimeter wall, counter-clockwise seen from above.
    std::vector<std::pair<int, int>> loop;
    for (int i = 0; i + 1 < nx; ++i) loop.push_back({i, 0});
    for (int j = 0; j + 1 < ny; ++j) loop.push_back({nx - 1, j});
    for (int i = nx - 1; i > 0; --i) loop.push_back({i, ny - 1});
    for (int j = ny - 1; j > 0; --j) loop.push_back({0, j});
    const int n = static_cast<int>(loop.size());
    for (int k = 0; k < n; ++k) {
      auto [i0, j0] = loop[k];
      auto [i1, j1] = loop[(k + 1) % n];
      quad(bot_id(i0, j0), bot_id(i1, j1), top_id(i1, j1), top_id(i0, j0));
    }
  }

  void finalize() {
    if (static_cast<std::int64_t>(out_.mesh.triangles.size()) >
        s_.triangle_cap) {
      throw std::invalid_argument(
          "benchmark would produce " +
          std::to_string(out_.mesh.triangles.size()) +
          " triangles, over the cap");
    }
    out_.mesh.name = "benchmark_" + s_.name;
    out_.manifest.source = "generated:" + s_.name;
    for (const Placed& p : placed_) {
      if (!p.in_manifest) continue;
      FeatureInstance f;
      f.kind = p.kind;
      f.d = p.value;
      f.label = p.label;
      out_.manifest.features.push_back(f);
    }
    // The plate is its own as-designed reference: the design is polyhedral.
    out_.analytic_area_mm2 = surface_area(out_.mesh);
    out_.analytic_volume_mm3 = signed_volume_unchecked(out_.mesh);
    out_.manifest.reference_area_mm2 = out_.analytic_area_mm2;
    out_.manifest.reference_volume_mm3 = out_.analytic_volume_mm3;
    validate_manifest(out_.manifest);
  }

  const BenchmarkSpec& s_;
  GeneratedModel out_;
  std::vector<Placed> placed_;
  std::vector<double> xs_, ys_;
  std::vector<std::uint8_t> skip_top_, skip_bottom_;
  std::unordered_map<std::int64_t, int> top_ids_, bot_ids_;
  double cursor_ = 0.0;
};

}  // namespace detail

/** Builds a benchmark plate and its feature manifest. */
inline GeneratedModel gen_benchmark(const BenchmarkSpec& spec) {
  return detail::PlateBuilder(spec).build();
}

/** Ladder presets modeled on the three common printability test plates:
 *  b1 exercises fine positive/negative detail (thin walls, holes, bridges,
 *  reliefs), b2 unsupported geometry (free walls, overhang angles), b3 a
 *  sparse plate with two hemispherical domes for curvature work. */
inline BenchmarkSpec benchmark_preset(const std::string& name) {
  BenchmarkSpec s;
  s.name = name;
  if (name == "b1") {
    s.plate_x = 280;
    s.plate_y = 30;
    s.plate_thickness = 6;
    s.supported_wall_thicknesses = {0.3, 0.4, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5};
    s.circular_wall_thickness = 1.0;
    s.hole_diameters = {0.2, 0.4, 0.6, 0.8, 1.0, 1.4, 2.0};
    s.bridge_thicknesses = {0.3, 0.5, 0.8, 1.2, 1.6, 2.0};
    s.emboss_sizes = {0.5, 0.75, 1.0};
    s.engrave_sizes = {0.5, 0.75, 1.0};
  } else if (name == "b2") {
    s.plate_x = 150;
    s.plate_y = 30;
    s.plate_thickness = 6;
    s.unsupported_wall_thicknesses = {0.3, 0.7, 1.3, 2.0};
    s.overhang_angles_deg = {10, 20, 30, 40, 50};
    s.supported_wall_thicknesses = {1.0};
    s.engrave_sizes = {1.0};
    s.pin_diameters = {1.0};
  } else if (name == "b3") {
    s.plate_x = 110;
    s.plate_y = 40;
    s.plate_thickness = 8;
    s.supported_wall_thicknesses = {1.0};
    s.emboss_sizes = {1.0};
    s.engrave_sizes = {1.0};
    s.dome_radii = {6.0, 10.0};
  } else {
    throw std::invalid_argument("unknown benchmark preset: '" + name +
                                "' (expected b1, b2 or b3)");
  }
  return s;
}

}  // namespace printscore
