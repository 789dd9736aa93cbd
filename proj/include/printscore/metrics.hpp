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
#include <stdexcept>
#include <string>
#include <vector>

#include "printscore/format.hpp"
#include "printscore/mesh.hpp"

namespace printscore {

/** Mesh complexity: the number of polygons in the tessellation, which for a
 *  triangle mesh is simply the triangle count. */
inline std::size_t mesh_complexity(const TriangleMesh& mesh) {
  return mesh.triangles.size();
}

/** Complexity of a general polygon mesh given the vertex count of every
 *  face: the triangle count after fan triangulation, sum of (v(p) - 2).
 *  Faces with fewer than three vertices are rejected. */
inline std::size_t polygon_mesh_complexity(
    const std::vector<std::size_t>& polygon_face_vertex_counts) {
  std::size_t total = 0;
  for (std::size_t v : polygon_face_vertex_counts) {
    if (v < 3) {
      throw std::invalid_argument(
          "polygon face needs at least 3 vertices, got " + std::to_string(v));
    }
    total += v - 2;
  }
  return total;
}

/** Surface-area fidelity of a tessellation relative to the smooth reference
 *  it approximates. A ratio of 1 means the mesh captures the reference
 *  surface exactly; inscribed tessellations of convex solids fall below 1. */
struct QualityRatio {
  double area_mesh = 0.0;       ///< Triangle mesh surface area, mm^2.
  double area_reference = 0.0;  ///< Reference (exact) surface area, mm^2.
  double qs = 0.0;              ///< area_mesh / area_reference.
};

inline QualityRatio quality_ratio(const TriangleMesh& mesh,
                                  double reference_area_mm2) {
  if (!(reference_area_mm2 > 0.0) || !std::isfinite(reference_area_mm2)) {
    throw std::invalid_argument("reference area must be positive, got " +
                                std::to_string(reference_area_mm2));
  }
  QualityRatio q;
  q.area_mesh = surface_area(mesh);
  q.area_reference = reference_area_mm2;
  q.qs = q.area_mesh / q.area_reference;
  return q;
}

/** Dimensional-accuracy ratio between a model volume and the volume of the
 *  fabricated artifact: v_model / v_artifact. */
inline double volume_ratio(double v_model, double v_artifact) {
  if (!(v_model > 0.0) || !std::isfinite(v_model)) {
    throw std::invalid_argument("model volume must be positive");
  }
  if (!(v_artifact > 0.0) || !std::isfinite(v_artifact)) {
    throw std::invalid_argument("artifact volume must be positive");
  }
  return v_model / v_artifact;
}

/** Uniform-width histogram with summary statistics of the sampled values. */
struct Histogram {
  std::vector<double> edges;        ///< bin_count + 1 strictly increasing.
  std::vector<std::size_t> counts;  ///< One count per bin.
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  std::size_t sample_count = 0;
};

/** Builds a histogram with uniform bins spanning [min, max] of the samples.
 *  A constant sample set gets a unit-wide span centered on the value so that
 *  the edges stay strictly increasing. */
inline Histogram make_histogram(const std::vector<double>& samples,
                                int bins = 64) {
  if (bins < 1) {
    throw std::invalid_argument("histogram needs at least 1 bin, got " +
                                std::to_string(bins));
  }
  if (samples.empty()) {
    throw std::invalid_argument("cannot build a histogram of zero samples");
  }
  for (double s : samples) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("histogram samples must be finite");
    }
  }

  Histogram h;
  h.sample_count = samples.size();
  auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  h.min = *lo_it;
  h.max = *hi_it;

  double sum = 0.0;
  for (double s : samples) sum += s;
  h.mean = sum / static_cast<double>(samples.size());

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  h.median = (n % 2 == 1) ? sorted[n / 2]
                          : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  double lo = h.min;
  double hi = h.max;
  if (lo == hi) {  // Degenerate span; widen symmetrically.
    lo -= 0.5;
    hi += 0.5;
  }
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  }
  h.edges.front() = lo;
  h.edges.back() = hi;

  h.counts.assign(static_cast<std::size_t>(bins), 0);
  double width = (hi - lo) / bins;
  for (double s : samples) {
    int bin = static_cast<int>((s - lo) / width);
    bin = std::clamp(bin, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

/** Serializes a histogram as CSV rows of bin_low,bin_high,count. */
inline std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += fmt_double(h.edges[i]);
    out += ',';
    out += fmt_double(h.edges[i + 1]);
    out += ',';
    out += std::to_string(h.counts[i]);
    out += '\n';
  }
  return out;
}

/** Estimates how many distinct modes (peaks) a sample distribution has.
 *
 *  The estimate is intentionally conservative so that measurement noise does
 *  not masquerade as structure:
 *   - samples are trimmed to their [1%, 99%] quantiles, discarding isolated
 *     extremes (e.g. curvature spikes along sharp edges);
 *   - a near-constant distribution (span below 10% of its magnitude) counts
 *     as a single mode regardless of in-span jitter — a sphere's curvature
 *     field spreads a few percent around 1/r yet is one mode;
 *   - the histogram is smoothed with a 3-bin moving average, and a local
 *     maximum only counts as a new mode if it reaches 10% of the tallest
 *     peak and is separated from the previous peak by a valley that drops
 *     below 60% of the smaller of the two peaks.
 */
inline int count_modes(const std::vector<double>& samples, int bins = 64) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot estimate modes of zero samples");
  }

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  std::size_t lo_idx = static_cast<std::size_t>(0.01 * static_cast<double>(n));
  std::size_t hi_idx = static_cast<std::size_t>(0.99 * static_cast<double>(n));
  if (hi_idx >= n) hi_idx = n - 1;
  if (lo_idx > hi_idx) lo_idx = hi_idx;
  std::vector<double> trimmed(sorted.begin() + static_cast<std::ptrdiff_t>(lo_idx),
                              sorted.begin() + static_cast<std::ptrdiff_t>(hi_idx) + 1);

  double lo = trimmed.front();
  double hi = trimmed.back();
  double scale = std::max({std::abs(lo), std::abs(hi), 1e-12});
  if (hi - lo <= 0.10 * scale) {
    return 1;  // Effectively constant.
  }

  Histogram h = make_histogram(trimmed, bins);
  std::size_t b = h.counts.size();
  std::vector<double> smooth(b, 0.0);
  for (std::size_t i = 0; i < b; ++i) {
    double acc = 0.0;
    int used = 0;
    for (int off = -1; off <= 1; ++off) {
      std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
      if (j >= 0 && j < static_cast<std::ptrdiff_t>(b)) {
        acc += static_cast<double>(h.counts[static_cast<std::size_t>(j)]);
        ++used;
      }
    }
    smooth[i] = acc / used;
  }

  double tallest = *std::max_element(smooth.begin(), smooth.end());
  if (tallest <= 0.0) return 1;
  double floor_height = 0.10 * tallest;

  // Walk the smoothed bins, collapsing plateaus, and accept a new peak only
  // when a sufficiently deep valley separates it from the previous one.
  int modes = 0;
  double prev_peak = 0.0;
  double valley = tallest;
  bool have_peak = false;
  for (std::size_t i = 0; i < b; ++i) {
    double v = smooth[i];
    bool rising_edge = (i == 0 || smooth[i - 1] < v);
    std::size_t j = i;
    while (j + 1 < b && smooth[j + 1] == v) ++j;  // Skip the plateau.
    bool falling_edge = (j + 1 == b || smooth[j + 1] < v);
    if (rising_edge && falling_edge && v >= floor_height) {
      if (!have_peak) {
        have_peak = true;
        modes = 1;
        prev_peak = v;
        valley = v;
      } else if (valley < 0.6 * std::min(prev_peak, v)) {
        ++modes;
        prev_peak = v;
        valley = v;
      } else if (v > prev_peak) {
        prev_peak = v;  // Same mode, taller summit.
      }
    }
    if (have_peak) valley = std::min(valley, v);
    i = j;
  }
  return std::max(modes, 1);
}

}  // namespace printscore
