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
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace printscore {

/** Closed set of model features that printability scoring understands.
 *  Each feature carries a characteristic dimension d: millimeters for
 *  geometric kinds, degrees from horizontal for the angular kinds
 *  (overhang, support_region). */
enum class FeatureKind {
  kSupportedWall,
  kUnsupportedWall,
  kThroughHole,
  kPin,
  kOverhang,
  kBridge,
  kEmbossedDetail,
  kEngravedDetail,
  kBooleanOverlap,
  kAssemblyClearance,
  kSupportRegion,
};

inline constexpr FeatureKind kAllFeatureKinds[] = {
    FeatureKind::kSupportedWall,    FeatureKind::kUnsupportedWall,
    FeatureKind::kThroughHole,      FeatureKind::kPin,
    FeatureKind::kOverhang,         FeatureKind::kBridge,
    FeatureKind::kEmbossedDetail,   FeatureKind::kEngravedDetail,
    FeatureKind::kBooleanOverlap,   FeatureKind::kAssemblyClearance,
    FeatureKind::kSupportRegion,
};

inline const char* kind_name(FeatureKind k) {
  switch (k) {
    case FeatureKind::kSupportedWall: return "supported_wall";
    case FeatureKind::kUnsupportedWall: return "unsupported_wall";
    case FeatureKind::kThroughHole: return "through_hole";
    case FeatureKind::kPin: return "pin";
    case FeatureKind::kOverhang: return "overhang";
    case FeatureKind::kBridge: return "bridge";
    case FeatureKind::kEmbossedDetail: return "embossed_detail";
    case FeatureKind::kEngravedDetail: return "engraved_detail";
    case FeatureKind::kBooleanOverlap: return "boolean_overlap";
    case FeatureKind::kAssemblyClearance: return "assembly_clearance";
    case FeatureKind::kSupportRegion: return "support_region";
  }
  return "?";
}

/** Angular kinds measure d in degrees and compare against thresholds on an
 *  angular scale; everything else is millimeters. */
inline bool is_angular(FeatureKind k) {
  return k == FeatureKind::kOverhang || k == FeatureKind::kSupportRegion;
}

inline FeatureKind parse_feature_kind(const std::string& name) {
  for (FeatureKind k : kAllFeatureKinds) {
    if (name == kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown feature kind: '" + name + "'");
}

/** One scoreable feature occurrence. */
struct FeatureInstance {
  FeatureKind kind = FeatureKind::kSupportedWall;
  double d = 0.0;      // characteristic dimension (mm, or degrees if angular)
  std::string label;   // unique within a manifest
  // Fraction of the model surface needing support; required for
  // support_region, meaningless otherwise.
  std::optional<double> area_ratio;
  // Per-instance significance override; profile default applies when unset.
  std::optional<double> significance;
};

/** Feature inventory for one model, plus optional as-designed reference
 *  measures used for the surface-quality ratio. */
struct FeatureManifest {
  std::string source;  // provenance tag, e.g. "generated:b1" or "authored"
  std::vector<FeatureInstance> features;
  std::optional<double> reference_area_mm2;
  std::optional<double> reference_volume_mm3;
};

inline void validate_manifest(const FeatureManifest& m) {
  std::set<std::string> labels;
  for (const FeatureInstance& f : m.features) {
    if (!(std::isfinite(f.d)) || f.d <= 0.0) {
      throw std::invalid_argument("feature '" + f.label +
                                  "' has non-positive dimension");
    }
    if (f.label.empty()) {
      throw std::invalid_argument("feature with empty label");
    }
    if (!labels.insert(f.label).second) {
      throw std::invalid_argument("duplicate feature label: '" + f.label + "'");
    }
    if (f.kind == FeatureKind::kSupportRegion) {
      if (!f.area_ratio) {
        throw std::invalid_argument("support_region '" + f.label +
                                    "' lacks area_ratio");
      }
      if (!(*f.area_ratio >= 0.0 && *f.area_ratio <= 1.0)) {
        throw std::invalid_argument("support_region '" + f.label +
                                    "' area_ratio outside [0,1]");
      }
    } else if (f.area_ratio) {
      throw std::invalid_argument("feature '" + f.label +
                                  "' carries area_ratio but only "
                                  "support_region admits one");
    }
    if (f.significance &&
        !(*f.significance > 0.0 && *f.significance <= 1.0)) {
      throw std::invalid_argument("feature '" + f.label +
                                  "' significance outside (0,1]");
    }
  }
  if (m.reference_area_mm2 && !(*m.reference_area_mm2 > 0.0)) {
    throw std::invalid_argument("reference area must be positive");
  }
}

inline nlohmann::json manifest_to_json(const FeatureManifest& m) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["units"] = "mm";
  j["source"] = m.source;
  if (m.reference_area_mm2 || m.reference_volume_mm3) {
    nlohmann::json ref;
    if (m.reference_area_mm2) ref["area_mm2"] = *m.reference_area_mm2;
    if (m.reference_volume_mm3) ref["volume_mm3"] = *m.reference_volume_mm3;
    j["reference"] = ref;
  }
  j["features"] = nlohmann::json::array();
  for (const FeatureInstance& f : m.features) {
    nlohmann::json e;
    e["kind"] = kind_name(f.kind);
    e["d"] = f.d;
    e["label"] = f.label;
    if (f.area_ratio) e["area_ratio"] = *f.area_ratio;
    if (f.significance) e["significance_override"] = *f.significance;
    j["features"].push_back(e);
  }
  return j;
}

inline FeatureManifest manifest_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("manifest must be an object");
  if (!j.contains("schema_version") || j["schema_version"] != 1) {
    throw std::invalid_argument("manifest schema_version must be 1");
  }
  if (j.contains("units") && j["units"] != "mm") {
    throw std::invalid_argument("manifest units must be \"mm\"");
  }
  FeatureManifest m;
  m.source = j.value("source", std::string{});
  if (j.contains("reference")) {
    const auto& ref = j["reference"];
    if (ref.contains("area_mm2")) m.reference_area_mm2 = ref["area_mm2"].get<double>();
    if (ref.contains("volume_mm3"))
      m.reference_volume_mm3 = ref["volume_mm3"].get<double>();
  }
  if (!j.contains("features") || !j["features"].is_array()) {
    throw std::invalid_argument("manifest lacks a features array");
  }
  for (const auto& e : j["features"]) {
    FeatureInstance f;
    if (!e.contains("kind") || !e.contains("d") || !e.contains("label")) {
      throw std::invalid_argument(
          "manifest feature needs kind, d and label fields");
    }
    f.kind = parse_feature_kind(e["kind"].get<std::string>());
    f.d = e["d"].get<double>();
    f.label = e["label"].get<std::string>();
    if (e.contains("area_ratio")) f.area_ratio = e["area_ratio"].get<double>();
    if (e.contains("significance_override"))
      f.significance = e["significance_override"].get<double>();
    m.features.push_back(f);
  }
  validate_manifest(m);
  return m;
}

/** Reads and validates a manifest JSON file. */
inline FeatureManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest " + path + " is not valid JSON: " +
                             e.what());
  }
  try {
    return manifest_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("manifest " + path + ": " + e.what());
  }
}

inline void save_manifest(const FeatureManifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << manifest_to_json(m).dump(2) << "\n";
}

}  // namespace printscore
