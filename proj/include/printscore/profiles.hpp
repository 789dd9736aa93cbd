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

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "printscore/features.hpp"

namespace printscore {

// ---------------------------------------------------------------------------
// Star ratings
//
// Coarse per-technology quality grades for the global print characteristics.
// Each grade maps to the probability that the characteristic fails on a
// geometrically perfect model: more stars, lower failure probability.
// ---------------------------------------------------------------------------

enum class StarRating {
  kOneStar = 1,
  kTwoStars = 2,
  kThreeStars = 3,
};

inline double star_probability(StarRating rating) {
  switch (rating) {
    case StarRating::kOneStar:
      return 0.05;
    case StarRating::kTwoStars:
      return 0.03;
    case StarRating::kThreeStars:
      return 0.01;
  }
  throw std::invalid_argument("unknown star rating");
}

inline std::string star_name(StarRating rating) {
  return std::string(static_cast<std::size_t>(rating), '*');
}

inline StarRating parse_star(const std::string& text) {
  if (text == "*") return StarRating::kOneStar;
  if (text == "**") return StarRating::kTwoStars;
  if (text == "***") return StarRating::kThreeStars;
  throw std::invalid_argument("invalid star rating \"" + text +
                              "\" (expected \"*\", \"**\", or \"***\")");
}

// ---------------------------------------------------------------------------
// Global print characteristics
//
// Whole-model quality aspects assessed for every print regardless of local
// geometry. Support construction is special: its defect score is never
// scaled by the tessellation quality ratio, since support generation depends
// on the printed shape rather than on how faithfully the mesh approximates
// the design surface.
// ---------------------------------------------------------------------------

enum class GlobalCharacteristic {
  kAccuracy = 0,
  kSurfaceTexture = 1,
  kAbnormalities = 2,
  kSupportConstruction = 3,
};

inline constexpr std::array<GlobalCharacteristic, 4> kAllGlobalCharacteristics = {
    GlobalCharacteristic::kAccuracy,
    GlobalCharacteristic::kSurfaceTexture,
    GlobalCharacteristic::kAbnormalities,
    GlobalCharacteristic::kSupportConstruction,
};

inline std::string characteristic_name(GlobalCharacteristic c) {
  switch (c) {
    case GlobalCharacteristic::kAccuracy:
      return "accuracy";
    case GlobalCharacteristic::kSurfaceTexture:
      return "surface_texture";
    case GlobalCharacteristic::kAbnormalities:
      return "abnormalities";
    case GlobalCharacteristic::kSupportConstruction:
      return "support_construction";
  }
  throw std::invalid_argument("unknown global characteristic");
}

inline GlobalCharacteristic parse_characteristic(const std::string& name) {
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    if (characteristic_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown global characteristic \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// Technology profiles
//
// A technology profile describes one printing process: the baseline failure
// probability of each global characteristic on a perfect model, and the
// printable-dimension threshold for each local feature kind. Thresholds are
// millimetres for linear kinds and degrees for angular kinds (overhang,
// support_region). A threshold of zero is meaningful for angular kinds: it
// marks a process that needs no support at any overhang angle.
// ---------------------------------------------------------------------------

struct TechnologyProfile {
  std::string name;
  // Indexed by GlobalCharacteristic; probability that the characteristic
  // fails even on a perfectly tessellated model.
  std::array<double, 4> ds_perfect{};
  std::map<FeatureKind, double> thresholds;
  // Scale (degrees per logistic unit) applied to angular feature kinds so a
  // few degrees of margin behaves like a fraction of a millimetre does for
  // linear kinds.
  double angle_steepness_deg = 5.0;
  // Free-form note on the dimensional accuracy class of the process.
  std::string accuracy_note;
};

inline void validate_technology_profile(const TechnologyProfile& profile) {
  if (profile.name.empty()) {
    throw std::invalid_argument("technology profile has an empty name");
  }
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    const double ds = profile.ds_perfect[static_cast<std::size_t>(c)];
    if (!std::isfinite(ds) || ds < 0.0 || ds > 1.0) {
      throw std::invalid_argument("technology \"" + profile.name +
                                  "\": ds_perfect for " + characteristic_name(c) +
                                  " must lie in [0, 1]");
    }
  }
  for (const auto& [kind, threshold] : profile.thresholds) {
    if (!std::isfinite(threshold) || threshold < 0.0) {
      throw std::invalid_argument("technology \"" + profile.name +
                                  "\": threshold for " + kind_name(kind) +
                                  " must be finite and non-negative");
    }
  }
  if (!std::isfinite(profile.angle_steepness_deg) ||
      profile.angle_steepness_deg <= 0.0) {
    throw std::invalid_argument("technology \"" + profile.name +
                                "\": angle_steepness_deg must be positive");
  }
}

// ---------------------------------------------------------------------------
// Application profiles
//
// An application profile describes what the print is for: how much each
// global characteristic matters (k, per characteristic) and how significant
// a failed local feature of each kind would be (s, per kind). Both act as
// probability scale factors, so k lies in [0, 1] and s in (0, 1].
// ---------------------------------------------------------------------------

struct ApplicationProfile {
  std::string name;
  // Indexed by GlobalCharacteristic.
  std::array<double, 4> k{};
  std::map<FeatureKind, double> significance;
};

inline void validate_application_profile(const ApplicationProfile& profile) {
  if (profile.name.empty()) {
    throw std::invalid_argument("application profile has an empty name");
  }
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    const double k = profile.k[static_cast<std::size_t>(c)];
    if (!std::isfinite(k) || k < 0.0 || k > 1.0) {
      throw std::invalid_argument("application \"" + profile.name +
                                  "\": k for " + characteristic_name(c) +
                                  " must lie in [0, 1]");
    }
  }
  for (const auto& [kind, s] : profile.significance) {
    if (!std::isfinite(s) || s <= 0.0 || s > 1.0) {
      throw std::invalid_argument("application \"" + profile.name +
                                  "\": significance for " +
                                  kind_name(kind) +
                                  " must lie in (0, 1]");
    }
  }
}

// ---------------------------------------------------------------------------
// Built-in profiles
//
// The numeric tables below are calibration data: the star grades encode the
// relative strengths of the three process families, and the feature
// thresholds follow widely used design-for-printability guidelines (minimum
// wall/pin/hole sizes, 45-degree overhang rule for processes that need
// support, no support needed in a powder bed).
// ---------------------------------------------------------------------------

inline TechnologyProfile fdm_profile() {
  TechnologyProfile p;
  p.name = "fdm";
  p.ds_perfect = {
      star_probability(StarRating::kTwoStars),   // accuracy
      star_probability(StarRating::kOneStar),    // surface_texture
      star_probability(StarRating::kOneStar),    // abnormalities
      star_probability(StarRating::kTwoStars),   // support_construction
  };
  p.thresholds = {
      {FeatureKind::kSupportedWall, 0.8},
      {FeatureKind::kUnsupportedWall, 0.8},
      {FeatureKind::kThroughHole, 2.0},
      {FeatureKind::kPin, 3.0},
      {FeatureKind::kOverhang, 45.0},
      {FeatureKind::kBridge, 2.0},
      {FeatureKind::kEmbossedDetail, 0.5},
      {FeatureKind::kEngravedDetail, 0.5},
      {FeatureKind::kBooleanOverlap, 0.2},
      {FeatureKind::kAssemblyClearance, 0.5},
      {FeatureKind::kSupportRegion, 45.0},
  };
  p.accuracy_note = "dimensional accuracy 0.2 mm class (0.4 mm nozzle)";
  return p;
}

inline TechnologyProfile binder_jetting_profile() {
  TechnologyProfile p;
  p.name = "binder_jetting";
  p.ds_perfect = {
      star_probability(StarRating::kTwoStars),    // accuracy
      star_probability(StarRating::kTwoStars),    // surface_texture
      star_probability(StarRating::kTwoStars),    // abnormalities
      star_probability(StarRating::kThreeStars),  // support_construction
  };
  p.thresholds = {
      {FeatureKind::kSupportedWall, 2.0},
      {FeatureKind::kUnsupportedWall, 2.0},
      {FeatureKind::kThroughHole, 1.5},
      {FeatureKind::kPin, 2.0},
      {FeatureKind::kOverhang, 0.0},
      {FeatureKind::kBridge, 0.5},
      {FeatureKind::kEmbossedDetail, 0.4},
      {FeatureKind::kEngravedDetail, 0.4},
      {FeatureKind::kBooleanOverlap, 0.1},
      {FeatureKind::kAssemblyClearance, 0.4},
      {FeatureKind::kSupportRegion, 0.0},
  };
  p.accuracy_note = "dimensional accuracy +-0.1 mm class (powder bed)";
  return p;
}

inline TechnologyProfile material_jetting_profile() {
  TechnologyProfile p;
  p.name = "material_jetting";
  p.ds_perfect = {
      star_probability(StarRating::kThreeStars),  // accuracy
      star_probability(StarRating::kThreeStars),  // surface_texture
      star_probability(StarRating::kThreeStars),  // abnormalities
      star_probability(StarRating::kTwoStars),    // support_construction
  };
  p.thresholds = {
      {FeatureKind::kSupportedWall, 0.6},
      {FeatureKind::kUnsupportedWall, 0.6},
      {FeatureKind::kThroughHole, 0.5},
      {FeatureKind::kPin, 0.8},
      {FeatureKind::kOverhang, 45.0},
      {FeatureKind::kBridge, 0.8},
      {FeatureKind::kEmbossedDetail, 0.3},
      {FeatureKind::kEngravedDetail, 0.3},
      {FeatureKind::kBooleanOverlap, 0.1},
      {FeatureKind::kAssemblyClearance, 0.2},
      {FeatureKind::kSupportRegion, 45.0},
  };
  p.accuracy_note = "dimensional accuracy 0.05 mm class (photopolymer jets)";
  return p;
}

inline ApplicationProfile general_application() {
  ApplicationProfile p;
  p.name = "general";
  p.k = {0.1, 0.1, 0.1, 0.1};
  p.significance = {
      {FeatureKind::kSupportedWall, 0.6},
      {FeatureKind::kUnsupportedWall, 0.8},
      {FeatureKind::kThroughHole, 0.5},
      {FeatureKind::kPin, 0.6},
      {FeatureKind::kOverhang, 0.5},
      {FeatureKind::kBridge, 0.5},
      {FeatureKind::kEmbossedDetail, 0.3},
      {FeatureKind::kEngravedDetail, 0.3},
      {FeatureKind::kBooleanOverlap, 0.4},
      {FeatureKind::kAssemblyClearance, 0.5},
      {FeatureKind::kSupportRegion, 0.4},
  };
  return p;
}

inline ApplicationProfile artistic_application() {
  ApplicationProfile p;
  p.name = "artistic";
  p.k = {0.5, 0.5, 0.5, 0.5};
  p.significance = {
      {FeatureKind::kSupportedWall, 0.7},
      {FeatureKind::kUnsupportedWall, 0.9},
      {FeatureKind::kThroughHole, 0.4},
      {FeatureKind::kPin, 0.7},
      {FeatureKind::kOverhang, 0.7},
      {FeatureKind::kBridge, 0.6},
      {FeatureKind::kEmbossedDetail, 0.6},
      {FeatureKind::kEngravedDetail, 0.6},
      {FeatureKind::kBooleanOverlap, 0.4},
      {FeatureKind::kAssemblyClearance, 0.3},
      {FeatureKind::kSupportRegion, 0.7},
  };
  return p;
}

inline std::vector<std::string> builtin_technology_names() {
  return {"binder_jetting", "fdm", "material_jetting"};
}

inline std::vector<std::string> builtin_application_names() {
  return {"artistic", "general"};
}

// ---------------------------------------------------------------------------
// JSON serialization
//
// Profiles serialize to a versioned, self-describing object. Technology
// files may specify the global characteristics either as exact
// probabilities ("ds_perfect") or as star grades ("stars"); when both are
// present the probabilities win. Writers always emit probabilities.
// ---------------------------------------------------------------------------

inline constexpr int kProfileSchemaVersion = 1;

inline nlohmann::json technology_profile_to_json(const TechnologyProfile& profile) {
  validate_technology_profile(profile);
  nlohmann::json j;
  j["schema_version"] = kProfileSchemaVersion;
  j["type"] = "technology";
  j["name"] = profile.name;
  nlohmann::json ds = nlohmann::json::object();
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    ds[characteristic_name(c)] = profile.ds_perfect[static_cast<std::size_t>(c)];
  }
  j["ds_perfect"] = ds;
  nlohmann::json thresholds = nlohmann::json::object();
  for (const auto& [kind, value] : profile.thresholds) {
    thresholds[kind_name(kind)] = value;
  }
  j["thresholds"] = thresholds;
  j["angle_steepness_deg"] = profile.angle_steepness_deg;
  if (!profile.accuracy_note.empty()) {
    j["accuracy_note"] = profile.accuracy_note;
  }
  return j;
}

namespace detail {

inline void check_profile_envelope(const nlohmann::json& j,
                                   const std::string& expected_type) {
  if (!j.is_object()) {
    throw std::invalid_argument("profile JSON must be an object");
  }
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kProfileSchemaVersion) {
    throw std::invalid_argument("profile JSON must declare schema_version " +
                                std::to_string(kProfileSchemaVersion));
  }
  if (!j.contains("type") || !j["type"].is_string() ||
      j["type"].get<std::string>() != expected_type) {
    throw std::invalid_argument("profile JSON must declare type \"" +
                                expected_type + "\"");
  }
  if (!j.contains("name") || !j["name"].is_string()) {
    throw std::invalid_argument("profile JSON must declare a string name");
  }
}

inline double json_number(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) {
    throw std::invalid_argument(context + " must be a number");
  }
  return j.get<double>();
}

}  // namespace detail

inline TechnologyProfile technology_profile_from_json(const nlohmann::json& j) {
  detail::check_profile_envelope(j, "technology");
  TechnologyProfile profile;
  profile.name = j["name"].get<std::string>();
  bool have_ds = false;
  if (j.contains("ds_perfect")) {
    const auto& ds = j["ds_perfect"];
    if (!ds.is_object()) {
      throw std::invalid_argument("ds_perfect must be an object");
    }
    for (const auto& [key, value] : ds.items()) {
      const GlobalCharacteristic c = parse_characteristic(key);
      profile.ds_perfect[static_cast<std::size_t>(c)] =
          detail::json_number(value, "ds_perfect." + key);
    }
    if (ds.size() != kAllGlobalCharacteristics.size()) {
      throw std::invalid_argument("ds_perfect must list all four characteristics");
    }
    have_ds = true;
  }
  if (!have_ds) {
    if (!j.contains("stars") || !j["stars"].is_object()) {
      throw std::invalid_argument(
          "technology profile needs either ds_perfect or stars");
    }
    const auto& stars = j["stars"];
    for (const auto& [key, value] : stars.items()) {
      const GlobalCharacteristic c = parse_characteristic(key);
      if (!value.is_string()) {
        throw std::invalid_argument("stars." + key + " must be a string");
      }
      profile.ds_perfect[static_cast<std::size_t>(c)] =
          star_probability(parse_star(value.get<std::string>()));
    }
    if (stars.size() != kAllGlobalCharacteristics.size()) {
      throw std::invalid_argument("stars must list all four characteristics");
    }
  }
  if (!j.contains("thresholds") || !j["thresholds"].is_object()) {
    throw std::invalid_argument("technology profile needs a thresholds object");
  }
  for (const auto& [key, value] : j["thresholds"].items()) {
    profile.thresholds[parse_feature_kind(key)] =
        detail::json_number(value, "thresholds." + key);
  }
  if (j.contains("angle_steepness_deg")) {
    profile.angle_steepness_deg =
        detail::json_number(j["angle_steepness_deg"], "angle_steepness_deg");
  }
  if (j.contains("accuracy_note")) {
    if (!j["accuracy_note"].is_string()) {
      throw std::invalid_argument("accuracy_note must be a string");
    }
    profile.accuracy_note = j["accuracy_note"].get<std::string>();
  }
  validate_technology_profile(profile);
  return profile;
}

inline nlohmann::json application_profile_to_json(const ApplicationProfile& profile) {
  validate_application_profile(profile);
  nlohmann::json j;
  j["schema_version"] = kProfileSchemaVersion;
  j["type"] = "application";
  j["name"] = profile.name;
  nlohmann::json k = nlohmann::json::object();
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    k[characteristic_name(c)] = profile.k[static_cast<std::size_t>(c)];
  }
  j["k"] = k;
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [kind, value] : profile.significance) {
    s[kind_name(kind)] = value;
  }
  j["significance"] = s;
  return j;
}

inline ApplicationProfile application_profile_from_json(const nlohmann::json& j) {
  detail::check_profile_envelope(j, "application");
  ApplicationProfile profile;
  profile.name = j["name"].get<std::string>();
  if (!j.contains("k") || !j["k"].is_object()) {
    throw std::invalid_argument("application profile needs a k object");
  }
  for (const auto& [key, value] : j["k"].items()) {
    const GlobalCharacteristic c = parse_characteristic(key);
    profile.k[static_cast<std::size_t>(c)] = detail::json_number(value, "k." + key);
  }
  if (j["k"].size() != kAllGlobalCharacteristics.size()) {
    throw std::invalid_argument("k must list all four characteristics");
  }
  if (!j.contains("significance") || !j["significance"].is_object()) {
    throw std::invalid_argument("application profile needs a significance object");
  }
  for (const auto& [key, value] : j["significance"].items()) {
    profile.significance[parse_feature_kind(key)] =
        detail::json_number(value, "significance." + key);
  }
  validate_application_profile(profile);
  return profile;
}

// ---------------------------------------------------------------------------
// File loading and name resolution
//
// I/O failures and malformed JSON raise std::runtime_error (the file could
// not be used); semantic problems in well-formed JSON raise
// std::invalid_argument (the file is wrong). Name resolution checks, in
// order: a file named <name>.json inside $PRINTSCORE_PROFILE_DIR (when the
// variable is set), then the built-in profiles.
// ---------------------------------------------------------------------------

inline constexpr const char* kProfileDirEnvVar = "PRINTSCORE_PROFILE_DIR";

namespace detail {

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw std::runtime_error("cannot open file: " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " +
                             e.what());
  }
}

}  // namespace detail

inline TechnologyProfile load_technology_file(const std::filesystem::path& path) {
  return technology_profile_from_json(detail::load_json_file(path));
}

inline ApplicationProfile load_application_file(const std::filesystem::path& path) {
  return application_profile_from_json(detail::load_json_file(path));
}

namespace detail {

inline std::filesystem::path profile_dir_candidate(const std::string& name) {
  const char* dir = std::getenv(kProfileDirEnvVar);
  if (dir == nullptr || *dir == '\0') return {};
  return std::filesystem::path(dir) / (name + ".json");
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace detail

inline TechnologyProfile resolve_technology(const std::string& name) {
  const std::filesystem::path candidate = detail::profile_dir_candidate(name);
  if (!candidate.empty() && std::filesystem::exists(candidate)) {
    return load_technology_file(candidate);
  }
  if (name == "fdm") return fdm_profile();
  if (name == "binder_jetting") return binder_jetting_profile();
  if (name == "material_jetting") return material_jetting_profile();
  throw std::invalid_argument(
      "unknown technology \"" + name + "\" (available: " +
      detail::join_names(builtin_technology_names()) + "; or set $" +
      std::string(kProfileDirEnvVar) + " to a directory of profile files)");
}

inline ApplicationProfile resolve_application(const std::string& name) {
  const std::filesystem::path candidate = detail::profile_dir_candidate(name);
  if (!candidate.empty() && std::filesystem::exists(candidate)) {
    return load_application_file(candidate);
  }
  if (name == "general") return general_application();
  if (name == "artistic") return artistic_application();
  throw std::invalid_argument(
      "unknown application \"" + name + "\" (available: " +
      detail::join_names(builtin_application_names()) + "; or set $" +
      std::string(kProfileDirEnvVar) + " to a directory of profile files)");
}

}  // namespace printscore
