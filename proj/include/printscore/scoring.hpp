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
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "printscore/features.hpp"
#include "printscore/profiles.hpp"

namespace printscore {

// ---------------------------------------------------------------------------
// Printability scoring
//
// The score treats a print as a sequence of independent Bernoulli events:
// four global characteristics that can each spoil the whole part, plus one
// event per annotated local feature. The model succeeds only if every event
// succeeds, so
//
//   P = (1 - P_G) * prod_f (1 - P_F(f))        score = 100 * P
//
// where P_G aggregates the global characteristics and each P_F comes from a
// logistic curve over the margin between the feature's critical dimension
// and the technology's printable threshold.
// ---------------------------------------------------------------------------

// Numerically stable logistic 1 / (1 + e^-x).
inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Defect probability of a global characteristic given the tessellation
// quality scale: a perfect mesh (quality_scale = 1) leaves the baseline
// probability unchanged; a coarse mesh inflates it toward 1.
inline double defect_score(double ds_perfect, double quality_scale) {
  return 1.0 - (1.0 - ds_perfect) * quality_scale;
}

// Failure probability of one local feature: logistic over the margin between
// the technology threshold w and the feature dimension d, scaled by the
// application significance. Angular kinds divide the margin by the
// technology's angle steepness so degrees and millimetres produce comparable
// slopes.
inline double feature_failure_probability(double dimension_d, double threshold_w,
                                          double significance_s, bool angular,
                                          double angle_steepness_deg) {
  double margin = threshold_w - dimension_d;
  if (angular) {
    margin /= angle_steepness_deg;
  }
  return logistic(margin) * significance_s;
}

struct CharacteristicRisk {
  GlobalCharacteristic characteristic = GlobalCharacteristic::kAccuracy;
  double defect_score = 0.0;  // DS after quality scaling
  double k = 0.0;             // application significance of the characteristic
  double survival = 1.0;      // 1 - defect_score * k
};

struct FeatureRisk {
  std::string label;
  FeatureKind kind = FeatureKind::kSupportedWall;
  double dimension = 0.0;
  double threshold = 0.0;
  double significance = 0.0;
  double failure_probability = 0.0;
};

struct ClassificationThresholds {
  double printable = 80.0;
  double risky = 30.0;
};

inline void validate_classification_thresholds(const ClassificationThresholds& t) {
  if (!std::isfinite(t.printable) || !std::isfinite(t.risky) ||
      t.risky < 0.0 || t.printable < t.risky || t.printable > 100.0) {
    throw std::invalid_argument(
        "classification thresholds must satisfy 0 <= risky <= printable <= 100");
  }
}

inline std::string classify_score(double score, const ClassificationThresholds& t) {
  if (score >= t.printable) return "printable";
  if (score >= t.risky) return "risky";
  return "unprintable";
}

struct PrintabilityReport {
  std::string technology;
  std::string application;
  double quality_scale = 1.0;              // value actually used (after clamping)
  std::string quality_scale_source;        // "user", "manifest", or "assumed"
  std::array<CharacteristicRisk, 4> characteristics{};
  double global_failure_probability = 0.0;  // P_G
  double global_success_probability = 1.0;  // 1 - P_G
  std::vector<FeatureRisk> features;
  double success_probability = 1.0;         // P
  double score = 100.0;                     // 100 * P
  std::string classification;
  std::vector<std::string> warnings;
};

struct ScoreInputs {
  double quality_scale = 1.0;
  std::string quality_scale_source = "assumed";
};

inline PrintabilityReport score_printability(
    const FeatureManifest& manifest, const TechnologyProfile& tech,
    const ApplicationProfile& app, const ScoreInputs& inputs = {},
    const ClassificationThresholds& classify = {}) {
  validate_manifest(manifest);
  validate_technology_profile(tech);
  validate_application_profile(app);
  validate_classification_thresholds(classify);
  if (!std::isfinite(inputs.quality_scale) || inputs.quality_scale <= 0.0) {
    throw std::invalid_argument("quality scale must be positive and finite");
  }

  PrintabilityReport report;
  report.technology = tech.name;
  report.application = app.name;
  report.quality_scale = inputs.quality_scale;
  report.quality_scale_source = inputs.quality_scale_source;
  if (report.quality_scale > 1.0) {
    // A mesh measured against its own as-designed area can land slightly
    // above 1 — STL stores float32 coordinates, so areas carry ~1e-8
    // relative noise. Only a materially inflated ratio deserves a warning.
    if (report.quality_scale > 1.0 + 1e-6) {
      report.warnings.push_back(
          "quality scale " + std::to_string(report.quality_scale) +
          " exceeds 1; clamped to 1 (measured area larger than reference)");
    }
    report.quality_scale = 1.0;
  }

  double global_survival = 1.0;
  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    const std::size_t i = static_cast<std::size_t>(c);
    // Support construction depends on the printed shape, not on how finely
    // the shape is tessellated, so it never sees the quality scale.
    const double qs = (c == GlobalCharacteristic::kSupportConstruction)
                          ? 1.0
                          : report.quality_scale;
    CharacteristicRisk& risk = report.characteristics[i];
    risk.characteristic = c;
    risk.defect_score = defect_score(tech.ds_perfect[i], qs);
    risk.k = app.k[i];
    risk.survival = 1.0 - risk.defect_score * risk.k;
    global_survival *= risk.survival;
  }
  report.global_success_probability = global_survival;
  report.global_failure_probability = 1.0 - global_survival;

  double p = global_survival;
  report.features.reserve(manifest.features.size());
  for (const FeatureInstance& feature : manifest.features) {
    const auto threshold_it = tech.thresholds.find(feature.kind);
    if (threshold_it == tech.thresholds.end()) {
      throw std::invalid_argument("technology \"" + tech.name +
                                  "\" has no threshold for feature kind \"" +
                                  kind_name(feature.kind) + "\"");
    }
    double significance = 0.0;
    if (feature.significance.has_value()) {
      significance = *feature.significance;
    } else {
      const auto s_it = app.significance.find(feature.kind);
      if (s_it == app.significance.end()) {
        throw std::invalid_argument("application \"" + app.name +
                                    "\" has no significance for feature kind \"" +
                                    kind_name(feature.kind) + "\"");
      }
      significance = s_it->second;
    }

    FeatureRisk risk;
    risk.label = feature.label;
    risk.kind = feature.kind;
    risk.dimension = feature.d;
    risk.threshold = threshold_it->second;
    risk.significance = significance;
    risk.failure_probability = feature_failure_probability(
        risk.dimension, risk.threshold, significance, is_angular(feature.kind),
        tech.angle_steepness_deg);
    // A support region only jeopardizes the fraction of the surface it
    // covers, so its failure probability scales with that fraction.
    if (feature.kind == FeatureKind::kSupportRegion) {
      risk.failure_probability *= feature.area_ratio.value();
    }
    p *= 1.0 - risk.failure_probability;
    report.features.push_back(std::move(risk));
  }

  report.success_probability = p;
  report.score = 100.0 * p;
  report.classification = classify_score(report.score, classify);
  return report;
}

// Scores the manifest against every given technology and returns the reports
// ordered best first; equal scores fall back to technology name order so the
// ranking is deterministic.
inline std::vector<PrintabilityReport> compare_technologies(
    const FeatureManifest& manifest,
    const std::vector<TechnologyProfile>& technologies,
    const ApplicationProfile& app, const ScoreInputs& inputs = {},
    const ClassificationThresholds& classify = {}) {
  if (technologies.empty()) {
    throw std::invalid_argument("technology comparison needs at least one profile");
  }
  std::vector<PrintabilityReport> reports;
  reports.reserve(technologies.size());
  for (const TechnologyProfile& tech : technologies) {
    reports.push_back(score_printability(manifest, tech, app, inputs, classify));
  }
  std::sort(reports.begin(), reports.end(),
            [](const PrintabilityReport& a, const PrintabilityReport& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.technology < b.technology;
            });
  return reports;
}

inline constexpr int kReportSchemaVersion = 1;

inline nlohmann::json report_to_json(const PrintabilityReport& report) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["technology"] = report.technology;
  j["application"] = report.application;
  j["quality_scale"] = report.quality_scale;
  j["quality_scale_source"] = report.quality_scale_source;
  nlohmann::json characteristics = nlohmann::json::array();
  for (const CharacteristicRisk& risk : report.characteristics) {
    characteristics.push_back({
        {"name", characteristic_name(risk.characteristic)},
        {"defect_score", risk.defect_score},
        {"k", risk.k},
        {"survival", risk.survival},
    });
  }
  j["global"] = {
      {"characteristics", characteristics},
      {"failure_probability", report.global_failure_probability},
      {"success_probability", report.global_success_probability},
  };
  nlohmann::json features = nlohmann::json::array();
  for (const FeatureRisk& risk : report.features) {
    features.push_back({
        {"label", risk.label},
        {"kind", kind_name(risk.kind)},
        {"dimension", risk.dimension},
        {"threshold", risk.threshold},
        {"significance", risk.significance},
        {"failure_probability", risk.failure_probability},
    });
  }
  j["features"] = features;
  j["success_probability"] = report.success_probability;
  j["score"] = report.score;
  j["classification"] = report.classification;
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace printscore
