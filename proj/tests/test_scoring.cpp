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

// Scoring model and profile tests. The numeric golden values were computed
// independently (closed-form evaluation of the probability products with
// analytic sphere/cylinder/torus areas) before this suite was written, and
// are frozen here so regressions in any term of the model surface as exact
// mismatches.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "printscore/features.hpp"
#include "printscore/metrics.hpp"
#include "printscore/primitives.hpp"
#include "printscore/profiles.hpp"
#include "printscore/scoring.hpp"
#include "helpers.hpp"

using Catch::Approx;
using namespace printscore;
using namespace test_helpers;

namespace {

constexpr double kTestPi = 3.14159265358979323846;

FeatureManifest empty_manifest() {
  FeatureManifest m;
  m.source = "authored";
  return m;
}

FeatureInstance feature(FeatureKind kind, const std::string& label, double d) {
  FeatureInstance f;
  f.kind = kind;
  f.label = label;
  f.d = d;
  return f;
}

ApplicationProfile uniform_k_application(double k) {
  ApplicationProfile app = general_application();
  app.k = {k, k, k, k};
  return app;
}

double sphere_quality_scale(int stacks) {
  PrimitiveSpec spec;
  spec.kind = PrimitiveKind::kUvSphere;
  spec.stacks = stacks;
  const GeneratedModel model = gen_primitive(spec);
  return quality_ratio(model.mesh, model.analytic_area_mm2).qs;
}

// Sets an environment variable for the lifetime of one scope.
struct EnvVarGuard {
  std::string name;
  std::string previous;
  bool had_previous = false;

  EnvVarGuard(const std::string& var, const std::string& value) : name(var) {
    const char* old = std::getenv(var.c_str());
    if (old != nullptr) {
      had_previous = true;
      previous = old;
    }
    ::setenv(var.c_str(), value.c_str(), 1);
  }
  ~EnvVarGuard() {
    if (had_previous) {
      ::setenv(name.c_str(), previous.c_str(), 1);
    } else {
      ::unsetenv(name.c_str());
    }
  }
};

}  // namespace

TEST_CASE("star ratings map to failure probabilities", "[profiles]") {
  CHECK(star_probability(StarRating::kOneStar) == 0.05);
  CHECK(star_probability(StarRating::kTwoStars) == 0.03);
  CHECK(star_probability(StarRating::kThreeStars) == 0.01);
  CHECK(star_name(StarRating::kOneStar) == "*");
  CHECK(star_name(StarRating::kThreeStars) == "***");
  CHECK(parse_star("**") == StarRating::kTwoStars);
  CHECK_THROWS_AS(parse_star("****"), std::invalid_argument);
  CHECK_THROWS_AS(parse_star(""), std::invalid_argument);

  for (GlobalCharacteristic c : kAllGlobalCharacteristics) {
    CHECK(parse_characteristic(characteristic_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_characteristic("colour"), std::invalid_argument);
}

TEST_CASE("built-in profiles validate and expose the calibration",
          "[profiles]") {
  for (const TechnologyProfile& tech :
       {fdm_profile(), binder_jetting_profile(), material_jetting_profile()}) {
    CHECK_NOTHROW(validate_technology_profile(tech));
    // Every feature kind has a threshold, so any manifest can be scored.
    for (FeatureKind kind : kAllFeatureKinds) {
      CHECK(tech.thresholds.count(kind) == 1);
    }
  }
  for (const ApplicationProfile& app :
       {general_application(), artistic_application()}) {
    CHECK_NOTHROW(validate_application_profile(app));
    for (FeatureKind kind : kAllFeatureKinds) {
      CHECK(app.significance.count(kind) == 1);
    }
  }

  const TechnologyProfile fdm = fdm_profile();
  const TechnologyProfile binder = binder_jetting_profile();
  const TechnologyProfile material = material_jetting_profile();
  // Spot-check the calibration values the rest of this suite relies on.
  CHECK(fdm.thresholds.at(FeatureKind::kUnsupportedWall) == 0.8);
  CHECK(binder.thresholds.at(FeatureKind::kUnsupportedWall) == 2.0);
  CHECK(material.thresholds.at(FeatureKind::kUnsupportedWall) == 0.6);
  CHECK(fdm.thresholds.at(FeatureKind::kThroughHole) == 2.0);
  CHECK(binder.thresholds.at(FeatureKind::kThroughHole) == 1.5);
  CHECK(material.thresholds.at(FeatureKind::kThroughHole) == 0.5);
  CHECK(fdm.thresholds.at(FeatureKind::kOverhang) == 45.0);
  CHECK(binder.thresholds.at(FeatureKind::kOverhang) == 0.0);
  CHECK(material.thresholds.at(FeatureKind::kOverhang) == 45.0);
  CHECK(fdm.ds_perfect[0] == 0.03);
  CHECK(fdm.ds_perfect[1] == 0.05);
  CHECK(binder.ds_perfect[3] == 0.01);
  CHECK(material.ds_perfect[0] == 0.01);
  CHECK(general_application().k == std::array<double, 4>{0.1, 0.1, 0.1, 0.1});
  CHECK(artistic_application().k == std::array<double, 4>{0.5, 0.5, 0.5, 0.5});
}

TEST_CASE("defect score scales the perfect-model probability", "[scoring]") {
  CHECK(defect_score(0.03, 1.0) == Approx(0.03).margin(1e-15));
  CHECK(defect_score(0.05, 0.9) == Approx(0.145).margin(1e-12));
  CHECK(defect_score(0.0, 1.0) == 0.0);
  // A coarser mesh can only increase the defect probability.
  CHECK(defect_score(0.03, 0.95) > 0.03);
}

TEST_CASE("feature failure probability follows the logistic margin",
          "[scoring]") {
  SECTION("midpoint and reference points") {
    CHECK(feature_failure_probability(1.0, 1.0, 1.0, false, 5.0) ==
          Approx(0.5).margin(1e-12));
    CHECK(feature_failure_probability(2.0, 1.0, 1.0, false, 5.0) ==
          Approx(0.2689414213699951).margin(1e-9));
    CHECK(feature_failure_probability(0.3, 1.0, 0.5, false, 5.0) ==
          Approx(0.3340938860840831).margin(1e-9));
  }

  SECTION("angular kinds rescale the margin by the steepness") {
    const double direct = logistic((45.0 - 30.0) / 5.0) * 0.5;
    CHECK(feature_failure_probability(30.0, 45.0, 0.5, true, 5.0) ==
          Approx(direct).margin(1e-15));
  }

  SECTION("bounds and monotonicity over random triples") {
    auto rng = test_rng(7);
    std::uniform_real_distribution<double> dim(0.01, 10.0);
    std::uniform_real_distribution<double> sig(0.05, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double w = dim(rng);
      const double d = dim(rng);
      const double s = sig(rng);
      const double p = feature_failure_probability(d, w, s, false, 5.0);
      REQUIRE(p > 0.0);
      REQUIRE(p < s);
      // Strictly easier once the dimension grows.
      const double p_easier = feature_failure_probability(d + 0.5, w, s, false, 5.0);
      REQUIRE(p_easier < p);
      // Strictly harder as the process threshold grows.
      const double p_harder = feature_failure_probability(d, w + 0.5, s, false, 5.0);
      REQUIRE(p_harder > p);
    }
  }
}

TEST_CASE("empty manifest reproduces the closed-form global score",
          "[scoring]") {
  const FeatureManifest manifest = empty_manifest();
  const ApplicationProfile app = general_application();

  // 0.997 * 0.995 * 0.995 * 0.997, evaluated by hand.
  PrintabilityReport fdm = score_printability(manifest, fdm_profile(), app);
  CHECK(fdm.score == Approx(98.4093760225).margin(1e-9));
  CHECK(fdm.global_failure_probability ==
        Approx(0.015906239775).margin(1e-12));
  CHECK(fdm.success_probability == Approx(0.984093760225).margin(1e-12));
  CHECK(fdm.features.empty());
  CHECK(fdm.classification == "printable");

  // 0.997^3 * 0.999 and 0.999^3 * 0.997.
  PrintabilityReport binder =
      score_printability(manifest, binder_jetting_profile(), app);
  CHECK(binder.score == Approx(99.0035946027).margin(1e-9));
  PrintabilityReport material =
      score_printability(manifest, material_jetting_profile(), app);
  CHECK(material.score == Approx(99.4001990103).margin(1e-9));
  CHECK(material.score > binder.score);
  CHECK(binder.score > fdm.score);
}

TEST_CASE("global success probability tracks sphere refinement goldens",
          "[scoring][slow]") {
  struct Row {
    int stacks;
    // k = 0.1 then k = 0.5; fdm, binder_jetting, material_jetting each.
    std::array<double, 3> low_k;
    std::array<double, 3> high_k;
  };
  const std::vector<Row> rows = {
      {7, {0.97239246, 0.978116384, 0.981823174},
          {0.867419752, 0.89389853, 0.911550807}},
      {20, {0.982638713, 0.988553692, 0.992496154},
           {0.915394871, 0.943702897, 0.962885818}},
      {61, {0.983937057, 0.989876312, 0.993848738},
           {0.921572972, 0.950117484, 0.969498937}},
      {193, {0.984078112, 0.990020005, 0.993995687},
            {0.922245513, 0.950815781, 0.970218865}},
  };
  const std::vector<TechnologyProfile> techs = {
      fdm_profile(), binder_jetting_profile(), material_jetting_profile()};
  const FeatureManifest manifest = empty_manifest();

  for (const Row& row : rows) {
    const double qs = sphere_quality_scale(row.stacks);
    ScoreInputs inputs;
    inputs.quality_scale = qs;
    inputs.quality_scale_source = "user";
    for (std::size_t t = 0; t < techs.size(); ++t) {
      const PrintabilityReport low = score_printability(
          manifest, techs[t], uniform_k_application(0.1), inputs);
      CHECK(low.global_success_probability ==
            Approx(row.low_k[t]).margin(2e-3));
      const PrintabilityReport high = score_printability(
          manifest, techs[t], uniform_k_application(0.5), inputs);
      CHECK(high.global_success_probability ==
            Approx(row.high_k[t]).margin(2e-3));
    }
  }
}

TEST_CASE("primitive scores match the reference table", "[scoring][slow]") {
  struct Entry {
    std::string name;
    double qs;
    std::array<double, 3> expected;  // fdm, binder_jetting, material_jetting
  };

  auto primitive_qs = [](PrimitiveKind kind, int level) {
    PrimitiveSpec spec;
    spec.kind = kind;
    spec.level = level;
    const GeneratedModel model = gen_primitive(spec);
    return quality_ratio(model.mesh, model.analytic_area_mm2).qs;
  };

  const std::vector<Entry> entries = {
      {"sphere", sphere_quality_scale(193), {98.379, 98.973, 99.370}},
      // level 5: 192 segments around the cylinder, 192x96 torus grid.
      {"cylinder", primitive_qs(PrimitiveKind::kCylinder, 5),
       {98.406, 99.000, 99.397}},
      {"torus", primitive_qs(PrimitiveKind::kTorus, 5),
       {98.409, 99.004, 99.401}},
      {"box", primitive_qs(PrimitiveKind::kBox, 2),
       {98.406, 99.001, 99.398}},
  };
  const std::vector<TechnologyProfile> techs = {
      fdm_profile(), binder_jetting_profile(), material_jetting_profile()};
  const FeatureManifest manifest = empty_manifest();
  const ApplicationProfile app = general_application();

  for (const Entry& entry : entries) {
    INFO("primitive: " << entry.name << " qs=" << entry.qs);
    ScoreInputs inputs;
    inputs.quality_scale = entry.qs;
    inputs.quality_scale_source = "user";
    std::array<double, 3> got{};
    for (std::size_t t = 0; t < techs.size(); ++t) {
      got[t] = score_printability(manifest, techs[t], app, inputs).score;
      CHECK(got[t] == Approx(entry.expected[t]).margin(0.15));
    }
    CHECK(got[2] > got[1]);  // material_jetting beats binder_jetting
    CHECK(got[1] > got[0]);  // binder_jetting beats fdm
  }
}

TEST_CASE("score matches a brute-force evaluation of the model", "[scoring]") {
  FeatureManifest manifest = empty_manifest();
  manifest.features.push_back(
      feature(FeatureKind::kSupportedWall, "wall_1", 0.5));
  manifest.features.push_back(feature(FeatureKind::kThroughHole, "hole_1", 1.0));
  manifest.features.push_back(feature(FeatureKind::kOverhang, "overhang_1", 30.0));
  FeatureInstance support = feature(FeatureKind::kSupportRegion, "support_1", 30.0);
  support.area_ratio = 0.15;
  manifest.features.push_back(support);
  FeatureInstance pin = feature(FeatureKind::kPin, "pin_1", 1.2);
  pin.significance = 0.9;
  manifest.features.push_back(pin);

  const ApplicationProfile app = general_application();
  ScoreInputs inputs;
  inputs.quality_scale = 0.97;
  inputs.quality_scale_source = "user";

  for (const TechnologyProfile& tech :
       {fdm_profile(), binder_jetting_profile(), material_jetting_profile()}) {
    const PrintabilityReport report =
        score_printability(manifest, tech, app, inputs);

    // Independent evaluation with raw arithmetic.
    double expected = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double qs = (i == 3) ? 1.0 : 0.97;
      const double ds = 1.0 - (1.0 - tech.ds_perfect[i]) * qs;
      expected *= 1.0 - ds * app.k[i];
    }
    auto sigma = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    for (const FeatureInstance& f : manifest.features) {
      const double w = tech.thresholds.at(f.kind);
      const double s =
          f.significance ? *f.significance : app.significance.at(f.kind);
      double x = w - f.d;
      if (is_angular(f.kind)) x /= tech.angle_steepness_deg;
      double p_f = sigma(x) * s;
      if (f.kind == FeatureKind::kSupportRegion) p_f *= *f.area_ratio;
      expected *= 1.0 - p_f;
    }

    INFO("technology: " << tech.name);
    CHECK(report.success_probability == Approx(expected).epsilon(1e-12));
    CHECK(report.score == Approx(100.0 * expected).epsilon(1e-12));
    CHECK(report.features.size() == manifest.features.size());
    // The per-feature breakdown multiplies back to the total.
    double rebuilt = report.global_success_probability;
    for (const FeatureRisk& risk : report.features) {
      rebuilt *= 1.0 - risk.failure_probability;
    }
    CHECK(report.success_probability == Approx(rebuilt).epsilon(1e-12));
  }
}

TEST_CASE("indifferent application with no features scores exactly 100",
          "[scoring]") {
  const PrintabilityReport report = score_printability(
      empty_manifest(), fdm_profile(), uniform_k_application(0.0));
  CHECK(report.score == 100.0);
  CHECK(report.global_failure_probability == 0.0);
  CHECK(report.classification == "printable");
}

TEST_CASE("every annotated feature strictly lowers the score", "[scoring]") {
  const ApplicationProfile app = general_application();
  for (const TechnologyProfile& tech :
       {fdm_profile(), binder_jetting_profile(), material_jetting_profile()}) {
    const double baseline =
        score_printability(empty_manifest(), tech, app).score;
    for (FeatureKind kind : kAllFeatureKinds) {
      FeatureManifest manifest = empty_manifest();
      FeatureInstance f = feature(kind, "probe", is_angular(kind) ? 30.0 : 0.4);
      if (kind == FeatureKind::kSupportRegion) f.area_ratio = 0.25;
      manifest.features.push_back(f);
      const double with_feature = score_printability(manifest, tech, app).score;
      INFO(tech.name << " / " << kind_name(kind));
      CHECK(with_feature < baseline);
    }
  }
}

TEST_CASE("larger feature dimensions never hurt the score", "[scoring]") {
  const ApplicationProfile app = general_application();
  const TechnologyProfile tech = fdm_profile();
  for (FeatureKind kind : kAllFeatureKinds) {
    double previous = -1.0;
    for (double d : {0.2, 0.6, 1.2, 2.4, 4.8}) {
      FeatureManifest manifest = empty_manifest();
      FeatureInstance f = feature(kind, "probe", is_angular(kind) ? d * 10 : d);
      if (kind == FeatureKind::kSupportRegion) f.area_ratio = 0.25;
      manifest.features.push_back(f);
      const double score = score_printability(manifest, tech, app).score;
      INFO(kind_name(kind) << " at d=" << d);
      CHECK(score > previous);
      previous = score;
    }
  }
}

TEST_CASE("quality scale inputs are validated and clamped", "[scoring]") {
  const FeatureManifest manifest = empty_manifest();
  const TechnologyProfile tech = fdm_profile();
  const ApplicationProfile app = general_application();

  SECTION("values above one clamp with a warning") {
    ScoreInputs inputs;
    inputs.quality_scale = 1.002;
    inputs.quality_scale_source = "manifest";
    const PrintabilityReport report =
        score_printability(manifest, tech, app, inputs);
    CHECK(report.quality_scale == 1.0);
    CHECK(report.quality_scale_source == "manifest");
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.score == Approx(98.4093760225).margin(1e-9));
  }

  SECTION("roundoff above one clamps without a warning") {
    // Float32 STL coordinates make a self-referenced area land ~1e-8 high.
    for (double qs : {1.0 + 1e-12, 1.0 + 1e-8, 1.0 + 1e-7}) {
      ScoreInputs inputs;
      inputs.quality_scale = qs;
      const PrintabilityReport report =
          score_printability(manifest, tech, app, inputs);
      CHECK(report.quality_scale == 1.0);
      CHECK(report.warnings.empty());
    }
  }

  SECTION("non-positive or non-finite values are rejected") {
    for (double bad : {0.0, -0.5, std::nan(""),
                       std::numeric_limits<double>::infinity()}) {
      ScoreInputs inputs;
      inputs.quality_scale = bad;
      CHECK_THROWS_AS(score_printability(manifest, tech, app, inputs),
                      std::invalid_argument);
    }
  }

  SECTION("a coarser mesh scores strictly lower") {
    ScoreInputs coarse;
    coarse.quality_scale = 0.9;
    ScoreInputs fine;
    fine.quality_scale = 0.99;
    CHECK(score_printability(manifest, tech, app, coarse).score <
          score_printability(manifest, tech, app, fine).score);
  }
}

TEST_CASE("classification thresholds partition the score range", "[scoring]") {
  const ClassificationThresholds t;
  CHECK(classify_score(98.0, t) == "printable");
  CHECK(classify_score(80.0, t) == "printable");
  CHECK(classify_score(79.999, t) == "risky");
  CHECK(classify_score(30.0, t) == "risky");
  CHECK(classify_score(29.999, t) == "unprintable");
  CHECK(classify_score(0.0, t) == "unprintable");

  CHECK_THROWS_AS(
      validate_classification_thresholds(ClassificationThresholds{20.0, 30.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_classification_thresholds(ClassificationThresholds{120.0, 30.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_classification_thresholds(ClassificationThresholds{80.0, -1.0}),
      std::invalid_argument);
}

TEST_CASE("technology comparison ranks deterministically", "[scoring]") {
  const ApplicationProfile app = general_application();

  SECTION("built-in ranking on a featureless model") {
    const std::vector<PrintabilityReport> reports = compare_technologies(
        empty_manifest(),
        {fdm_profile(), binder_jetting_profile(), material_jetting_profile()},
        app);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].technology == "material_jetting");
    CHECK(reports[1].technology == "binder_jetting");
    CHECK(reports[2].technology == "fdm");
    CHECK(reports[0].score >= reports[1].score);
    CHECK(reports[1].score >= reports[2].score);
  }

  SECTION("equal scores fall back to name order") {
    TechnologyProfile a = fdm_profile();
    a.name = "alpha";
    TechnologyProfile b = fdm_profile();
    b.name = "bravo";
    const std::vector<PrintabilityReport> reports =
        compare_technologies(empty_manifest(), {b, a}, app);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].score == reports[1].score);
    CHECK(reports[0].technology == "alpha");
    CHECK(reports[1].technology == "bravo");
  }

  SECTION("per-technology thresholds can invert a global-only ranking") {
    TechnologyProfile tight = fdm_profile();
    tight.name = "tight_walls";
    tight.thresholds[FeatureKind::kSupportedWall] = 2.0;
    TechnologyProfile loose = fdm_profile();
    loose.name = "loose_walls";
    loose.thresholds[FeatureKind::kSupportedWall] = 0.5;

    FeatureManifest manifest = empty_manifest();
    manifest.features.push_back(
        feature(FeatureKind::kSupportedWall, "wall", 1.0));
    const std::vector<PrintabilityReport> reports =
        compare_technologies(manifest, {tight, loose}, app);
    REQUIRE(reports.size() == 2);
    // Identical global quality; the process that prints a 1 mm wall more
    // reliably must win.
    CHECK(reports[0].technology == "loose_walls");
  }

  SECTION("an empty technology list is rejected") {
    CHECK_THROWS_AS(compare_technologies(empty_manifest(), {}, app),
                    std::invalid_argument);
  }
}

TEST_CASE("scoring rejects manifests the profile cannot cover", "[scoring]") {
  TechnologyProfile partial = fdm_profile();
  partial.thresholds.erase(FeatureKind::kPin);
  FeatureManifest manifest = empty_manifest();
  manifest.features.push_back(feature(FeatureKind::kPin, "pin", 1.0));
  CHECK_THROWS_AS(
      score_printability(manifest, partial, general_application()),
      std::invalid_argument);

  ApplicationProfile no_sig = general_application();
  no_sig.significance.erase(FeatureKind::kPin);
  CHECK_THROWS_AS(score_printability(manifest, fdm_profile(), no_sig),
                  std::invalid_argument);

  // An explicit per-feature significance override fills the gap.
  manifest.features[0].significance = 0.5;
  CHECK_NOTHROW(score_printability(manifest, fdm_profile(), no_sig));
}

TEST_CASE("profile JSON round-trips losslessly", "[profiles]") {
  SECTION("technology") {
    const TechnologyProfile original = fdm_profile();
    const nlohmann::json j = technology_profile_to_json(original);
    const TechnologyProfile back = technology_profile_from_json(j);
    CHECK(technology_profile_to_json(back) == j);
    CHECK(back.name == original.name);
    CHECK(back.ds_perfect == original.ds_perfect);
    CHECK(back.thresholds == original.thresholds);
    CHECK(back.angle_steepness_deg == original.angle_steepness_deg);
  }

  SECTION("application") {
    const ApplicationProfile original = artistic_application();
    const nlohmann::json j = application_profile_to_json(original);
    const ApplicationProfile back = application_profile_from_json(j);
    CHECK(application_profile_to_json(back) == j);
    CHECK(back.k == original.k);
    CHECK(back.significance == original.significance);
  }

  SECTION("star grades are accepted in place of probabilities") {
    nlohmann::json j = technology_profile_to_json(fdm_profile());
    j.erase("ds_perfect");
    j["stars"] = {{"accuracy", "**"},
                  {"surface_texture", "*"},
                  {"abnormalities", "*"},
                  {"support_construction", "**"}};
    const TechnologyProfile parsed = technology_profile_from_json(j);
    CHECK(parsed.ds_perfect == std::array<double, 4>{0.03, 0.05, 0.05, 0.03});
  }

  SECTION("malformed profiles are rejected") {
    nlohmann::json good = technology_profile_to_json(fdm_profile());

    nlohmann::json wrong_version = good;
    wrong_version["schema_version"] = 2;
    CHECK_THROWS_AS(technology_profile_from_json(wrong_version),
                    std::invalid_argument);

    nlohmann::json wrong_type = good;
    wrong_type["type"] = "application";
    CHECK_THROWS_AS(technology_profile_from_json(wrong_type),
                    std::invalid_argument);

    nlohmann::json missing_char = good;
    missing_char["ds_perfect"].erase("accuracy");
    CHECK_THROWS_AS(technology_profile_from_json(missing_char),
                    std::invalid_argument);

    nlohmann::json bad_kind = good;
    bad_kind["thresholds"]["lattice"] = 1.0;
    CHECK_THROWS_AS(technology_profile_from_json(bad_kind),
                    std::invalid_argument);

    nlohmann::json negative_threshold = good;
    negative_threshold["thresholds"]["pin"] = -1.0;
    CHECK_THROWS_AS(technology_profile_from_json(negative_threshold),
                    std::invalid_argument);

    nlohmann::json bad_sig = application_profile_to_json(general_application());
    bad_sig["significance"]["pin"] = 1.5;
    CHECK_THROWS_AS(application_profile_from_json(bad_sig),
                    std::invalid_argument);
  }
}

TEST_CASE("profile names resolve through the directory override",
          "[profiles]") {
  namespace fs = std::filesystem;

  SECTION("built-ins resolve by name") {
    CHECK(resolve_technology("fdm").name == "fdm");
    CHECK(resolve_technology("binder_jetting").name == "binder_jetting");
    CHECK(resolve_application("artistic").name == "artistic");
  }

  SECTION("unknown names list what is available") {
    CHECK_THROWS_WITH(resolve_technology("sls"),
                      Catch::Matchers::ContainsSubstring("binder_jetting"));
    CHECK_THROWS_AS(resolve_application("industrial"), std::invalid_argument);
  }

  SECTION("the profile directory shadows built-ins and adds names") {
    fs::path dir = fs::temp_directory_path() / "printscore_profile_test";
    fs::create_directories(dir);

    TechnologyProfile custom = fdm_profile();
    custom.thresholds[FeatureKind::kSupportedWall] = 1.23;
    {
      std::ofstream out(dir / "fdm.json");
      out << technology_profile_to_json(custom).dump(2);
    }
    ApplicationProfile app = general_application();
    app.name = "fixture";
    {
      std::ofstream out(dir / "fixture.json");
      out << application_profile_to_json(app).dump(2);
    }

    {
      EnvVarGuard guard("PRINTSCORE_PROFILE_DIR", dir.string());
      CHECK(resolve_technology("fdm").thresholds.at(
                FeatureKind::kSupportedWall) == 1.23);
      CHECK(resolve_application("fixture").name == "fixture");
      // A technology file does not parse as an application.
      CHECK_THROWS_AS(resolve_application("fdm"), std::invalid_argument);
    }
    // Without the override the built-in is back.
    CHECK(resolve_technology("fdm").thresholds.at(
              FeatureKind::kSupportedWall) == 0.8);

    fs::remove_all(dir);
  }

  SECTION("file loading distinguishes I/O from validation errors") {
    fs::path dir = fs::temp_directory_path() / "printscore_profile_io_test";
    fs::create_directories(dir);
    CHECK_THROWS_AS(load_technology_file(dir / "missing.json"),
                    std::runtime_error);
    {
      std::ofstream out(dir / "broken.json");
      out << "{ not json";
    }
    CHECK_THROWS_AS(load_technology_file(dir / "broken.json"),
                    std::runtime_error);
    fs::remove_all(dir);
  }
}

#ifdef PRINTSCORE_REPO_DIR
TEST_CASE("shipped profile files mirror the built-ins", "[profiles]") {
  const std::filesystem::path dir =
      std::filesystem::path(PRINTSCORE_REPO_DIR) / "profiles";
  const std::vector<TechnologyProfile> techs = {
      fdm_profile(), binder_jetting_profile(), material_jetting_profile()};
  for (const TechnologyProfile& tech : techs) {
    const TechnologyProfile loaded =
        load_technology_file(dir / (tech.name + ".json"));
    CHECK(technology_profile_to_json(loaded) ==
          technology_profile_to_json(tech));
  }
  for (const ApplicationProfile& app :
       {general_application(), artistic_application()}) {
    const ApplicationProfile loaded =
        load_application_file(dir / (app.name + ".json"));
    CHECK(application_profile_to_json(loaded) ==
          application_profile_to_json(app));
  }
}
#endif

TEST_CASE("report serializes to a stable JSON document", "[scoring]") {
  FeatureManifest manifest = empty_manifest();
  manifest.features.push_back(
      feature(FeatureKind::kUnsupportedWall, "wall_a", 0.7));
  ScoreInputs inputs;
  inputs.quality_scale = 0.99;
  inputs.quality_scale_source = "manifest";
  const PrintabilityReport report =
      score_printability(manifest, fdm_profile(), general_application(), inputs);

  const nlohmann::json j = report_to_json(report);
  CHECK(j["schema_version"] == 1);
  CHECK(j["technology"] == "fdm");
  CHECK(j["application"] == "general");
  CHECK(j["quality_scale"] == 0.99);
  CHECK(j["quality_scale_source"] == "manifest");
  CHECK(j["score"].get<double>() == report.score);
  CHECK(j["classification"] == report.classification);
  REQUIRE(j["global"]["characteristics"].size() == 4);
  CHECK(j["global"]["failure_probability"].get<double>() ==
        report.global_failure_probability);
  REQUIRE(j["features"].size() == 1);
  CHECK(j["features"][0]["label"] == "wall_a");
  CHECK(j["features"][0]["kind"] == "unsupported_wall");
  CHECK(j["features"][0]["failure_probability"].get<double>() ==
        report.features[0].failure_probability);
  // Serialization is deterministic byte for byte.
  CHECK(j.dump() == report_to_json(report).dump());
}
