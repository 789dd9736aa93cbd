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

// Command-line front end: generate test solids, inspect mesh geometry,
// compute curvature histograms, and score or compare printability.
//
// Exit codes: 0 success, 1 runtime/I-O failure, 2 usage or validation error.
// Text reports format every number with the same serializer as the JSON
// reports, so the two views always agree digit for digit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "printscore/benchmark.hpp"
#include "printscore/curvature.hpp"
#include "printscore/detect.hpp"
#include "printscore/features.hpp"
#include "printscore/format.hpp"
#include "printscore/mesh.hpp"
#include "printscore/metrics.hpp"
#include "printscore/primitives.hpp"
#include "printscore/profiles.hpp"
#include "printscore/scoring.hpp"
#include "printscore/stl.hpp"

namespace {

using printscore::fmt_double;

constexpr int kCliSchemaVersion = 1;

std::string bool_name(bool b) { return b ? "true" : "false"; }

nlohmann::json vec3_json(const printscore::Vec3& v) {
  return nlohmann::json::array({v.x, v.y, v.z});
}

std::string vec3_text(const printscore::Vec3& v) {
  return "[" + fmt_double(v.x) + ", " + fmt_double(v.y) + ", " + fmt_double(v.z) +
         "]";
}

void emit_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

// STL stores a triangle soup; analysis needs shared-vertex connectivity, so
// every command that reads a mesh welds duplicates first.
struct LoadedMesh {
  printscore::TriangleMesh mesh;
  std::int64_t merged_vertex_count = 0;
};

LoadedMesh load_mesh(const std::string& path) {
  const printscore::TriangleMesh raw = printscore::read_stl_file(path);
  LoadedMesh out;
  out.mesh = printscore::weld_vertices(raw);
  out.merged_vertex_count = static_cast<std::int64_t>(raw.vertices.size()) -
                            static_cast<std::int64_t>(out.mesh.vertices.size());
  return out;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string output;
  std::string format = "binary";
  std::string manifest_path;

  // primitives
  printscore::PrimitiveSpec primitive;
  std::vector<double> box_extents = {30.0, 30.0, 30.0};

  // benchmark
  std::string preset;
  printscore::BenchmarkSpec benchmark;
  double circular_wall = 0.0;
};

int write_generated(const printscore::GeneratedModel& model,
                    const GenOptions& opt, bool default_manifest) {
  const printscore::StlFormat format = opt.format == "ascii"
                                           ? printscore::StlFormat::kAscii
                                           : printscore::StlFormat::kBinary;
  printscore::write_stl_file(model.mesh, opt.output, format);
  std::cout << "wrote " << opt.output << " ("
            << model.mesh.triangles.size() << " triangles, " << opt.format
            << ")\n";

  std::string manifest_path = opt.manifest_path;
  if (manifest_path.empty() && default_manifest) {
    manifest_path =
        std::filesystem::path(opt.output).replace_extension(".manifest.json")
            .string();
  }
  if (!manifest_path.empty()) {
    printscore::save_manifest(model.manifest, manifest_path);
    std::cout << "wrote " << manifest_path << " ("
              << model.manifest.features.size() << " features)\n";
  }
  std::cout << "analytic_area_mm2: " << fmt_double(model.analytic_area_mm2)
            << "\n";
  std::cout << "analytic_volume_mm3: " << fmt_double(model.analytic_volume_mm3)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// inspect
// ---------------------------------------------------------------------------

struct InspectOptions {
  std::string input;
  bool json = false;
  double reference_area = 0.0;  // 0 = not given
  double thin_cap = 0.0;        // 0 = skip thin-region detection
  int samples = 10000;
  unsigned seed = 42;
  double overhang_threshold = 0.0;  // 0 = skip overhang detection
  std::vector<double> build_dir = {0.0, 0.0, 1.0};
};

int run_inspect(const InspectOptions& opt) {
  const LoadedMesh loaded = load_mesh(opt.input);
  const printscore::TriangleMesh& mesh = loaded.mesh;
  const printscore::MeshDiagnostics diag = printscore::diagnostics(mesh);
  const bool oriented = printscore::is_consistently_oriented(mesh);
  const printscore::BoundingBox bbox = printscore::bounding_box(mesh);

  nlohmann::json j;
  j["schema_version"] = kCliSchemaVersion;
  j["command"] = "inspect";
  j["input"] = opt.input;
  j["model"] = mesh.name;
  j["triangle_count"] = mesh.triangles.size();
  j["vertex_count"] = mesh.vertices.size();
  j["complexity"] = printscore::mesh_complexity(mesh);
  const double area = printscore::surface_area(mesh);
  j["surface_area_mm2"] = area;

  std::vector<std::string> warnings;
  std::optional<double> volume_mm3;
  if (diag.watertight && oriented) {
    volume_mm3 = printscore::signed_volume(mesh);
    if (*volume_mm3 <= 0.0) {
      warnings.push_back("signed volume is not positive; faces wind inward");
    }
  } else {
    warnings.push_back("mesh is not closed; volume unavailable");
  }
  j["volume_mm3"] = volume_mm3 ? nlohmann::json(*volume_mm3)
                               : nlohmann::json(nullptr);
  j["volume_m3"] = volume_mm3 ? nlohmann::json(*volume_mm3 * 1e-9)
                              : nlohmann::json(nullptr);
  j["bbox_min_mm"] = vec3_json(bbox.min);
  j["bbox_max_mm"] = vec3_json(bbox.max);
  j["bbox_extents_mm"] = vec3_json(bbox.max - bbox.min);
  j["diagnostics"] = {
      {"watertight", diag.watertight},
      {"consistently_oriented", oriented},
      {"boundary_edge_count", diag.boundary_edge_count},
      {"non_manifold_edge_count", diag.non_manifold_edge_count},
      {"degenerate_triangle_count", diag.degenerate_triangle_count},
      {"merged_vertex_count", loaded.merged_vertex_count},
  };

  if (opt.reference_area != 0.0) {
    j["quality_scale"] = printscore::quality_ratio(mesh, opt.reference_area).qs;
  }

  if (opt.overhang_threshold != 0.0) {
    const printscore::Vec3 build{opt.build_dir[0], opt.build_dir[1],
                                 opt.build_dir[2]};
    const std::vector<printscore::OverhangRegion> regions =
        printscore::overhang_regions(mesh, build, opt.overhang_threshold);
    nlohmann::json arr = nlohmann::json::array();
    for (const printscore::OverhangRegion& region : regions) {
      arr.push_back({{"min_angle_deg", region.min_angle_deg},
                     {"area_mm2", region.area_mm2},
                     {"triangle_count", region.triangles.size()}});
    }
    j["overhangs"] = {
        {"threshold_deg", opt.overhang_threshold},
        {"support_area_ratio",
         printscore::support_area_ratio(mesh, build, opt.overhang_threshold)},
        {"regions", arr},
    };
  }

  if (opt.thin_cap != 0.0) {
    const std::vector<printscore::FeatureInstance> thin =
        printscore::detect_thin_regions(mesh, opt.thin_cap, opt.samples,
                                        opt.seed);
    nlohmann::json arr = nlohmann::json::array();
    for (const printscore::FeatureInstance& f : thin) {
      arr.push_back({{"label", f.label}, {"thickness_mm", f.d}});
    }
    j["thin_regions"] = {
        {"cap_mm", opt.thin_cap},
        {"samples", opt.samples},
        {"seed", opt.seed},
        {"regions", arr},
    };
  }
  j["warnings"] = warnings;

  if (opt.json) {
    emit_json(j);
    return 0;
  }

  std::cout << "model: " << mesh.name << "\n";
  std::cout << "triangles: " << mesh.triangles.size() << "\n";
  std::cout << "vertices: " << mesh.vertices.size() << "\n";
  std::cout << "complexity: " << printscore::mesh_complexity(mesh) << "\n";
  std::cout << "surface_area_mm2: " << fmt_double(area) << "\n";
  if (volume_mm3) {
    std::cout << "volume_mm3: " << fmt_double(*volume_mm3) << "\n";
    std::cout << "volume_m3: " << fmt_double(*volume_mm3 * 1e-9) << "\n";
  } else {
    std::cout << "volume_mm3: unavailable\n";
    std::cout << "volume_m3: unavailable\n";
  }
  std::cout << "bbox_min_mm: " << vec3_text(bbox.min) << "\n";
  std::cout << "bbox_max_mm: " << vec3_text(bbox.max) << "\n";
  std::cout << "bbox_extents_mm: " << vec3_text(bbox.max - bbox.min) << "\n";
  std::cout << "watertight: " << bool_name(diag.watertight) << "\n";
  std::cout << "consistently_oriented: " << bool_name(oriented) << "\n";
  std::cout << "boundary_edges: " << diag.boundary_edge_count << "\n";
  std::cout << "non_manifold_edges: " << diag.non_manifold_edge_count << "\n";
  std::cout << "degenerate_triangles: " << diag.degenerate_triangle_count
            << "\n";
  std::cout << "merged_vertices: " << loaded.merged_vertex_count << "\n";
  if (j.contains("quality_scale")) {
    std::cout << "quality_scale: " << fmt_double(j["quality_scale"].get<double>())
              << "\n";
  }
  if (j.contains("overhangs")) {
    std::cout << "support_area_ratio: "
              << fmt_double(j["overhangs"]["support_area_ratio"].get<double>())
              << "\n";
    for (const auto& region : j["overhangs"]["regions"]) {
      std::cout << "overhang: min_angle_deg="
                << fmt_double(region["min_angle_deg"].get<double>())
                << " area_mm2=" << fmt_double(region["area_mm2"].get<double>())
                << " triangles=" << region["triangle_count"].get<std::size_t>()
                << "\n";
    }
  }
  if (j.contains("thin_regions")) {
    for (const auto& region : j["thin_regions"]["regions"]) {
      std::cout << "thin_region: " << region["label"].get<std::string>()
                << " thickness_mm="
                << fmt_double(region["thickness_mm"].get<double>()) << "\n";
    }
  }
  for (const std::string& warning : warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

struct CurvatureOptions {
  std::string input;
  int bins = 64;
  bool json = false;
  std::string csv_path;
};

int run_curvature(const CurvatureOptions& opt) {
  const printscore::TriangleMesh mesh = load_mesh(opt.input).mesh;
  const printscore::CurvatureField field = printscore::mean_curvature(mesh);
  const printscore::Histogram hist =
      printscore::curvature_histogram(field, opt.bins);
  const int modes = printscore::count_modes(field.mean_curvature, opt.bins);

  nlohmann::json j;
  j["schema_version"] = kCliSchemaVersion;
  j["command"] = "curvature";
  j["input"] = opt.input;
  j["model"] = mesh.name;
  j["samples"] = hist.sample_count;
  j["bins"] = opt.bins;
  j["min"] = hist.min;
  j["max"] = hist.max;
  j["mean"] = hist.mean;
  j["median"] = hist.median;
  j["modes"] = modes;
  j["bimodal"] = modes >= 2;
  j["histogram"] = {{"edges", hist.edges}, {"counts", hist.counts}};

  if (!opt.csv_path.empty()) {
    const std::string csv = printscore::histogram_csv(hist);
    if (opt.csv_path == "-") {
      std::cout << csv;
    } else {
      std::ofstream out(opt.csv_path, std::ios::binary);
      if (!out.is_open()) {
        throw std::runtime_error("cannot open file for writing: " +
                                 opt.csv_path);
      }
      out << csv;
      std::cout << "wrote " << opt.csv_path << "\n";
    }
  }

  if (opt.json) {
    emit_json(j);
    return 0;
  }
  std::cout << "model: " << mesh.name << "\n";
  std::cout << "samples: " << hist.sample_count << "\n";
  std::cout << "bins: " << opt.bins << "\n";
  std::cout << "min: " << fmt_double(hist.min) << "\n";
  std::cout << "max: " << fmt_double(hist.max) << "\n";
  std::cout << "mean: " << fmt_double(hist.mean) << "\n";
  std::cout << "median: " << fmt_double(hist.median) << "\n";
  std::cout << "modes: " << modes << "\n";
  std::cout << "bimodal: " << bool_name(modes >= 2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// score / compare
// ---------------------------------------------------------------------------

struct ScoreOptions {
  std::string input;               // single positional input
  std::vector<std::string> inputs;  // batch mode
  std::string manifest_path;
  std::string tech = "fdm";
  std::string tech_file;
  std::vector<std::string> techs = {"all"};  // compare only
  std::string app = "general";
  std::string app_file;
  double reference_area = 0.0;
  double k = -1.0;  // <0 = keep profile values
  std::vector<double> classify = {80.0, 30.0};
  bool json = false;
};

printscore::ApplicationProfile resolve_app_options(const ScoreOptions& opt) {
  printscore::ApplicationProfile app =
      opt.app_file.empty() ? printscore::resolve_application(opt.app)
                           : printscore::load_application_file(opt.app_file);
  if (opt.k >= 0.0) {
    app.k = {opt.k, opt.k, opt.k, opt.k};
  }
  return app;
}

printscore::ScoreInputs quality_inputs(const printscore::TriangleMesh& mesh,
                                       const printscore::FeatureManifest& manifest,
                                       double reference_area_flag,
                                       std::vector<std::string>& warnings) {
  printscore::ScoreInputs inputs;
  double reference = 0.0;
  if (reference_area_flag != 0.0) {
    reference = reference_area_flag;
    inputs.quality_scale_source = "user";
  } else if (manifest.reference_area_mm2.has_value()) {
    reference = *manifest.reference_area_mm2;
    inputs.quality_scale_source = "manifest";
  } else {
    inputs.quality_scale = 1.0;
    inputs.quality_scale_source = "assumed";
    warnings.push_back(
        "no reference area given; assuming quality scale 1 (use "
        "--reference-area or a manifest with reference_area_mm2)");
    return inputs;
  }
  inputs.quality_scale = printscore::quality_ratio(mesh, reference).qs;
  return inputs;
}

void print_report_text(const printscore::PrintabilityReport& report) {
  std::cout << "technology: " << report.technology << "\n";
  std::cout << "application: " << report.application << "\n";
  std::cout << "quality_scale: " << fmt_double(report.quality_scale) << " ("
            << report.quality_scale_source << ")\n";
  for (const printscore::CharacteristicRisk& risk : report.characteristics) {
    std::cout << "characteristic: "
              << printscore::characteristic_name(risk.characteristic)
              << " defect_score=" << fmt_double(risk.defect_score)
              << " k=" << fmt_double(risk.k)
              << " survival=" << fmt_double(risk.survival) << "\n";
  }
  std::cout << "global_failure_probability: "
            << fmt_double(report.global_failure_probability) << "\n";
  std::cout << "global_success_probability: "
            << fmt_double(report.global_success_probability) << "\n";
  if (report.features.empty()) {
    std::cout << "features: none\n";
  }
  for (const printscore::FeatureRisk& risk : report.features) {
    std::cout << "feature: " << risk.label << " kind="
              << printscore::kind_name(risk.kind)
              << " d=" << fmt_double(risk.dimension)
              << " w=" << fmt_double(risk.threshold)
              << " s=" << fmt_double(risk.significance)
              << " failure_probability="
              << fmt_double(risk.failure_probability) << "\n";
  }
  std::cout << "success_probability: " << fmt_double(report.success_probability)
            << "\n";
  std::cout << "score: " << fmt_double(report.score) << "\n";
  std::cout << "classification: " << report.classification << "\n";
  for (const std::string& warning : report.warnings) {
    std::cout << "warning: " << warning << "\n";
  }
}

printscore::FeatureManifest load_manifest_or_empty(const std::string& path) {
  if (path.empty()) {
    printscore::FeatureManifest manifest;
    manifest.source = "none";
    return manifest;
  }
  return printscore::load_manifest(path);
}

int run_score(const ScoreOptions& opt) {
  std::vector<std::string> inputs = opt.inputs;
  if (!opt.input.empty()) {
    inputs.insert(inputs.begin(), opt.input);
  }
  if (inputs.empty()) {
    throw std::invalid_argument("score needs an input mesh (positional or --inputs)");
  }
  const printscore::FeatureManifest manifest =
      load_manifest_or_empty(opt.manifest_path);
  const printscore::TechnologyProfile tech =
      opt.tech_file.empty() ? printscore::resolve_technology(opt.tech)
                            : printscore::load_technology_file(opt.tech_file);
  const printscore::ApplicationProfile app = resolve_app_options(opt);
  const printscore::ClassificationThresholds classify{opt.classify[0],
                                                      opt.classify[1]};

  nlohmann::json batch = nlohmann::json::array();
  bool first = true;
  for (const std::string& path : inputs) {
    const printscore::TriangleMesh mesh = load_mesh(path).mesh;
    std::vector<std::string> warnings;
    printscore::ScoreInputs inputs_for_mesh =
        quality_inputs(mesh, manifest, opt.reference_area, warnings);
    printscore::PrintabilityReport report = printscore::score_printability(
        manifest, tech, app, inputs_for_mesh, classify);
    report.warnings.insert(report.warnings.begin(), warnings.begin(),
                           warnings.end());

    if (opt.json) {
      nlohmann::json j = printscore::report_to_json(report);
      j["command"] = "score";
      j["input"] = path;
      batch.push_back(std::move(j));
    } else {
      if (!first) std::cout << "\n";
      std::cout << "input: " << path << "\n";
      print_report_text(report);
      first = false;
    }
  }
  if (opt.json) {
    emit_json(batch.size() == 1 ? batch.front() : batch);
  }
  return 0;
}

int run_compare(const ScoreOptions& opt) {
  if (opt.input.empty()) {
    throw std::invalid_argument("compare needs an input mesh");
  }
  const printscore::TriangleMesh mesh = load_mesh(opt.input).mesh;
  const printscore::FeatureManifest manifest =
      load_manifest_or_empty(opt.manifest_path);

  std::vector<printscore::TechnologyProfile> techs;
  if (opt.techs.size() == 1 && opt.techs[0] == "all") {
    for (const std::string& name : printscore::builtin_technology_names()) {
      techs.push_back(printscore::resolve_technology(name));
    }
  } else {
    for (const std::string& name : opt.techs) {
      techs.push_back(printscore::resolve_technology(name));
    }
  }
  const printscore::ApplicationProfile app = resolve_app_options(opt);
  const printscore::ClassificationThresholds classify{opt.classify[0],
                                                      opt.classify[1]};
  std::vector<std::string> warnings;
  const printscore::ScoreInputs inputs =
      quality_inputs(mesh, manifest, opt.reference_area, warnings);
  const std::vector<printscore::PrintabilityReport> reports =
      printscore::compare_technologies(manifest, techs, app, inputs, classify);

  if (opt.json) {
    nlohmann::json j;
    j["schema_version"] = kCliSchemaVersion;
    j["command"] = "compare";
    j["input"] = opt.input;
    j["application"] = app.name;
    j["warnings"] = warnings;
    nlohmann::json arr = nlohmann::json::array();
    for (const printscore::PrintabilityReport& report : reports) {
      arr.push_back(printscore::report_to_json(report));
    }
    j["reports"] = arr;
    emit_json(j);
    return 0;
  }

  std::cout << "input: " << opt.input << "\n";
  std::cout << "application: " << app.name << "\n";
  for (const std::string& warning : warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  int rank = 1;
  for (const printscore::PrintabilityReport& report : reports) {
    std::cout << "rank " << rank++ << ": " << report.technology
              << " score=" << fmt_double(report.score) << " ("
              << report.classification << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"printscore: printability analysis for tessellated models"};
  app.set_version_flag("--version", "printscore 1.0.0");
  app.require_subcommand(1);

  // --- gen ---------------------------------------------------------------
  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a test solid as STL (and optionally its manifest)");
  gen->require_subcommand(1);

  auto add_gen_common = [&gen_opt](CLI::App* cmd) {
    cmd->add_option("-o,--output", gen_opt.output, "Output STL path")
        ->required();
    cmd->add_option("--format", gen_opt.format, "STL flavour")
        ->check(CLI::IsMember({"binary", "ascii"}))
        ->capture_default_str();
    cmd->add_option("--manifest", gen_opt.manifest_path,
                    "Write the feature manifest JSON to this path");
    cmd->add_option("--max-triangles", gen_opt.primitive.triangle_cap,
                    "Fail instead of emitting more triangles than this")
        ->capture_default_str();
  };

  CLI::App* gen_sphere =
      gen->add_subcommand("sphere", "Icosphere (20*4^level triangles)");
  gen_sphere->add_option("--diameter", gen_opt.primitive.diameter, "mm")
      ->capture_default_str();
  gen_sphere->add_option("--level", gen_opt.primitive.level,
                         "Subdivision level")
      ->capture_default_str();
  add_gen_common(gen_sphere);

  CLI::App* gen_uvsphere =
      gen->add_subcommand("uvsphere", "Latitude/longitude sphere");
  gen_uvsphere->add_option("--diameter", gen_opt.primitive.diameter, "mm")
      ->capture_default_str();
  gen_uvsphere->add_option("--level", gen_opt.primitive.level,
                           "Resolution level (stacks = 5*2^level)")
      ->capture_default_str();
  gen_uvsphere->add_option("--stacks", gen_opt.primitive.stacks,
                           "Polar bands (overrides --level)");
  gen_uvsphere->add_option("--slices", gen_opt.primitive.slices,
                           "Longitudes (default 2*stacks)");
  add_gen_common(gen_uvsphere);

  CLI::App* gen_cylinder = gen->add_subcommand("cylinder", "Right cylinder");
  gen_cylinder
      ->add_option("--diameter", gen_opt.primitive.cylinder_diameter, "mm")
      ->capture_default_str();
  gen_cylinder->add_option("--height", gen_opt.primitive.cylinder_height, "mm")
      ->capture_default_str();
  gen_cylinder->add_option("--level", gen_opt.primitive.level,
                           "6*2^level segments around")
      ->capture_default_str();
  add_gen_common(gen_cylinder);

  CLI::App* gen_torus = gen->add_subcommand("torus", "Torus around the z axis");
  gen_torus->add_option("--ring-diameter", gen_opt.primitive.ring_diameter,
                        "Centerline circle diameter, mm")
      ->capture_default_str();
  gen_torus->add_option("--tube-diameter", gen_opt.primitive.tube_diameter,
                        "Cross-section diameter, mm")
      ->capture_default_str();
  gen_torus->add_option("--level", gen_opt.primitive.level,
                        "6*2^level major segments")
      ->capture_default_str();
  add_gen_common(gen_torus);

  CLI::App* gen_box = gen->add_subcommand("box", "Axis-aligned box");
  gen_box->add_option("--extents", gen_opt.box_extents,
                      "Edge lengths x,y,z in mm")
      ->delimiter(',')
      ->expected(3);
  gen_box->add_option("--level", gen_opt.primitive.level,
                      "2^(level-1) grid squares per face edge")
      ->capture_default_str();
  add_gen_common(gen_box);

  CLI::App* gen_benchmark = gen->add_subcommand(
      "benchmark", "Printability test plate with feature ladders");
  gen_benchmark->add_option("--preset", gen_opt.preset,
                            "Start from a stock plate: b1, b2, or b3");
  gen_benchmark->add_option("--name", gen_opt.benchmark.name, "Solid name");
  auto add_ladder = [&gen_benchmark](const std::string& flag,
                                     std::vector<double>& target,
                                     const std::string& help) {
    gen_benchmark->add_option(flag, target, help)->delimiter(',');
  };
  add_ladder("--walls", gen_opt.benchmark.supported_wall_thicknesses,
             "Supported wall thicknesses, mm");
  add_ladder("--unsupported-walls",
             gen_opt.benchmark.unsupported_wall_thicknesses,
             "Unsupported wall thicknesses, mm");
  add_ladder("--holes", gen_opt.benchmark.hole_diameters,
             "Through-hole diameters, mm");
  add_ladder("--overhangs", gen_opt.benchmark.overhang_angles_deg,
             "Overhang angles from horizontal, degrees");
  add_ladder("--bridges", gen_opt.benchmark.bridge_thicknesses,
             "Bridge beam thicknesses, mm");
  add_ladder("--emboss", gen_opt.benchmark.emboss_sizes,
             "Embossed detail sizes, mm");
  add_ladder("--engrave", gen_opt.benchmark.engrave_sizes,
             "Engraved detail sizes, mm");
  add_ladder("--pins", gen_opt.benchmark.pin_diameters, "Pin diameters, mm");
  add_ladder("--domes", gen_opt.benchmark.dome_radii,
             "Dome radii (curvature specimens), mm");
  gen_benchmark->add_option("--circular-wall", gen_opt.circular_wall,
                            "Closed circular wall thickness, mm");
  gen_benchmark->add_option("--plate-x", gen_opt.benchmark.plate_x, "mm")
      ->capture_default_str();
  gen_benchmark->add_option("--plate-y", gen_opt.benchmark.plate_y, "mm")
      ->capture_default_str();
  gen_benchmark
      ->add_option("--plate-thickness", gen_opt.benchmark.plate_thickness, "mm")
      ->capture_default_str();
  add_gen_common(gen_benchmark);

  // --- inspect -------------------------------------------------------------
  InspectOptions inspect_opt;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Report mesh geometry and diagnostics");
  inspect->add_option("input", inspect_opt.input, "STL file")->required();
  inspect->add_flag("--json", inspect_opt.json, "Emit JSON instead of text");
  inspect->add_option("--reference-area", inspect_opt.reference_area,
                      "As-designed surface area (mm^2) for the quality scale");
  inspect->add_option("--thin-cap", inspect_opt.thin_cap,
                      "Also detect thin regions up to this thickness (mm)");
  inspect->add_option("--samples", inspect_opt.samples,
                      "Sample count for thin-region detection")
      ->capture_default_str();
  inspect->add_option("--seed", inspect_opt.seed,
                      "Seed for randomized sampling")
      ->capture_default_str();
  inspect->add_option("--overhang-threshold", inspect_opt.overhang_threshold,
                      "Also detect overhangs steeper than this angle (deg)");
  inspect->add_option("--build-dir", inspect_opt.build_dir,
                      "Build direction x,y,z")
      ->delimiter(',')
      ->expected(3);

  // --- curvature -----------------------------------------------------------
  CurvatureOptions curvature_opt;
  CLI::App* curvature = app.add_subcommand(
      "curvature", "Discrete mean-curvature histogram and modality");
  curvature->add_option("input", curvature_opt.input, "STL file")->required();
  curvature->add_option("--bins", curvature_opt.bins, "Histogram bin count")
      ->capture_default_str();
  curvature->add_flag("--json", curvature_opt.json, "Emit JSON instead of text");
  curvature->add_option("--csv", curvature_opt.csv_path,
                        "Write the histogram as CSV to this path ('-' = stdout)");

  // --- score ---------------------------------------------------------------
  ScoreOptions score_opt;
  CLI::App* score =
      app.add_subcommand("score", "Printability score for one technology");
  score->add_option("input", score_opt.input, "STL file");
  score->add_option("--inputs", score_opt.inputs,
                    "Score several STL files (output keeps this order)");
  score->add_option("--manifest", score_opt.manifest_path,
                    "Feature manifest JSON");
  CLI::Option* tech_opt =
      score->add_option("--tech", score_opt.tech, "Technology profile name")
          ->capture_default_str();
  score->add_option("--tech-file", score_opt.tech_file,
                    "Technology profile JSON file")
      ->excludes(tech_opt);
  CLI::Option* app_opt =
      score->add_option("--app", score_opt.app, "Application profile name")
          ->capture_default_str();
  score->add_option("--app-file", score_opt.app_file,
                    "Application profile JSON file")
      ->excludes(app_opt);
  score->add_option("--reference-area", score_opt.reference_area,
                    "As-designed surface area (mm^2); overrides the manifest");
  score->add_option("--k", score_opt.k,
                    "Override every global characteristic significance");
  score->add_option("--classify-thresholds", score_opt.classify,
                    "printable,risky score boundaries")
      ->delimiter(',')
      ->expected(2);
  score->add_flag("--json", score_opt.json, "Emit JSON instead of text");

  // --- compare ---------------------------------------------------------------
  ScoreOptions compare_opt;
  CLI::App* compare = app.add_subcommand(
      "compare", "Rank technologies by printability score");
  compare->add_option("input", compare_opt.input, "STL file")->required();
  compare->add_option("--manifest", compare_opt.manifest_path,
                      "Feature manifest JSON");
  compare->add_option("--techs", compare_opt.techs,
                      "Technology names, or 'all'")
      ->delimiter(',');
  CLI::Option* capp_opt =
      compare->add_option("--app", compare_opt.app, "Application profile name")
          ->capture_default_str();
  compare->add_option("--app-file", compare_opt.app_file,
                      "Application profile JSON file")
      ->excludes(capp_opt);
  compare->add_option("--reference-area", compare_opt.reference_area,
                      "As-designed surface area (mm^2); overrides the manifest");
  compare->add_option("--k", compare_opt.k,
                      "Override every global characteristic significance");
  compare->add_option("--classify-thresholds", compare_opt.classify,
                      "printable,risky score boundaries")
      ->delimiter(',')
      ->expected(2);
  compare->add_flag("--json", compare_opt.json, "Emit JSON instead of text");

  try {
    app.parse(argc, argv);

    if (gen->parsed()) {
      gen_opt.primitive.box_extents = {gen_opt.box_extents[0],
                                       gen_opt.box_extents[1],
                                       gen_opt.box_extents[2]};
      if (gen_sphere->parsed()) {
        gen_opt.primitive.kind = printscore::PrimitiveKind::kSphere;
        return write_generated(printscore::gen_primitive(gen_opt.primitive),
                               gen_opt, false);
      }
      if (gen_uvsphere->parsed()) {
        gen_opt.primitive.kind = printscore::PrimitiveKind::kUvSphere;
        return write_generated(printscore::gen_primitive(gen_opt.primitive),
                               gen_opt, false);
      }
      if (gen_cylinder->parsed()) {
        gen_opt.primitive.kind = printscore::PrimitiveKind::kCylinder;
        return write_generated(printscore::gen_primitive(gen_opt.primitive),
                               gen_opt, false);
      }
      if (gen_torus->parsed()) {
        gen_opt.primitive.kind = printscore::PrimitiveKind::kTorus;
        return write_generated(printscore::gen_primitive(gen_opt.primitive),
                               gen_opt, false);
      }
      if (gen_box->parsed()) {
        gen_opt.primitive.kind = printscore::PrimitiveKind::kBox;
        return write_generated(printscore::gen_primitive(gen_opt.primitive),
                               gen_opt, false);
      }
      // benchmark: start from the preset, then lay explicit ladders on top.
      printscore::BenchmarkSpec spec;
      if (!gen_opt.preset.empty()) {
        spec = printscore::benchmark_preset(gen_opt.preset);
      }
      auto take = [&](const std::string& flag, auto member) {
        if (gen_benchmark->count(flag) > 0) {
          spec.*member = gen_opt.benchmark.*member;
        }
      };
      take("--name", &printscore::BenchmarkSpec::name);
      take("--walls", &printscore::BenchmarkSpec::supported_wall_thicknesses);
      take("--unsupported-walls",
           &printscore::BenchmarkSpec::unsupported_wall_thicknesses);
      take("--holes", &printscore::BenchmarkSpec::hole_diameters);
      take("--overhangs", &printscore::BenchmarkSpec::overhang_angles_deg);
      take("--bridges", &printscore::BenchmarkSpec::bridge_thicknesses);
      take("--emboss", &printscore::BenchmarkSpec::emboss_sizes);
      take("--engrave", &printscore::BenchmarkSpec::engrave_sizes);
      take("--pins", &printscore::BenchmarkSpec::pin_diameters);
      take("--domes", &printscore::BenchmarkSpec::dome_radii);
      take("--plate-x", &printscore::BenchmarkSpec::plate_x);
      take("--plate-y", &printscore::BenchmarkSpec::plate_y);
      take("--plate-thickness", &printscore::BenchmarkSpec::plate_thickness);
      if (gen_benchmark->count("--circular-wall") > 0) {
        spec.circular_wall_thickness = gen_opt.circular_wall;
      }
      spec.triangle_cap = gen_opt.primitive.triangle_cap;
      return write_generated(printscore::gen_benchmark(spec), gen_opt, true);
    }
    if (inspect->parsed()) return run_inspect(inspect_opt);
    if (curvature->parsed()) return run_curvature(curvature_opt);
    if (score->parsed()) return run_score(score_opt);
    if (compare->parsed()) return run_compare(compare_opt);
    return 2;  // unreachable: require_subcommand(1)
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
