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

// End-to-end tests that drive the installed CLI binary as a subprocess. The
// binary path comes from the PRINTSCORE_CLI environment variable, which the
// CTest registration sets to the freshly built executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "printscore/features.hpp"
#include "printscore/profiles.hpp"
#include "printscore/stl.hpp"

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string& cli_path() {
  static const std::string path = [] {
    const char* env = std::getenv("PRINTSCORE_CLI");
    return std::string(env ? env : "");
  }();
  return path;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "printscore_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI with the given arguments (and optional environment prefix),
// capturing exit code, stdout, and stderr.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = env_prefix + cli_path() + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_text(out);
  result.err = read_text(err);
  return result;
}

nlohmann::json parse_stdout(const RunResult& result) {
  return nlohmann::json::parse(result.out);
}

}  // namespace

#define REQUIRE_CLI_AVAILABLE()                         \
  do {                                                  \
    if (cli_path().empty()) {                           \
      SKIP("PRINTSCORE_CLI not set; run through ctest"); \
    }                                                   \
  } while (0)

TEST_CASE("gen produces the requested tessellation", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "sphere_l2.stl";
  const RunResult result =
      run_cli("gen sphere --diameter 30 --level 2 -o " + stl.string());
  REQUIRE(result.exit_code == 0);
  const printscore::TriangleMesh mesh = printscore::read_stl_file(stl.string());
  CHECK(mesh.triangles.size() == 320);  // 20 * 4^2

  SECTION("generation is byte-deterministic") {
    const fs::path again = work_dir() / "sphere_l2_again.stl";
    REQUIRE(run_cli("gen sphere --diameter 30 --level 2 -o " + again.string())
                .exit_code == 0);
    CHECK(read_text(stl) == read_text(again));
  }
}

TEST_CASE("gen rejects invalid specs with exit code 2", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "bad.stl";
  const RunResult result =
      run_cli("gen sphere --diameter -1 -o " + stl.string());
  CHECK(result.exit_code == 2);
  CHECK(!result.err.empty());
  CHECK(!fs::exists(stl));
}

TEST_CASE("gen benchmark writes the feature manifest", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "plate.stl";
  const RunResult result =
      run_cli("gen benchmark --walls 0.3,0.5,1.0,1.5 -o " + stl.string());
  REQUIRE(result.exit_code == 0);

  const printscore::FeatureManifest manifest = printscore::load_manifest(
      (work_dir() / "plate.manifest.json").string());
  REQUIRE(manifest.features.size() == 4);
  for (const printscore::FeatureInstance& f : manifest.features) {
    CHECK(f.kind == printscore::FeatureKind::kSupportedWall);
  }
  CHECK(manifest.features[0].d == 0.3);
  CHECK(manifest.features[3].d == 1.5);
  REQUIRE(manifest.reference_area_mm2.has_value());
}

TEST_CASE("inspect reports exact volume for a cube", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "cube.stl";
  REQUIRE(run_cli("gen box --extents 10,10,10 --level 1 -o " + stl.string())
              .exit_code == 0);
  const RunResult result = run_cli("inspect " + stl.string() + " --json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json j = parse_stdout(result);
  CHECK(j["volume_mm3"].get<double>() == Approx(1000.0).margin(1e-9));
  CHECK(j["volume_m3"].get<double>() == Approx(1e-6).margin(1e-18));
  CHECK(j["surface_area_mm2"].get<double>() == Approx(600.0).margin(1e-9));
  CHECK(j["diagnostics"]["watertight"].get<bool>());
  CHECK(j["warnings"].empty());
}

TEST_CASE("inspect flags open meshes without failing", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  printscore::TriangleMesh open_mesh;
  open_mesh.name = "open";
  open_mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  open_mesh.triangles = {{{0, 1, 2}}};
  const fs::path stl = work_dir() / "open.stl";
  printscore::write_stl_file(open_mesh, stl.string());

  const RunResult result = run_cli("inspect " + stl.string() + " --json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json j = parse_stdout(result);
  CHECK(j["volume_mm3"].is_null());
  CHECK_FALSE(j["diagnostics"]["watertight"].get<bool>());
  REQUIRE(j["warnings"].size() == 1);

  const RunResult text = run_cli("inspect " + stl.string());
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("volume_mm3: unavailable") != std::string::npos);
  CHECK(text.out.find("warning:") != std::string::npos);
}

TEST_CASE("curvature summarizes modality", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "sphere_l3.stl";
  REQUIRE(run_cli("gen sphere --diameter 30 --level 3 -o " + stl.string())
              .exit_code == 0);

  SECTION("a sphere is unimodal around 1/r") {
    const RunResult result = run_cli("curvature " + stl.string() + " --json");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json j = parse_stdout(result);
    CHECK(j["modes"].get<int>() == 1);
    CHECK_FALSE(j["bimodal"].get<bool>());
    CHECK(j["mean"].get<double>() == Approx(1.0 / 15.0).epsilon(0.02));
    CHECK(j["histogram"]["edges"].size() == 65);
    CHECK(j["histogram"]["counts"].size() == 64);
  }

  SECTION("zero bins is a usage error") {
    const RunResult result = run_cli("curvature " + stl.string() + " --bins 0");
    CHECK(result.exit_code == 2);
  }

  SECTION("csv export matches the histogram") {
    const fs::path csv = work_dir() / "hist.csv";
    const RunResult result =
        run_cli("curvature " + stl.string() + " --csv " + csv.string());
    REQUIRE(result.exit_code == 0);
    const std::string text = read_text(csv);
    CHECK(text.rfind("bin_low,bin_high,count\n", 0) == 0);
  }
}

TEST_CASE("score matches the library and the reference values", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "sphere_score.stl";
  REQUIRE(run_cli("gen uvsphere --diameter 30 --stacks 193 -o " + stl.string())
              .exit_code == 0);
  const std::string ref_area = "2827.4333882308138";  // 900*pi

  SECTION("fdm at k=0.1 lands on the sphere reference score") {
    const RunResult result =
        run_cli("score " + stl.string() + " --tech fdm --app general --k 0.1" +
                " --reference-area " + ref_area + " --json");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json j = parse_stdout(result);
    CHECK(j["score"].get<double>() == Approx(98.379).margin(0.15));
    CHECK(j["technology"] == "fdm");
    CHECK(j["quality_scale_source"] == "user");
    CHECK(j["classification"] == "printable");
  }

  SECTION("text and JSON agree digit for digit") {
    const std::string args = "score " + stl.string() +
                             " --tech fdm --reference-area " + ref_area;
    const RunResult text = run_cli(args);
    const RunResult json = run_cli(args + " --json");
    REQUIRE(text.exit_code == 0);
    REQUIRE(json.exit_code == 0);
    const nlohmann::json j = parse_stdout(json);
    for (const char* key :
         {"score", "success_probability", "quality_scale"}) {
      const std::string numeral = nlohmann::json(j[key].get<double>()).dump();
      INFO(key << " = " << numeral);
      CHECK(text.out.find(std::string(key) + ": " + numeral) !=
            std::string::npos);
    }
    // Per-feature and per-characteristic values: spot-check one line.
    const std::string ds =
        nlohmann::json(j["global"]["characteristics"][0]["defect_score"]
                           .get<double>())
            .dump();
    CHECK(text.out.find("defect_score=" + ds) != std::string::npos);
  }

  SECTION("JSON output is byte-deterministic") {
    const std::string args = "score " + stl.string() +
                             " --tech fdm --reference-area " + ref_area +
                             " --json";
    CHECK(run_cli(args).out == run_cli(args).out);
  }

  SECTION("missing reference area warns and assumes a perfect mesh") {
    const RunResult result =
        run_cli("score " + stl.string() + " --tech fdm --json");
    REQUIRE(result.exit_code == 0);
    const nlohmann::json j = parse_stdout(result);
    CHECK(j["quality_scale"] == 1.0);
    CHECK(j["quality_scale_source"] == "assumed");
    REQUIRE(!j["warnings"].empty());
  }

  SECTION("unknown technology exits 2 and lists the options") {
    const RunResult result = run_cli("score " + stl.string() + " --tech sls");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("binder_jetting") != std::string::npos);
    CHECK(result.err.find("material_jetting") != std::string::npos);
  }

  SECTION("a manifest feature lowers the score by its survival factor") {
    printscore::FeatureManifest manifest;
    manifest.source = "authored";
    printscore::FeatureInstance wall;
    wall.kind = printscore::FeatureKind::kSupportedWall;
    wall.label = "wall_1";
    wall.d = 0.3;
    wall.significance = 1.0;
    manifest.features.push_back(wall);
    const fs::path mpath = work_dir() / "wall.manifest.json";
    printscore::save_manifest(manifest, mpath.string());

    const std::string base_args = "score " + stl.string() +
                                  " --tech fdm --reference-area " + ref_area +
                                  " --json";
    const nlohmann::json without = parse_stdout(run_cli(base_args));
    const nlohmann::json with =
        parse_stdout(run_cli(base_args + " --manifest " + mpath.string()));
    REQUIRE(with["features"].size() == 1);
    const double p_f = with["features"][0]["failure_probability"].get<double>();
    // sigma(0.8 - 0.3) * 1.0
    CHECK(p_f == Approx(1.0 / (1.0 + std::exp(-0.5))).epsilon(1e-12));
    CHECK(with["score"].get<double>() ==
          Approx(without["score"].get<double>() * (1.0 - p_f)).epsilon(1e-12));
  }
}

TEST_CASE("score batches multiple inputs in argument order", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path a = work_dir() / "batch_a.stl";
  const fs::path b = work_dir() / "batch_b.stl";
  REQUIRE(run_cli("gen box --extents 10,10,10 -o " + a.string()).exit_code == 0);
  REQUIRE(run_cli("gen sphere --level 2 -o " + b.string()).exit_code == 0);

  const RunResult result = run_cli("score --inputs " + a.string() + " " +
                                   b.string() + " --tech fdm --json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json j = parse_stdout(result);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["input"] == a.string());
  CHECK(j[1]["input"] == b.string());
}

TEST_CASE("compare ranks all technologies with full breakdowns", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "compare.stl";
  REQUIRE(run_cli("gen sphere --level 3 -o " + stl.string()).exit_code == 0);
  const RunResult result = run_cli(
      "compare " + stl.string() +
      " --reference-area 2827.4333882308138 --json");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json j = parse_stdout(result);
  REQUIRE(j["reports"].size() == 3);
  CHECK(j["reports"][0]["technology"] == "material_jetting");
  CHECK(j["reports"][1]["technology"] == "binder_jetting");
  CHECK(j["reports"][2]["technology"] == "fdm");
  double previous = 101.0;
  for (const auto& report : j["reports"]) {
    const double score = report["score"].get<double>();
    CHECK(score <= previous);
    previous = score;
    // Per-term breakdown present for every technology.
    CHECK(report["global"]["characteristics"].size() == 4);
    CHECK(report.contains("features"));
  }

  SECTION("a single technology degenerates to one row") {
    const RunResult one = run_cli("compare " + stl.string() +
                                  " --techs fdm --json");
    REQUIRE(one.exit_code == 0);
    CHECK(parse_stdout(one)["reports"].size() == 1);
  }
}

TEST_CASE("profile directory overrides built-ins end to end", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path stl = work_dir() / "override.stl";
  REQUIRE(run_cli("gen box --extents 10,10,10 -o " + stl.string()).exit_code ==
          0);

  const fs::path dir = work_dir() / "profiles";
  fs::create_directories(dir);
  printscore::TechnologyProfile perfect = printscore::fdm_profile();
  perfect.ds_perfect = {0.0, 0.0, 0.0, 0.0};
  {
    std::ofstream out(dir / "fdm.json");
    out << printscore::technology_profile_to_json(perfect).dump(2);
  }

  const std::string args =
      "score " + stl.string() + " --tech fdm --reference-area 600 --json";
  const nlohmann::json builtin = parse_stdout(run_cli(args));
  const nlohmann::json overridden = parse_stdout(
      run_cli(args, "PRINTSCORE_PROFILE_DIR=" + dir.string() + " "));
  CHECK(builtin["score"].get<double>() == Approx(98.4093760225).margin(1e-6));
  CHECK(overridden["score"].get<double>() == 100.0);
}

TEST_CASE("score without any input is a usage error", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const RunResult result = run_cli("score --tech fdm");
  CHECK(result.exit_code == 2);
}

TEST_CASE("malformed mesh files exit with a runtime error", "[cli]") {
  REQUIRE_CLI_AVAILABLE();
  const fs::path bad = work_dir() / "truncated.stl";
  {
    std::ofstream out(bad, std::ios::binary);
    std::string bytes(80, 'x');        // binary header
    bytes += std::string("\xe8\x03\x00\x00", 4);  // claims 1000 triangles
    out << bytes;                       // ...but provides none
  }
  const RunResult result = run_cli("inspect " + bad.string());
  CHECK(result.exit_code == 1);
  CHECK(!result.err.empty());
}
