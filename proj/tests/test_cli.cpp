#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ddvv/commands.hpp"
#include "ddvv/config.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/runner.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace ddvv;
using doctest::Approx;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ddvv_cli_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string p = temp_path(name);
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_config_error(const std::string& body, const std::string& token) {
  static int counter = 0;
  std::string p = write_temp("bad" + std::to_string(counter++) + ".json", body);
  try {
    load_config(p);
    FAIL("expected ConfigError for: ", body);
  } catch (const Error& e) {
    CHECK(e.kind() == "ConfigError");
    CHECK(std::string(e.what()).find(token) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("builtin reference resolves curve and grid defaults") {
  std::string p = write_temp("builtin.json",
                             R"({"curve": {"builtin": "enneper-pair"}})");
  RunConfig cfg = load_config(p);
  CHECK(cfg.curve.name == "enneper-pair");
  CHECK(cfg.curve.n == 3);
  REQUIRE(cfg.curve.components.size() == 5);
  CHECK(cfg.from_builtin);
  CHECK(cfg.grid.nu == 10);
  CHECK(cfg.grid.nv == 10);
  CHECK(cfg.grid.ntheta == 8);
  CHECK(cfg.grid.u_min == Approx(0.6));
  CHECK(cfg.grid.u_max == Approx(1.2));
  CHECK(cfg.transforms.empty());
}

TEST_CASE("full custom config round-trips every section") {
  std::string body = R"({
    "curve": {
      "n": 3,
      "components": ["z", "i*z", "1", "1", "1"],
      "domain": {"kind": "disk", "radius": 2.5},
      "name": "flat"
    },
    "grid": {"nu": 4, "nv": 5, "ntheta": 6,
             "u_min": -0.5, "u_max": 0.5, "v_min": 0.1, "v_max": 0.9,
             "jitter": 0.25, "seed": 77},
    "tolerances": {"tol_eq": 1e-6, "eps_rank": 1e-10},
    "transform": [
      {"kind": "euclidean_inversion", "d": 2.0, "center": [0,0,0,0,1]},
      {"kind": "stereo_plane_to_sphere", "d": 1.0}
    ],
    "output": {"samples": "/tmp/s.ndjson", "report": "/tmp/r.json"},
    "quadric": {"d": 3.0},
    "invert": {"d": 1.5},
    "theorem4": {"d": 2.0, "fiber_angles": 6}
  })";
  RunConfig cfg = load_config(write_temp("full.json", body));
  CHECK(cfg.curve.name == "flat");
  CHECK(cfg.curve.domain.kind == Domain::Kind::Disk);
  CHECK(cfg.curve.domain.radius == Approx(2.5));
  CHECK(!cfg.from_builtin);
  CHECK(cfg.grid.nu == 4);
  CHECK(cfg.grid.nv == 5);
  CHECK(cfg.grid.ntheta == 6);
  CHECK(cfg.grid.jitter == Approx(0.25));
  CHECK(cfg.grid.seed == 77);
  CHECK(cfg.grid.u_min == Approx(-0.5));
  CHECK(cfg.tol.tol_eq == Approx(1e-6));
  CHECK(cfg.tol.eps_rank == Approx(1e-10));
  CHECK(cfg.tol.tol_frame == Approx(1e-6));  // untouched default
  REQUIRE(cfg.transforms.size() == 2);
  CHECK(cfg.transforms[0].kind == MapKind::EuclideanInversion);
  CHECK(cfg.transforms[0].d == Approx(2.0));
  CHECK(cfg.transforms[0].center[4] == Approx(1.0));
  CHECK(cfg.transforms[1].kind == MapKind::StereoPlaneToSphere);
  CHECK(cfg.output.samples == "/tmp/s.ndjson");
  CHECK(cfg.output.report == "/tmp/r.json");
  CHECK(cfg.quadric_d == Approx(3.0));
  CHECK(cfg.invert_d == Approx(1.5));
  CHECK(cfg.theorem4_d == Approx(2.0));
  CHECK(cfg.theorem4_fiber_angles == 6);
}

TEST_CASE("config rejections carry the offending detail") {
  try {
    load_config("/nonexistent/nowhere.json");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == "ConfigError");
  }
  expect_config_error(R"({"curve": )", "parse error");  // truncated JSON
  expect_config_error(R"([1, 2, 3])", "object");
  expect_config_error(R"({})", "missing 'curve'");
  expect_config_error(R"({"curve": {"builtin": "no-such"}})", "available");
  expect_config_error(R"({"curve": {"n": 3}})", "'builtin' or 'n'");
  expect_config_error(
      R"({"curve": {"n": 2, "components": ["z","z","z","z"]}})", ">= 3");
  expect_config_error(
      R"({"curve": {"n": 3, "components": ["z","z","z"]}})", "n + 2");
  expect_config_error(
      R"({"curve": {"n": 3, "components": ["z","i*z","1","1","z +"]}})",
      "component 4");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"}, "grid": {"nu": 0}})", "positive");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"}, "grid": {"u_min": 2, "u_max": 1}})",
      "u_min < u_max");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"}, "grid": {"jitter": 1.5}})",
      "jitter");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"}, "tolerances": {"tol_eq": 0}})",
      "positive");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"}, "tolerances": {"bogus": 1}})",
      "unknown tolerance");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"},
          "transform": [{"kind": "mystery"}]})",
      "unknown transform kind");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"},
          "transform": [{"kind": "euclidean_inversion", "d": -1}]})",
      "positive");
  expect_config_error(
      R"({"curve": {"builtin": "null-exp"},
          "transform": [{"kind": "euclidean_inversion", "center": [0,0]}]})",
      "center");
}

TEST_CASE("cli overrides land on the primary artifact") {
  std::string p = write_temp("ovr.json",
                             R"({"curve": {"builtin": "helicoid-pair"}})");
  RunConfig cfg = load_config(p);
  CliOptions opts;
  opts.out_path = "/tmp/somewhere.ndjson";
  opts.workers = 3;
  opts.seed = 42;
  int workers = apply_cli_options(cfg, opts, "samples");
  CHECK(workers == 3);
  CHECK(cfg.output.samples == "/tmp/somewhere.ndjson");
  CHECK(cfg.grid.seed == 42);

  RunConfig cfg2 = load_config(p);
  CliOptions plain;
  int def_workers = apply_cli_options(cfg2, plain, "curve");
  CHECK(def_workers >= 1);
  CHECK(cfg2.output.curve.empty());
  CHECK(cfg2.grid.seed == 0);
}

TEST_CASE("grid evaluation is identical for any worker count") {
  RunConfig cfg = load_config(write_temp(
      "det.json",
      R"({"curve": {"builtin": "enneper-pair"},
          "grid": {"nu": 4, "nv": 4, "ntheta": 2, "jitter": 0.3, "seed": 9}})"));
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  std::vector<SampleRecord> r1 =
      evaluate_grid(cfg.curve, pts, cfg.transforms, false, cfg.tol, 1);
  std::vector<SampleRecord> r5 =
      evaluate_grid(cfg.curve, pts, cfg.transforms, false, cfg.tol, 5);
  REQUIRE(r1.size() == r5.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].ok == r5[i].ok);
    CHECK(r1[i].s == r5[i].s);
    CHECK(r1[i].sN == r5[i].sN);
    CHECK(r1[i].residual == r5[i].residual);
    CHECK(r1[i].lambda == r5[i].lambda);
    CHECK(r1[i].phi == r5[i].phi);
  }

  std::string a = temp_path("a.ndjson"), b = temp_path("b.ndjson");
  write_samples_ndjson(a, r1);
  write_samples_ndjson(b, r5);
  std::string ba = slurp(a), bb = slurp(b);
  CHECK(ba == bb);
  CHECK(!ba.empty());

  // one parseable record per line, fixed leading key
  std::istringstream lines(ba);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.contains("index"));
    CHECK(j["index"] == count);
    ++count;
  }
  CHECK(count == static_cast<int>(r1.size()));
}

TEST_CASE("failed samples are recorded and do not abort the grid") {
  RunConfig cfg = load_config(write_temp(
      "pole.json",
      R"({"curve": {"builtin": "helicoid-pair-4"},
          "grid": {"nu": 2, "nv": 2, "ntheta": 3}})"));
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  REQUIRE(pts.size() == 36);  // 2 x 2 x 3 x 3, middle theta1 hits the pole
  std::vector<SampleRecord> recs =
      evaluate_grid(cfg.curve, pts, cfg.transforms, false, cfg.tol, 2);
  int bad = 0, good = 0;
  for (const SampleRecord& r : recs) {
    if (r.ok) {
      ++good;
    } else {
      ++bad;
      CHECK(r.error.find("SingularPoint") != std::string::npos);
    }
  }
  CHECK(good == 24);
  CHECK(bad == 12);
}

TEST_CASE("fmt_double survives the round trip") {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 2.5e17, 0.0, 6.02e23,
                   1.7976931348623157e308}) {
    std::string s = fmt_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(1.0) == "1");
}

TEST_CASE("verify command passes and writes a deterministic report") {
  std::string cfg_body =
      R"({"curve": {"builtin": "enneper-pair"},
          "grid": {"nu": 4, "nv": 4, "ntheta": 2}})";
  std::string p = write_temp("verify.json", cfg_body);
  RunConfig cfg1 = load_config(p);
  cfg1.output.report = temp_path("rep1.json");
  CHECK(cmd_verify(cfg1, 1) == 0);

  RunConfig cfg2 = load_config(p);
  cfg2.output.report = temp_path("rep2.json");
  CHECK(cmd_verify(cfg2, 4) == 0);
  CHECK(slurp(cfg1.output.report) == slurp(cfg2.output.report));

  nlohmann::json rep = nlohmann::json::parse(slurp(cfg1.output.report));
  CHECK(rep["command"] == "verify");
  CHECK(rep["pass"] == true);
}

TEST_CASE("verify command fails under an impossible tolerance") {
  RunConfig cfg = load_config(write_temp(
      "verify_tight.json",
      R"({"curve": {"builtin": "enneper-pair"},
          "grid": {"nu": 3, "nv": 3, "ntheta": 2},
          "tolerances": {"tol_eq": 1e-18}})"));
  CHECK(cmd_verify(cfg, 2) == 1);
}

TEST_CASE("isotropy command fails on a defective curve") {
  RunConfig cfg = load_config(write_temp(
      "iso_bad.json",
      R"({"curve": {"n": 3, "components": ["z", "z", "0", "0", "0"],
                    "name": "defective"},
          "grid": {"nu": 3, "nv": 3, "ntheta": 2,
                   "u_min": 0.2, "u_max": 0.8, "v_min": 0.2, "v_max": 0.8}})"));
  cfg.output.report = temp_path("iso_bad_rep.json");
  CHECK(cmd_isotropy(cfg, 1) == 1);
  nlohmann::json rep = nlohmann::json::parse(slurp(cfg.output.report));
  CHECK(rep["pass"] == false);
  CHECK(rep["max_isotropy_defect"].get<double>() > 1.0);
}

TEST_CASE("transform command refuses non-euclidean chains") {
  RunConfig cfg = load_config(write_temp(
      "lorentz.json",
      R"({"curve": {"builtin": "enneper-pair"},
          "grid": {"nu": 3, "nv": 3, "ntheta": 2},
          "transform": [{"kind": "lorentz_inversion", "d": 1.0}]})"));
  try {
    cmd_transform(cfg, 1);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == "ConfigError");
  }
}

TEST_CASE("build command emits the mesh and sample artifacts") {
  RunConfig cfg = load_config(write_temp(
      "build.json",
      R"({"curve": {"builtin": "helicoid-pair"},
          "grid": {"nu": 4, "nv": 4, "ntheta": 2}})"));
  cfg.output.samples = temp_path("build.ndjson");
  cfg.output.obj = temp_path("build.obj");
  CHECK(cmd_build(cfg, 2) == 0);
  std::string obj = slurp(cfg.output.obj);
  CHECK(obj.find("v ") != std::string::npos);
  CHECK(obj.find("f ") != std::string::npos);
  CHECK(obj.find("# slice") != std::string::npos);
  CHECK(!slurp(cfg.output.samples).empty());
}

TEST_CASE("symbolic inversion command emits a loadable curve spec") {
  RunConfig cfg = load_config(write_temp(
      "inv.json", R"({"curve": {"builtin": "helicoid-pair"}})"));
  cfg.output.curve = temp_path("inverted.json");
  CHECK(cmd_invert_holo(cfg, 2) == 0);

  RunConfig loaded = load_config(cfg.output.curve);
  CHECK(loaded.curve.n == 3);
  REQUIRE(loaded.curve.components.size() == 5);
  // quadric reciprocates: Q_inv = d^4 / Q with d = 1, Q = 1 - z^2
  Complex z(0.4, 0.3);
  Complex qi = quadric_value(loaded.curve, z);
  CHECK(std::abs(qi * (1.0 - z * z) - 1.0) < 1e-12);
}

TEST_CASE("quadric and canonical commands succeed on the catalog") {
  RunConfig cfg = load_config(write_temp(
      "quadric.json", R"({"curve": {"builtin": "null-exp"},
                          "grid": {"nu": 3, "nv": 3, "ntheta": 2}})"));
  cfg.output.report = temp_path("quadric_rep.json");
  CHECK(cmd_quadric(cfg, 1) == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(cfg.output.report));
  CHECK(rep["k"] == "0");
  CHECK(rep.contains("padded_euclidean_value"));

  RunConfig cfg2 = load_config(write_temp(
      "canon.json", R"({"curve": {"builtin": "enneper-pair"},
                        "grid": {"nu": 3, "nv": 3, "ntheta": 2}})"));
  CHECK(cmd_canonical(cfg2, 2) == 0);
}

TEST_CASE("catalog command writes the entry table") {
  std::string rep = temp_path("catalog.json");
  CHECK(cmd_catalog(rep) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(rep));
  REQUIRE(j["entries"].size() == 6);
  CHECK(j["entries"][0].contains("name"));
  CHECK(j["entries"][0].contains("n"));
}
