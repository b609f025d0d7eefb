#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddvv/catalog.hpp"
#include "ddvv/construction.hpp"
#include "ddvv/surface.hpp"
#include "ddvv/transforms.hpp"
#include "ddvv/types.hpp"

namespace ddvv {

// Output paths; empty string = not requested. `obj_theta` picks the fiber
// angles of the exported slices (one OBJ block per angle, first angle only
// for n > 3 unless more are given).
struct OutputSpec {
  std::string samples;  // NDJSON, one record per chart point
  std::string report;   // single JSON object
  std::string obj;      // triangulated (u,v) slice at fixed fiber angle
  std::string curve;    // curve spec emitted by cmd_invert_holo
  std::vector<double> obj_theta;
};

// Parsed run configuration. The curve is fully resolved (builtin looked up,
// expressions parsed); grid fields left out of the file inherit the builtin's
// defaults or generic ones.
struct RunConfig {
  HolomorphicCurve curve;
  GridSpec grid;
  Tolerances tol;
  std::vector<AmbientMap> transforms;
  OutputSpec output;
  // command-specific knobs
  double quadric_d = 1.0;
  double invert_d = 1.0;
  double theorem4_d = 1.0;
  int theorem4_fiber_angles = 4;
  bool from_builtin = false;
};

// Reads and validates a JSON config file. Throws Error("ConfigError", ...)
// with the file path and, for malformed JSON, the parser's line/byte context.
RunConfig load_config(const std::string& path);

// Command-line surface shared by all commands.
struct CliOptions {
  std::string config_path;
  std::string out_path;        // overrides the command's primary artifact
  std::optional<int> workers;  // default: hardware concurrency
  std::optional<std::uint64_t> seed;
};

// Applies --out/--seed/--workers on top of a loaded config; returns the
// worker count to use.
int apply_cli_options(RunConfig& cfg, const CliOptions& opts,
                      const std::string& primary_artifact);

}  // namespace ddvv
