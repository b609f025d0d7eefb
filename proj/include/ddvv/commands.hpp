#pragma once

#include <string>

#include "ddvv/config.hpp"

namespace ddvv {

// Command entry points behind the CLI. Each prints one [PASS]/[FAIL] summary
// line (FAIL lines name the violated check, the worst sample's chart point
// and the measured value vs. its tolerance), writes whatever artifacts the
// config requests, and returns the process exit code: 0 all checks pass,
// 1 a verification failed. Input/config problems are thrown as
// Error("ConfigError"/"EmptyGrid"/...) for the caller to map to exit 2.
int cmd_isotropy(const RunConfig& cfg, int workers);
int cmd_build(const RunConfig& cfg, int workers);
int cmd_verify(const RunConfig& cfg, int workers);
int cmd_canonical(const RunConfig& cfg, int workers);
int cmd_transform(const RunConfig& cfg, int workers);
int cmd_quadric(const RunConfig& cfg, int workers);
int cmd_invert_holo(const RunConfig& cfg, int workers);
int cmd_theorem4(const RunConfig& cfg, int workers);
int cmd_catalog(const std::string& report_path);

}  // namespace ddvv
