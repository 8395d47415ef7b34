#pragma once

#include <string>

#include "densgeo/config.hpp"

namespace densgeo {

/// CLI command bodies; they write their output files under the config's
/// output directory and return kExitOk. Typed errors propagate.
int cmd_shoot(const RunConfig& cfg);
int cmd_connect(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);
int cmd_profile(const RunConfig& cfg);

/// Dispatches a command and maps errors onto the exit-code contract:
/// 0 success, 2 config errors, 3 solver failures, 4 I/O failures.
int run_command(const std::string& name, const RunConfig& cfg) noexcept;

}  // namespace densgeo
