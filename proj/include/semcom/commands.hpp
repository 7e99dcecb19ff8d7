#pragma once

#include <string>

#include "semcom/config.hpp"

namespace semcom {

/*
 * Command implementations behind the CLI. Each writes its outputs under
 * <out_dir>/<run_id>/ together with a manifest.json describing the resolved
 * configuration and every file produced. All outputs except the manifest's
 * timestamps are pure functions of (config, seed).
 */

struct CommandResult {
  std::string run_dir;
  std::vector<std::string> outputs;
};

CommandResult cmd_run(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_robustness(const RunConfig& cfg);
CommandResult cmd_theory(const RunConfig& cfg);
CommandResult cmd_calibrate(const RunConfig& cfg);

}  // namespace semcom
