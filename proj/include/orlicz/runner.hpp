#pragma once

#include "orlicz/config.hpp"

namespace orlicz {

struct RunResult {
  int exit_code = 0;
  int hard_failures = 0;
  int hypothesis_failures = 0;
  std::vector<std::string> artifacts;  // paths written under the out directory
};

/// Dispatches the configured task, writes JSON-lines reports, CSV summaries,
/// and a run manifest under cfg.out. Report bodies are deterministic in
/// (config, seed); only the manifest carries a timestamp.
RunResult run(const ExperimentConfig& cfg);

RunResult run_config_file(const std::string& path);

}  // namespace orlicz
