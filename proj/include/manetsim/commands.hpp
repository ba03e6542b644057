#pragma once

#include <iosfwd>
#include <string>

#include "manetsim/runconfig.hpp"

namespace manet {

/// Subcommand implementations.  Each writes schema-stable files under
/// cfg.output_dir plus a manifest, logs a short summary, and returns a
/// process exit code.

int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_collapse(const RunConfig& cfg, std::ostream& log);
int cmd_metrics(const RunConfig& cfg, std::ostream& log);

/// Re-derives a previous run's outputs from its manifest.
int cmd_replay(const std::string& manifest_path, int threads, std::ostream& log);

}  // namespace manet
