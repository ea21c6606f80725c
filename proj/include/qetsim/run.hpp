#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qetsim/config.hpp"

namespace qetsim {

struct RunOutput {
  std::vector<std::filesystem::path> files;
  // Derived quantities (peak depths, fitted velocities, ...); appended to the
  // sidecar as comments and printed by the CLI.
  std::map<std::string, std::string> report;
};

// Executes a validated run description and writes its data files plus a
// re-runnable sidecar under out_dir. Deterministic: identical configs give
// byte-identical files. extra_report entries are merged into the sidecar.
RunOutput execute_config(const RunConfig& config, const std::filesystem::path& out_dir,
                         const std::map<std::string, std::string>& extra_report = {});

}  // namespace qetsim
