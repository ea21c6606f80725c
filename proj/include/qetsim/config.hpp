#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qetsim/core.hpp"
#include "qetsim/io.hpp"

namespace qetsim {

enum class Command { SnrSweep, CurvatureProfile, QixSim, Observables, GatedPulse };

const char* command_name(Command c);  // snr_sweep, curvature_profile, ...
Command command_from_name(const std::string& name);

// Raw key/value entries as read from a config file, before schema validation.
// Keys are "section.key"; global keys (before any section header) are bare.
struct RawConfig {
  std::string origin;  // file path or a synthetic label
  std::map<std::string, std::string> entries;
  std::map<std::string, int> lines;  // 0 when set programmatically

  void set(const std::string& key, const std::string& value) {
    entries[key] = value;
    lines[key] = 0;
  }
};

// Fully validated run description. `entries` holds every schema key with
// canonical value text, defaults filled in; `defaulted` records which of
// them were not given explicitly.
struct RunConfig {
  Command command = Command::SnrSweep;
  std::map<std::string, std::string> entries;
  std::set<std::string> defaulted;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  bool flag(const std::string& key) const;

  std::string name() const { return text("name"); }
  std::uint64_t seed() const;
  UnitMode units() const;
  PhysicalConstants constants() const;
  std::vector<OutputFormat> formats() const;
};

// The documented structured key-value format: '#' comments, [section]
// headers, 'key = value' lines. Parse errors carry file and line.
RawConfig parse_config_file(const std::filesystem::path& path);
RawConfig parse_config_text(const std::string& text, const std::string& origin);

// Schema validation: unknown keys are rejected by name, missing required
// keys reported, values type-checked, bounds enforced, defaults filled.
RunConfig validate_config(const RawConfig& raw);

RunConfig parse_config(const std::filesystem::path& path);

// Serialization is the sidecar format: a valid config (re-parseable and
// re-runnable) with defaulted keys marked and report values appended as
// comments. Deterministic ordering, no timestamps.
std::string serialize_config(const RunConfig& config,
                             const std::map<std::string, std::string>& report = {});

}  // namespace qetsim
