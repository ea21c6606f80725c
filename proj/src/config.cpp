#include "qetsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qetsim/curvature.hpp"
#include "qetsim/stress_energy.hpp"
#include "qetsim/sweep.hpp"
#include "qetsim/version.hpp"

namespace qetsim {

const char* command_name(Command c) {
  switch (c) {
    case Command::SnrSweep: return "snr_sweep";
    case Command::CurvatureProfile: return "curvature_profile";
    case Command::QixSim: return "qix_sim";
    case Command::Observables: return "observables";
    case Command::GatedPulse: return "gated_pulse";
  }
  return "?";
}

Command command_from_name(const std::string& name) {
  if (name == "snr_sweep") return Command::SnrSweep;
  if (name == "curvature_profile") return Command::CurvatureProfile;
  if (name == "qix_sim") return Command::QixSim;
  if (name == "observables") return Command::Observables;
  if (name == "gated_pulse") return Command::GatedPulse;
  throw validation_error("unknown command '" + name +
                         "' (expected snr_sweep, curvature_profile, qix_sim, observables or "
                         "gated_pulse)");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream out;
  out << "config " << origin;
  if (line > 0) out << ":" << line;
  out << ": " << msg;
  throw validation_error(out.str());
}

}  // namespace

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
  RawConfig raw;
  raw.origin = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(origin, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail_at(origin, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_at(origin, lineno, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_at(origin, lineno, "empty key");
    if (value.empty()) fail_at(origin, lineno, "empty value for key '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (raw.entries.count(full)) {
      fail_at(origin, lineno, "duplicate key '" + full + "'");
    }
    raw.entries[full] = value;
    raw.lines[full] = lineno;
  }
  return raw;
}

RawConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

namespace {

enum class Kind { Number, Integer, Boolean, Text, Choice };
enum class Bound { None, Positive, NonNegative, AtLeastTwo };

struct FieldSpec {
  std::string key;
  Kind kind;
  bool required = false;
  const char* fallback = nullptr;  // nullptr + !required: optional, no default
  Bound bound = Bound::None;
  std::vector<std::string> choices = {};
};

std::vector<FieldSpec> global_fields() {
  return {
      {"command", Kind::Choice, true, nullptr, Bound::None,
       {"snr_sweep", "curvature_profile", "qix_sim", "observables", "gated_pulse"}},
      {"name", Kind::Text, false, nullptr},
      {"seed", Kind::Integer, false, "1", Bound::NonNegative},
      {"units", Kind::Choice, false, "si", Bound::None, {"si", "natural"}},
      {"formats", Kind::Text, false, "csv,json"},
  };
}

std::vector<FieldSpec> axis_fields(const std::string& section, bool required) {
  return {
      {section + ".param", Kind::Text, required},
      {section + ".min", Kind::Number, required},
      {section + ".max", Kind::Number, required},
      {section + ".points", Kind::Integer, false, "101", Bound::AtLeastTwo},
      {section + ".scale", Kind::Choice, false, "linear", Bound::None, {"linear", "log10"}},
  };
}

std::vector<FieldSpec> command_fields(Command cmd) {
  std::vector<FieldSpec> fields;
  auto append = [&](std::vector<FieldSpec> extra) {
    fields.insert(fields.end(), extra.begin(), extra.end());
  };
  switch (cmd) {
    case Command::SnrSweep: {
      std::vector<std::string> models = model_ids();
      fields.push_back({"model.id", Kind::Choice, false, "snr_parametric", Bound::None, models});
      append(axis_fields("axis1", true));
      append(axis_fields("axis2", false));
      fields.push_back({"contour.levels", Kind::Text, false, nullptr});
      fields.push_back({"contour.space", Kind::Choice, false, "value", Bound::None,
                        {"value", "log10"}});
      break;
    }
    case Command::CurvatureProfile:
      append({{"array.architecture", Kind::Choice, true, nullptr, Bound::None,
               {"single", "uncoordinated", "synchronized"}},
              {"array.n_units", Kind::Integer, false, "1", Bound::Positive},
              {"array.spacing", Kind::Number, false, "0", Bound::NonNegative},
              {"array.epsilon", Kind::Number, false, "1e-11", Bound::Positive},
              {"array.sigma", Kind::Number, true, nullptr, Bound::Positive},
              {"array.tau", Kind::Number, false, "1", Bound::Positive},
              {"array.x0", Kind::Number, false, "0"},
              {"array.t0", Kind::Number, false, "0"},
              {"array.sample_t", Kind::Number, false, "0"},
              {"grid.x_min", Kind::Number, true},
              {"grid.x_max", Kind::Number, true},
              {"grid.n_x", Kind::Integer, false, "2001", Bound::AtLeastTwo},
              {"curvature.sign", Kind::Choice, false, "dip_negative", Bound::None,
               {"dip_negative", "inverted"}},
              {"curvature.calibration", Kind::Number, false, "1", Bound::Positive}});
      break;
    case Command::QixSim:
      append({{"chain.n_events", Kind::Integer, true, nullptr, Bound::Positive},
              {"chain.spacing", Kind::Number, true, nullptr, Bound::Positive},
              {"chain.sigma", Kind::Number, true, nullptr, Bound::Positive},
              {"chain.gate_interval", Kind::Number, true, nullptr, Bound::Positive},
              {"chain.epsilon", Kind::Number, false, "1", Bound::Positive},
              {"chain.tau_e", Kind::Number, false, "0", Bound::NonNegative},
              {"grid.x_min", Kind::Number, true},
              {"grid.x_max", Kind::Number, true},
              {"grid.n_x", Kind::Integer, false, "512", Bound::AtLeastTwo},
              {"grid.t_min", Kind::Number, true},
              {"grid.t_max", Kind::Number, true},
              {"grid.n_t", Kind::Integer, false, "512", Bound::AtLeastTwo},
              {"curvature.sign", Kind::Choice, false, "dip_negative", Bound::None,
               {"dip_negative", "inverted"}},
              {"track.window_skip", Kind::Number, false, "0.1", Bound::NonNegative},
              {"output.source", Kind::Boolean, false, "false"}});
      break;
    case Command::Observables: {
      append({{"signal.delta_r", Kind::Number, false, "1e-36"},
              {"instrument.arm_length", Kind::Number, false, "1", Bound::Positive},
              {"instrument.wavelength", Kind::Number, false, "1e-6", Bound::Positive},
              {"instrument.baseline", Kind::Number, false, "1", Bound::Positive},
              {"instrument.clock_extent", Kind::Number, false, "1e-3", Bound::Positive},
              {"instrument.clock_duration", Kind::Number, false, "1e-3", Bound::Positive},
              {"instrument.clock_stability", Kind::Number, false, "1e-18", Bound::Positive},
              {"instrument.strain_length", Kind::Number, false, "1", Bound::Positive}});
      append(axis_fields("axis1", false));
      break;
    }
    case Command::GatedPulse:
      append({{"pulse.n_units", Kind::Integer, true, nullptr, Bound::Positive},
              {"pulse.delta_r0", Kind::Number, true, nullptr, Bound::Positive},
              {"pulse.t0", Kind::Number, false, "0"},
              {"pulse.sigma_t", Kind::Number, true, nullptr, Bound::Positive},
              {"time.t_min", Kind::Number, true},
              {"time.t_max", Kind::Number, true},
              {"time.n_t", Kind::Integer, false, "401", Bound::AtLeastTwo},
              {"instrument.baseline", Kind::Number, false, "1", Bound::Positive},
              {"instrument.strain_length", Kind::Number, false, "1", Bound::Positive},
              {"curvature.sign", Kind::Choice, false, "dip_negative", Bound::None,
               {"dip_negative", "inverted"}}});
      break;
  }
  return fields;
}

int line_of(const RawConfig& raw, const std::string& key) {
  auto it = raw.lines.find(key);
  return it == raw.lines.end() ? 0 : it->second;
}

double parse_number(const RawConfig& raw, const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + value.size() || !std::isfinite(v)) {
    fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be a finite number, got '" +
                                               value + "'");
  }
  return v;
}

std::int64_t parse_integer(const RawConfig& raw, const std::string& key,
                           const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end != begin + value.size()) {
    fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be an integer, got '" +
                                               value + "'");
  }
  return v;
}

bool parse_boolean(const RawConfig& raw, const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be a boolean, got '" + value +
                                             "'");
}

void check_bound(const RawConfig& raw, const std::string& key, Bound bound, double v) {
  switch (bound) {
    case Bound::None:
      break;
    case Bound::Positive:
      if (!(v > 0.0)) {
        fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be > 0, got " +
                                                   format_double(v));
      }
      break;
    case Bound::NonNegative:
      if (!(v >= 0.0)) {
        fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be >= 0, got " +
                                                   format_double(v));
      }
      break;
    case Bound::AtLeastTwo:
      if (!(v >= 2.0)) {
        fail_at(raw.origin, line_of(raw, key), "key '" + key + "' must be >= 2, got " +
                                                   format_double(v));
      }
      break;
  }
}

// Canonicalize one field into config.entries; returns true when present.
bool apply_field(const RawConfig& raw, const FieldSpec& field, RunConfig& config) {
  auto it = raw.entries.find(field.key);
  std::string value;
  bool is_default = false;
  if (it != raw.entries.end()) {
    value = it->second;
  } else if (field.fallback != nullptr) {
    value = field.fallback;
    is_default = true;
  } else if (field.required) {
    fail_at(raw.origin, 0, std::string("missing required key '") + field.key + "'");
  } else {
    return false;
  }

  std::string canonical;
  switch (field.kind) {
    case Kind::Number: {
      const double v = parse_number(raw, field.key, value);
      check_bound(raw, field.key, field.bound, v);
      canonical = format_double(v);
      break;
    }
    case Kind::Integer: {
      const std::int64_t v = parse_integer(raw, field.key, value);
      check_bound(raw, field.key, field.bound, static_cast<double>(v));
      canonical = std::to_string(v);
      break;
    }
    case Kind::Boolean:
      canonical = parse_boolean(raw, field.key, value) ? "true" : "false";
      break;
    case Kind::Text:
      canonical = value;
      break;
    case Kind::Choice: {
      if (std::find(field.choices.begin(), field.choices.end(), value) == field.choices.end()) {
        std::ostringstream msg;
        msg << "key '" << field.key << "' must be one of {";
        for (std::size_t i = 0; i < field.choices.size(); ++i) {
          if (i) msg << ", ";
          msg << field.choices[i];
        }
        msg << "}, got '" << value << "'";
        fail_at(raw.origin, line_of(raw, field.key), msg.str());
      }
      canonical = value;
      break;
    }
  }
  config.entries[field.key] = canonical;
  if (is_default) config.defaulted.insert(field.key);
  return true;
}

void check_axis_group(const RawConfig& raw, const RunConfig& config, const char* section) {
  const std::string s = section;
  const bool any = config.has(s + ".param") || config.has(s + ".min") || config.has(s + ".max");
  if (!any) return;
  for (const char* k : {"param", "min", "max"}) {
    if (!config.has(s + "." + k)) {
      fail_at(raw.origin, 0, "section [" + s + "] is incomplete: missing '" + s + "." + k + "'");
    }
  }
  if (!(config.number(s + ".min") < config.number(s + ".max"))) {
    fail_at(raw.origin, line_of(raw, s + ".min"), "axis [" + s + "] requires min < max");
  }
  if (config.text(s + ".scale") == "log10" && !(config.number(s + ".min") > 0.0)) {
    fail_at(raw.origin, line_of(raw, s + ".min"),
            "axis [" + s + "] requires min > 0 for log10 scale");
  }
}

// Axis-section scale/points keys get defaults only when the group exists.
void drop_orphan_axis_defaults(RunConfig& config, const char* section) {
  const std::string s = section;
  if (config.has(s + ".param")) return;
  for (const char* k : {"points", "scale"}) {
    config.entries.erase(s + "." + k);
    config.defaulted.erase(s + "." + k);
  }
}

void validate_snr_sweep(const RawConfig& raw, RunConfig& config) {
  const std::string model_id = config.text("model.id");
  const ParamMap& defaults = model_defaults(model_id);

  // Dynamic [params] section: every key must name a model parameter.
  ParamMap overrides;
  for (const auto& [key, value] : raw.entries) {
    if (key.rfind("params.", 0) != 0) continue;
    const std::string param = key.substr(7);
    if (defaults.find(param) == defaults.end()) {
      fail_at(raw.origin, line_of(raw, key),
              "unknown parameter '" + param + "' for model " + model_id);
    }
    overrides[param] = parse_number(raw, key, value);
  }
  // Record the full parameter set, defaults included.
  for (const auto& [param, fallback] : defaults) {
    const std::string key = "params." + param;
    auto it = overrides.find(param);
    config.entries[key] = format_double(it == overrides.end() ? fallback : it->second);
    if (it == overrides.end()) config.defaulted.insert(key);
  }

  check_axis_group(raw, config, "axis1");
  check_axis_group(raw, config, "axis2");
  drop_orphan_axis_defaults(config, "axis2");
  if (config.has("axis2.param") && config.text("axis1.param") == config.text("axis2.param")) {
    fail_at(raw.origin, line_of(raw, "axis2.param"), "axis1 and axis2 sweep the same parameter");
  }

  // Axis params must be settable on the model, and the fixed-point model
  // evaluation must be valid; this surfaces range violations (for example a
  // negative finesse) with the parameter named.
  Model model = make_model(model_id, overrides);
  ParamMap probe = model.params;
  for (const char* section : {"axis1", "axis2"}) {
    const std::string s = section;
    if (!config.has(s + ".param")) continue;
    const std::string param = config.text(s + ".param");
    if (model.params.find(param) == model.params.end()) {
      fail_at(raw.origin, line_of(raw, s + ".param"),
              "axis parameter '" + param + "' is not a parameter of model " + model_id);
    }
    probe[param] = config.number(s + ".min");
  }
  model.eval(probe);

  if (config.has("contour.levels")) {
    if (!config.has("axis2.param")) {
      fail_at(raw.origin, line_of(raw, "contour.levels"),
              "contour extraction requires a 2D sweep (section [axis2])");
    }
    std::stringstream ss(config.text("contour.levels"));
    std::string item;
    std::string canonical;
    while (std::getline(ss, item, ',')) {
      const double level = parse_number(raw, "contour.levels", trim(item));
      if (!canonical.empty()) canonical += ',';
      canonical += format_double(level);
    }
    if (canonical.empty()) {
      fail_at(raw.origin, line_of(raw, "contour.levels"), "contour.levels is empty");
    }
    config.entries["contour.levels"] = canonical;
  } else {
    config.entries.erase("contour.space");
    config.defaulted.erase("contour.space");
  }
}

void validate_curvature_profile(const RawConfig& raw, RunConfig& config) {
  if (config.integer("array.n_units") > 1 && !(config.number("array.spacing") > 0.0)) {
    fail_at(raw.origin, line_of(raw, "array.spacing"),
            "key 'array.spacing' must be > 0 when array.n_units > 1");
  }
  if (config.text("array.architecture") == "single" && config.integer("array.n_units") != 1) {
    fail_at(raw.origin, line_of(raw, "array.n_units"),
            "single architecture forces array.n_units = 1");
  }
  if (!(config.number("grid.x_min") < config.number("grid.x_max"))) {
    fail_at(raw.origin, line_of(raw, "grid.x_min"), "grid requires x_min < x_max");
  }
}

void validate_qix_sim(const RawConfig& raw, RunConfig& config) {
  if (!(config.number("grid.x_min") < config.number("grid.x_max"))) {
    fail_at(raw.origin, line_of(raw, "grid.x_min"), "grid requires x_min < x_max");
  }
  if (!(config.number("grid.t_min") < config.number("grid.t_max"))) {
    fail_at(raw.origin, line_of(raw, "grid.t_min"), "grid requires t_min < t_max");
  }
  if (!(config.number("track.window_skip") < 0.5)) {
    fail_at(raw.origin, line_of(raw, "track.window_skip"),
            "key 'track.window_skip' must be < 0.5");
  }
}

void validate_observables(const RawConfig& raw, RunConfig& config) {
  check_axis_group(raw, config, "axis1");
  drop_orphan_axis_defaults(config, "axis1");
  if (config.has("axis1.param") && config.text("axis1.param") != "delta_r") {
    fail_at(raw.origin, line_of(raw, "axis1.param"),
            "observables sweeps support only the parameter 'delta_r'");
  }
}

void validate_gated_pulse(const RawConfig& raw, RunConfig& config) {
  if (!(config.number("time.t_min") < config.number("time.t_max"))) {
    fail_at(raw.origin, line_of(raw, "time.t_min"), "time range requires t_min < t_max");
  }
}

}  // namespace

RunConfig validate_config(const RawConfig& raw) {
  auto cmd_it = raw.entries.find("command");
  if (cmd_it == raw.entries.end()) {
    fail_at(raw.origin, 0, "missing required key 'command'");
  }

  RunConfig config;
  config.command = command_from_name(cmd_it->second);

  std::vector<FieldSpec> fields = global_fields();
  std::vector<FieldSpec> extra = command_fields(config.command);
  fields.insert(fields.end(), extra.begin(), extra.end());

  std::set<std::string> known;
  for (const auto& field : fields) known.insert(field.key);
  for (const auto& [key, value] : raw.entries) {
    if (known.count(key)) continue;
    if (config.command == Command::SnrSweep && key.rfind("params.", 0) == 0) continue;
    fail_at(raw.origin, line_of(raw, key), "unknown key '" + key + "'");
  }

  for (const auto& field : fields) apply_field(raw, field, config);

  if (!config.has("name")) {
    config.entries["name"] = command_name(config.command);
    config.defaulted.insert("name");
  }
  output_formats_from_list(config.text("formats"));  // validates the list

  switch (config.command) {
    case Command::SnrSweep: validate_snr_sweep(raw, config); break;
    case Command::CurvatureProfile: validate_curvature_profile(raw, config); break;
    case Command::QixSim: validate_qix_sim(raw, config); break;
    case Command::Observables: validate_observables(raw, config); break;
    case Command::GatedPulse: validate_gated_pulse(raw, config); break;
  }
  return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
  return validate_config(parse_config_file(path));
}

const std::string& RunConfig::text(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw validation_error("internal: missing config key '" + key + "'");
  }
  return it->second;
}

double RunConfig::number(const std::string& key) const {
  return std::strtod(text(key).c_str(), nullptr);
}

std::int64_t RunConfig::integer(const std::string& key) const {
  return std::strtoll(text(key).c_str(), nullptr, 10);
}

bool RunConfig::flag(const std::string& key) const { return text(key) == "true"; }

std::uint64_t RunConfig::seed() const {
  return static_cast<std::uint64_t>(integer("seed"));
}

UnitMode RunConfig::units() const {
  return text("units") == "natural" ? UnitMode::Natural : UnitMode::Si;
}

PhysicalConstants RunConfig::constants() const {
  return units() == UnitMode::Natural ? PhysicalConstants::natural() : PhysicalConstants::si();
}

std::vector<OutputFormat> RunConfig::formats() const {
  return output_formats_from_list(text("formats"));
}

std::string serialize_config(const RunConfig& config,
                             const std::map<std::string, std::string>& report) {
  std::ostringstream out;
  out << "# qetsim " << kVersion << " run configuration\n";
  std::string cli_name = command_name(config.command);
  std::replace(cli_name.begin(), cli_name.end(), '_', '-');
  out << "# regenerate with: qetsim " << cli_name << " --config <this file>\n";

  auto write_entry = [&](const std::string& key, const std::string& bare) {
    out << bare << " = " << config.entries.at(key);
    if (config.defaulted.count(key)) out << "  # (default)";
    out << '\n';
  };

  // Globals in fixed order, then sections alphabetically.
  for (const char* key : {"command", "name", "seed", "units", "formats"}) {
    if (config.has(key)) write_entry(key, key);
  }
  std::map<std::string, std::vector<std::string>> sections;
  for (const auto& [key, value] : config.entries) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    sections[key.substr(0, dot)].push_back(key);
  }
  for (const auto& [section, keys] : sections) {
    out << "\n[" << section << "]\n";
    for (const auto& key : keys) write_entry(key, key.substr(section.size() + 1));
  }

  if (!report.empty()) {
    out << "\n# report\n";
    for (const auto& [key, value] : report) {
      out << "# " << key << " = " << value << '\n';
    }
  }
  return out.str();
}

}  // namespace qetsim
