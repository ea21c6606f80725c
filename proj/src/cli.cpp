#include "qetsim/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qetsim/recipes.hpp"
#include "qetsim/run.hpp"
#include "qetsim/version.hpp"

namespace qetsim {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string format_list;
  std::int64_t seed = -1;
  std::string units;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "run configuration file")->required();
  cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
  cmd->add_option("--format", opts.format_list, "comma list of csv,json,gnuplot");
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--units", opts.units, "override the unit mode (si|natural)");
}

int execute_command(Command command, const CommonOptions& opts) {
  RawConfig raw = parse_config_file(opts.config_path);
  auto it = raw.entries.find("command");
  if (it != raw.entries.end() && it->second != command_name(command)) {
    throw validation_error("config declares command '" + it->second +
                           "' but was invoked as '" + command_name(command) + "'");
  }
  raw.set("command", command_name(command));
  if (!opts.format_list.empty()) raw.set("formats", opts.format_list);
  if (opts.seed >= 0) raw.set("seed", std::to_string(opts.seed));
  if (!opts.units.empty()) raw.set("units", opts.units);

  RunConfig config = validate_config(raw);
  RunOutput out = execute_config(config, opts.out_dir);
  for (const auto& file : out.files) std::cout << "wrote " << file.string() << '\n';
  for (const auto& [key, value] : out.report) std::cout << key << " = " << value << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"negative-energy curvature and detectability toolkit"};
  app.set_version_flag("--version", std::string("qetsim ") + kVersion);
  app.require_subcommand(1);

  struct SubSpec {
    Command command;
    const char* cli_name;
    const char* help;
  };
  const std::vector<SubSpec> subs = {
      {Command::SnrSweep, "snr-sweep", "evaluate an SNR or observable model over parameter axes"},
      {Command::CurvatureProfile, "curvature-profile",
       "energy-density and curvature profile of a QET array"},
      {Command::QixSim, "qix-sim", "retarded 1+1D simulation of a timed QET chain"},
      {Command::Observables, "observables", "detector observables for a curvature amplitude"},
      {Command::GatedPulse, "gated-pulse", "time-gated curvature pulse and induced signals"},
  };

  std::vector<CommonOptions> opts(subs.size());
  std::vector<CLI::App*> cmds;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].cli_name, subs[i].help);
    add_common(cmd, opts[i]);
    cmds.push_back(cmd);
  }

  std::string recipe_name;
  std::string recipe_out = "out";
  std::string recipe_formats;
  CLI::App* recipe_cmd = app.add_subcommand("recipe", "run a named figure-data recipe");
  recipe_cmd->add_option("name", recipe_name, "recipe name (see list-recipes)")->required();
  recipe_cmd->add_option("--out", recipe_out, "output directory (default: out)");
  recipe_cmd->add_option("--format", recipe_formats, "comma list of csv,json,gnuplot");

  CLI::App* list_cmd = app.add_subcommand("list-recipes", "list available recipes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (cmds[i]->parsed()) return execute_command(subs[i].command, opts[i]);
    }
    if (recipe_cmd->parsed()) {
      std::vector<OutputFormat> formats;
      if (!recipe_formats.empty()) formats = output_formats_from_list(recipe_formats);
      RunOutput out = run_recipe(recipe_name, recipe_out, formats);
      for (const auto& file : out.files) std::cout << "wrote " << file.string() << '\n';
      for (const auto& [key, value] : out.report) std::cout << key << " = " << value << '\n';
      return 0;
    }
    if (list_cmd->parsed()) {
      for (const auto& name : recipe_names()) {
        std::cout << name << "  " << find_recipe(name).description << '\n';
      }
      return 0;
    }
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}

}  // namespace qetsim
