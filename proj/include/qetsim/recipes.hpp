#pragma once

#include <map>
#include <string>
#include <vector>

#include "qetsim/run.hpp"

namespace qetsim {

// A named, fully-parameterized run set. Recipes hard-code their operating
// points; re-running one reproduces its data files byte for byte.
struct Recipe {
  std::string name;
  std::string description;
  std::vector<RunConfig> runs;
  std::map<std::string, std::string> notes;  // extra report lines for sidecars
};

std::vector<std::string> recipe_names();
Recipe find_recipe(const std::string& name);  // unknown names are rejected

// Executes every run in the recipe under out_dir. A non-empty formats list
// overrides each run's configured formats.
RunOutput run_recipe(const std::string& name, const std::filesystem::path& out_dir,
                     const std::vector<OutputFormat>& formats = {});

}  // namespace qetsim
