#include "qetsim/recipes.hpp"

#include <initializer_list>
#include <utility>

namespace qetsim {

namespace {

RunConfig build(std::initializer_list<std::pair<const char*, const char*>> kv) {
  RawConfig raw;
  raw.origin = "recipe";
  for (const auto& [key, value] : kv) raw.set(key, value);
  return validate_config(raw);
}

RunConfig fig2_run(const char* finesse, const char* name) {
  return build({{"command", "snr_sweep"},
                {"name", name},
                {"formats", "csv,json,gnuplot"},
                {"model.id", "snr_parametric"},
                {"params.finesse", finesse},
                {"params.rep_rate", "1e5"},
                {"params.squeeze", "1.5"},
                {"params.g_ent", "2"},
                {"params.g_shape", "2"},
                {"params.g_multi", "2"},
                {"params.g_noise", "1"},
                {"params.noise_enabled", "1"},
                {"axis1.param", "n_units"},
                {"axis1.min", "1"},
                {"axis1.max", "1e4"},
                {"axis1.points", "101"},
                {"axis1.scale", "log10"},
                {"axis2.param", "spacing"},
                {"axis2.min", "1e-3"},
                {"axis2.max", "1"},
                {"axis2.points", "101"},
                {"axis2.scale", "log10"},
                {"contour.levels", "1"},
                {"contour.space", "log10"}});
}

RunConfig fig5_run(const char* name, std::initializer_list<std::pair<const char*, const char*>> extra) {
  RawConfig raw;
  raw.origin = "recipe";
  raw.set("command", "curvature_profile");
  raw.set("name", name);
  raw.set("formats", "csv,json");
  raw.set("array.epsilon", "1e-11");
  raw.set("array.tau", "1");
  raw.set("array.x0", "0");
  raw.set("array.sample_t", "0");
  raw.set("grid.x_min", "-1");
  raw.set("grid.x_max", "1");
  raw.set("grid.n_x", "2001");
  raw.set("curvature.sign", "dip_negative");
  for (const auto& [key, value] : extra) raw.set(key, value);
  return validate_config(raw);
}

Recipe make_recipe(const std::string& name) {
  if (name == "fig2") {
    return {"fig2",
            "log10 SNR over unit count and spacing for four finesse values, with the "
            "SNR = 1 threshold contour",
            {fig2_run("1e2", "fig2_finesse_1e2"), fig2_run("1e3", "fig2_finesse_1e3"),
             fig2_run("1e4", "fig2_finesse_1e4"), fig2_run("1e5", "fig2_finesse_1e5")},
            {{"threshold_snr", "1"}}};
  }
  if (name == "fig3") {
    return {"fig3",
            "curvature signal amplitude versus entangled unit count",
            {build({{"command", "snr_sweep"},
                    {"name", "fig3"},
                    {"model.id", "curvature_signal"},
                    {"params.delta_r0", "1e-36"},
                    {"axis1.param", "n_units"},
                    {"axis1.min", "1"},
                    {"axis1.max", "1e4"},
                    {"axis1.points", "201"},
                    {"axis1.scale", "log10"}})},
            {{"noise_floor_m2", "1e-35"}, {"band_fraction", "0.3"}}};
  }
  if (name == "fig5") {
    return {"fig5",
            "curvature profiles for single, uncoordinated and synchronized arrays",
            {fig5_run("fig5_single", {{"array.architecture", "single"},
                                      {"array.n_units", "1"},
                                      {"array.sigma", "0.1"}}),
             fig5_run("fig5_uncoordinated", {{"array.architecture", "uncoordinated"},
                                             {"array.n_units", "5"},
                                             {"array.spacing", "0.5"},
                                             {"array.sigma", "0.1"},
                                             {"seed", "4"}}),
             fig5_run("fig5_synchronized", {{"array.architecture", "synchronized"},
                                            {"array.n_units", "5"},
                                            {"array.spacing", "0.005"},
                                            {"array.sigma", "0.04187"}})},
            {{"expected_ordering",
              "synchronized deepest; widths synchronized < single < uncoordinated"}}};
  }
  if (name == "fig6") {
    return {"fig6",
            "curvature SNR versus unit count with the detection threshold at SNR = 1",
            {build({{"command", "snr_sweep"},
                    {"name", "fig6"},
                    {"model.id", "snr_curvature"},
                    {"params.delta_r0", "1e-36"},
                    {"params.sigma_r", "1e-35"},
                    {"axis1.param", "n_units"},
                    {"axis1.min", "1"},
                    {"axis1.max", "1e4"},
                    {"axis1.points", "201"},
                    {"axis1.scale", "log10"}})},
            {{"threshold_snr", "1"}}};
  }
  if (name == "fig8") {
    return {"fig8",
            "fractional clock drift versus curvature amplitude (1 mm extent, 1 ms pulse)",
            {build({{"command", "snr_sweep"},
                    {"name", "fig8"},
                    {"model.id", "clock_drift"},
                    {"params.extent", "1e-3"},
                    {"params.duration", "1e-3"},
                    {"axis1.param", "delta_r"},
                    {"axis1.min", "1e-14"},
                    {"axis1.max", "1e-2"},
                    {"axis1.points", "241"},
                    {"axis1.scale", "log10"}})},
            {{"stability_floor", "1e-18"}}};
  }
  if (name == "fig9") {
    auto strain_run = [](const char* name_, const char* arm) {
      return build({{"command", "snr_sweep"},
                    {"name", name_},
                    {"model.id", "strain"},
                    {"params.arm_length", arm},
                    {"axis1.param", "delta_r"},
                    {"axis1.min", "1e-40"},
                    {"axis1.max", "1e-30"},
                    {"axis1.points", "201"},
                    {"axis1.scale", "log10"}});
    };
    return {"fig9",
            "strain amplitude versus curvature for 1 m and 10 m baselines",
            {strain_run("fig9_arm_1m", "1"), strain_run("fig9_arm_10m", "10")},
            {{"strain_band_floor", "1e-23"}}};
  }
  if (name == "fig10") {
    return {"fig10",
            "consolidated clock drift versus curvature pulse amplitude",
            {build({{"command", "snr_sweep"},
                    {"name", "fig10"},
                    {"model.id", "clock_drift"},
                    {"params.extent", "1e-3"},
                    {"params.duration", "1e-3"},
                    {"axis1.param", "delta_r"},
                    {"axis1.min", "1e-12"},
                    {"axis1.max", "1e-4"},
                    {"axis1.points", "201"},
                    {"axis1.scale", "log10"}})},
            {{"stability_floor", "1e-18"},
             {"floor_crossing_delta_r_m2", format_double(1e-18 * 12.0 / (1e-3 * 1e-3 * 1e-3))}}};
  }
  if (name == "fig11") {
    return {"fig11",
            "normalized SNR over unit count and spacing with the threshold contour through "
            "the reference point",
            {build({{"command", "snr_sweep"},
                    {"name", "fig11"},
                    {"formats", "csv,json,gnuplot"},
                    {"model.id", "snr_normalized"},
                    {"params.finesse", "1e4"},
                    {"params.rep_rate", "1e5"},
                    {"params.squeeze", "1.5"},
                    {"params.g_ent", "10"},
                    {"params.g_shape", "5"},
                    {"params.g_multi", "3"},
                    {"params.g_noise", "1"},
                    {"params.ref_n", "1e3"},
                    {"params.ref_d", "0.05"},
                    {"params.noise_enabled", "0"},
                    {"axis1.param", "n_units"},
                    {"axis1.min", "1"},
                    {"axis1.max", "1e4"},
                    {"axis1.points", "101"},
                    {"axis1.scale", "log10"},
                    {"axis2.param", "spacing"},
                    {"axis2.min", "1e-3"},
                    {"axis2.max", "1"},
                    {"axis2.points", "101"},
                    {"axis2.scale", "log10"},
                    {"contour.levels", "1"},
                    {"contour.space", "log10"}})},
            {{"reference_n_units", "1000"}, {"reference_spacing_m", "0.05"}}};
  }
  if (name == "fig13") {
    return {"fig13",
            "traveling curvature packet from a timed chain of negative-energy events",
            {build({{"command", "qix_sim"},
                    {"name", "fig13"},
                    {"units", "natural"},
                    {"formats", "csv,gnuplot"},
                    {"chain.n_events", "10"},
                    {"chain.spacing", "1"},
                    {"chain.sigma", "0.5"},
                    {"chain.gate_interval", "0.375"},
                    {"chain.epsilon", "1"},
                    {"grid.x_min", "-4"},
                    {"grid.x_max", "14"},
                    {"grid.n_x", "512"},
                    {"grid.t_min", "0"},
                    {"grid.t_max", "4.5"},
                    {"grid.n_t", "512"},
                    {"output.source", "true"}})},
            {{"gate_velocity", format_double(1.0 / 0.375)}}};
  }
  throw validation_error("unknown recipe '" + name + "'; run list-recipes for the catalog");
}

}  // namespace

std::vector<std::string> recipe_names() {
  return {"fig2", "fig3", "fig5", "fig6", "fig8", "fig9", "fig10", "fig11", "fig13"};
}

Recipe find_recipe(const std::string& name) { return make_recipe(name); }

RunOutput run_recipe(const std::string& name, const std::filesystem::path& out_dir,
                     const std::vector<OutputFormat>& formats) {
  Recipe recipe = find_recipe(name);
  RunOutput all;
  for (RunConfig& run : recipe.runs) {
    if (!formats.empty()) {
      run.entries["formats"] = output_formats_to_list(formats);
      run.defaulted.erase("formats");
    }
    RunOutput out = execute_config(run, out_dir, recipe.notes);
    all.files.insert(all.files.end(), out.files.begin(), out.files.end());
    for (const auto& [key, value] : out.report) {
      all.report[run.name() + "." + key] = value;
    }
  }
  return all;
}

}  // namespace qetsim
