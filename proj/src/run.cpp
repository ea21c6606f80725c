#include "qetsim/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qetsim/curvature.hpp"
#include "qetsim/observables.hpp"
#include "qetsim/snr.hpp"
#include "qetsim/stress_energy.hpp"
#include "qetsim/sweep.hpp"

namespace qetsim {

namespace {

std::vector<AxisSpec> axes_from(const RunConfig& config) {
  std::vector<AxisSpec> axes;
  for (const char* section : {"axis1", "axis2"}) {
    const std::string s = section;
    if (!config.has(s + ".param")) continue;
    axes.push_back(AxisSpec{config.text(s + ".param"), config.number(s + ".min"),
                            config.number(s + ".max"),
                            static_cast<std::size_t>(config.integer(s + ".points")),
                            axis_scale_from_name(config.text(s + ".scale"))});
  }
  return axes;
}

RunOutput run_snr_sweep(const RunConfig& config, const EmitRequest& base) {
  const std::string model_id = config.text("model.id");
  ParamMap overrides;
  for (const auto& [key, value] : config.entries) {
    if (key.rfind("params.", 0) == 0) overrides[key.substr(7)] = config.number(key);
  }
  Model model = make_model(model_id, overrides);
  SweepResult result = run_sweep(model, axes_from(config));

  RunOutput out;
  if (config.has("contour.levels")) {
    const ContourSpace space = config.text("contour.space") == "log10" ? ContourSpace::Log10
                                                                       : ContourSpace::Value;
    std::stringstream ss(config.text("contour.levels"));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const double level = std::strtod(item.c_str(), nullptr);
      result.contours.push_back({level, extract_contour(result, level, space)});
    }
  }

  const auto [lo, hi] = std::minmax_element(result.values.begin(), result.values.end());
  out.report["value_min"] = format_double(*lo);
  out.report["value_max"] = format_double(*hi);

  EmitRequest req = base;
  out.files = emit_sweep(result, req);
  return out;
}

RunOutput run_curvature_profile(const RunConfig& config, const EmitRequest& base) {
  GaussianPulse unit{config.number("array.epsilon"), config.number("array.x0"),
                     config.number("array.t0"), config.number("array.sigma"),
                     config.number("array.tau")};
  ArrayConfig array{architecture_from_name(config.text("array.architecture")),
                    static_cast<std::size_t>(config.integer("array.n_units")),
                    config.number("array.spacing"), unit, config.seed()};
  Grid1D grid(config.number("grid.x_min"), config.number("grid.x_max"),
              static_cast<std::size_t>(config.integer("grid.n_x")));

  ScalarField t00 = sample_array_t00(array, grid, config.number("array.sample_t"));
  ScalarField delta_r =
      static_curvature(t00, config.constants(), sign_convention_from_name(config.text("curvature.sign")),
                       config.number("curvature.calibration"));

  DataTable table;
  table.add_column("x_m", grid.coords());
  table.add_column("t00_j_m3", t00.values);
  table.add_column("delta_r_m2", delta_r.values);

  RunOutput out;
  out.report["t00_peak_j_m3"] = format_double(t00.min_value());
  out.report["delta_r_peak_m2"] = format_double(delta_r.min_value());
  out.report["fwhm_m"] = format_double(fwhm_around_min(delta_r));
  {
    std::string centers;
    for (const double c : array.unit_centers()) {
      if (!centers.empty()) centers += ',';
      centers += format_double(c);
    }
    out.report["unit_centers_m"] = centers;
  }

  out.files = emit_table(table, base);
  return out;
}

RunOutput run_qix_sim(const RunConfig& config, const EmitRequest& base) {
  const PhysicalConstants constants = config.constants();
  QixChainConfig chain{static_cast<std::size_t>(config.integer("chain.n_events")),
                       config.number("chain.spacing"),
                       config.number("chain.sigma"),
                       config.number("chain.gate_interval"),
                       config.number("chain.epsilon"),
                       config.number("chain.tau_e"),
                       constants};
  Grid1D space(config.number("grid.x_min"), config.number("grid.x_max"),
               static_cast<std::size_t>(config.integer("grid.n_x")));
  GridST grid = make_grid_st(space, config.number("grid.t_min"), config.number("grid.t_max"),
                             static_cast<std::size_t>(config.integer("grid.n_t")));

  QixChainResult sim =
      simulate_qix_chain(chain, grid, sign_convention_from_name(config.text("curvature.sign")));
  DipTrack track = track_dip(sim.curvature, config.number("track.window_skip"));

  RunOutput out;
  out.report["v_eff"] = format_double(sim.v_eff);
  out.report["superluminal"] = sim.superluminal ? "true" : "false";
  out.report["kappa"] = format_double(sim.kappa);
  out.report["fitted_velocity"] = format_double(track.velocity);
  out.report["track_degenerate"] = track.degenerate ? "true" : "false";
  out.report["event_tau"] = format_double(chain.event_tau());

  out.files = emit_matrix(matrix_from_field(sim.curvature), base);

  if (config.flag("output.source")) {
    EmitRequest src_req = base;
    src_req.basename = base.basename + "_source";
    src_req.sidecar.clear();
    auto files = emit_matrix(matrix_from_field(sim.source), src_req);
    out.files.insert(out.files.end(), files.begin(), files.end());
  }

  {
    DataTable table;
    std::vector<double> ts, xs, vs, degenerate;
    for (const auto& sample : track.samples) {
      ts.push_back(sample.t);
      xs.push_back(sample.x);
      vs.push_back(sample.value);
      degenerate.push_back(sample.degenerate ? 1.0 : 0.0);
    }
    table.add_column("t", std::move(ts));
    table.add_column("x_min", std::move(xs));
    table.add_column("value_min", std::move(vs));
    table.add_column("degenerate", std::move(degenerate));
    EmitRequest track_req = base;
    track_req.basename = base.basename + "_track";
    track_req.sidecar.clear();
    auto files = emit_table(table, track_req);
    out.files.insert(out.files.end(), files.begin(), files.end());
  }
  return out;
}

RunOutput run_observables(const RunConfig& config, const EmitRequest& base) {
  const InterferometerSpec ifo{config.number("instrument.arm_length"),
                               config.number("instrument.wavelength"),
                               config.number("instrument.baseline")};
  const ClockSpec clock{config.number("instrument.clock_extent"),
                        config.number("instrument.clock_duration"),
                        config.number("instrument.clock_stability")};
  const double strain_length = config.number("instrument.strain_length");
  const PhysicalConstants constants = config.constants();

  std::vector<double> deltas;
  if (config.has("axis1.param")) {
    AxisSpec axis{config.text("axis1.param"), config.number("axis1.min"),
                  config.number("axis1.max"),
                  static_cast<std::size_t>(config.integer("axis1.points")),
                  axis_scale_from_name(config.text("axis1.scale"))};
    axis.validate();
    deltas = axis.coords();
  } else {
    deltas = {config.number("signal.delta_r")};
  }

  DataTable table;
  std::vector<double> phase, drift, freq, h;
  phase.reserve(deltas.size());
  for (const double dr : deltas) {
    phase.push_back(phase_shift(dr, ifo));
    drift.push_back(clock_drift(dr, clock));
    freq.push_back(clock_freq_shift(dr, clock.extent, constants));
    h.push_back(strain(dr, strain_length));
  }
  table.add_column("delta_r_m2", deltas);
  table.add_column("phase_shift_rad", std::move(phase));
  table.add_column("clock_drift_frac", std::move(drift));
  table.add_column("clock_freq_shift_frac", std::move(freq));
  table.add_column("strain", std::move(h));

  RunOutput out;
  out.report["clock_stability_floor"] = format_double(clock.stability);
  out.files = emit_table(table, base);
  return out;
}

RunOutput run_gated_pulse(const RunConfig& config, const EmitRequest& base) {
  const GatedPulseSpec spec{static_cast<std::size_t>(config.integer("pulse.n_units")),
                            config.number("pulse.delta_r0"), config.number("pulse.t0"),
                            config.number("pulse.sigma_t")};
  const SignConvention sign = sign_convention_from_name(config.text("curvature.sign"));
  const InterferometerSpec ifo{config.number("instrument.strain_length"), 1.0,
                               config.number("instrument.baseline")};
  const double t_min = config.number("time.t_min");
  const double t_max = config.number("time.t_max");
  const auto n_t = static_cast<std::size_t>(config.integer("time.n_t"));

  DataTable table;
  std::vector<double> ts(n_t), dr(n_t), path(n_t), h(n_t);
  for (std::size_t n = 0; n < n_t; ++n) {
    const double t = t_min + static_cast<double>(n) * (t_max - t_min) /
                                 static_cast<double>(n_t - 1);
    ts[n] = t;
    dr[n] = gated_pulse(spec, t, sign);
    path[n] = t >= 0.0 ? path_shift_t(dr[n], ifo, t) : 0.0;
    h[n] = strain(dr[n], config.number("instrument.strain_length"));
  }
  table.add_column("t_s", std::move(ts));
  table.add_column("delta_r_m2", std::move(dr));
  table.add_column("path_shift_m", std::move(path));
  table.add_column("strain", std::move(h));

  RunOutput out;
  out.report["peak_delta_r_m2"] =
      format_double(gated_pulse(spec, spec.t0, sign));
  out.files = emit_table(table, base);
  return out;
}

}  // namespace

RunOutput execute_config(const RunConfig& config, const std::filesystem::path& out_dir,
                         const std::map<std::string, std::string>& extra_report) {
  EmitRequest base;
  base.dir = out_dir;
  base.basename = config.name();
  base.formats = config.formats();

  // First pass computes everything with an empty sidecar slot; the sidecar is
  // serialized afterwards so it can carry the report, then written by a
  // second emit of just the .meta file.
  RunOutput out;
  switch (config.command) {
    case Command::SnrSweep: out = run_snr_sweep(config, base); break;
    case Command::CurvatureProfile: out = run_curvature_profile(config, base); break;
    case Command::QixSim: out = run_qix_sim(config, base); break;
    case Command::Observables: out = run_observables(config, base); break;
    case Command::GatedPulse: out = run_gated_pulse(config, base); break;
  }
  for (const auto& [key, value] : extra_report) out.report[key] = value;

  EmitRequest meta_req = base;
  meta_req.formats = {};
  meta_req.sidecar = serialize_config(config, out.report);
  auto meta_files = emit_table(DataTable{}, meta_req);
  out.files.insert(out.files.end(), meta_files.begin(), meta_files.end());
  return out;
}

}  // namespace qetsim
