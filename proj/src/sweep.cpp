#include "qetsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "qetsim/observables.hpp"
#include "qetsim/snr.hpp"

namespace qetsim {

const char* axis_scale_name(AxisScale s) {
  return s == AxisScale::Linear ? "linear" : "log10";
}

AxisScale axis_scale_from_name(const std::string& name) {
  if (name == "linear") return AxisScale::Linear;
  if (name == "log10") return AxisScale::Log10;
  throw validation_error("unknown axis scale '" + name + "' (expected linear or log10)");
}

void AxisSpec::validate() const {
  if (param.empty()) throw validation_error("axis param name must not be empty");
  if (!(min < max)) {
    throw validation_error("axis '" + param + "' requires min < max");
  }
  if (n_points < 2) throw validation_error("axis '" + param + "' requires n_points >= 2");
  if (scale == AxisScale::Log10 && !(min > 0.0)) {
    throw validation_error("axis '" + param + "' requires min > 0 for log10 scale");
  }
}

double AxisSpec::coord(std::size_t i) const {
  const double f = static_cast<double>(i) / static_cast<double>(n_points - 1);
  if (scale == AxisScale::Log10) {
    const double lg = std::log10(min) + f * (std::log10(max) - std::log10(min));
    return std::pow(10.0, lg);
  }
  return min + f * (max - min);
}

std::vector<double> AxisSpec::coords() const {
  std::vector<double> cs(n_points);
  for (std::size_t i = 0; i < n_points; ++i) cs[i] = coord(i);
  return cs;
}

namespace {

double need(const ParamMap& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw validation_error(std::string("missing model parameter ") + key);
  return it->second;
}

std::optional<NoiseFloors> noise_from(const ParamMap& p) {
  if (need(p, "noise_enabled") == 0.0) return std::nullopt;
  return NoiseFloors{need(p, "detector_floor"), need(p, "technical_floor"),
                     need(p, "gap_coeff")};
}

SnrParameters snr_from(const ParamMap& p) {
  return SnrParameters{need(p, "n_units"),  need(p, "spacing"), need(p, "finesse"),
                       need(p, "rep_rate"), need(p, "squeeze"), need(p, "g_ent"),
                       need(p, "g_shape"),  need(p, "g_multi"), need(p, "g_noise"),
                       need(p, "ref_n"),    need(p, "ref_d")};
}

double eval_snr_parametric(const ParamMap& p) { return snr_parametric(snr_from(p), noise_from(p)); }

double eval_snr_normalized(const ParamMap& p) { return snr_normalized(snr_from(p), noise_from(p)); }

double eval_snr_curvature(const ParamMap& p) {
  return snr_curvature(need(p, "n_units"), need(p, "delta_r0"), need(p, "sigma_r"));
}

double eval_curvature_signal(const ParamMap& p) {
  return need(p, "n_units") * need(p, "delta_r0");
}

double eval_clock_drift(const ParamMap& p) {
  return clock_drift(need(p, "delta_r"), ClockSpec{need(p, "extent"), need(p, "duration"), 1.0});
}

double eval_phase_shift(const ParamMap& p) {
  return phase_shift(need(p, "delta_r"),
                     InterferometerSpec{need(p, "arm_length"), need(p, "wavelength"), 1.0});
}

double eval_clock_freq_shift(const ParamMap& p) {
  const double c = need(p, "c");
  PhysicalConstants constants{1.0, c, c == 1.0 ? UnitMode::Natural : UnitMode::Si};
  if (c == 1.0) constants.G = 1.0;
  return clock_freq_shift(need(p, "delta_r"), need(p, "extent"), constants);
}

double eval_strain(const ParamMap& p) { return strain(need(p, "delta_r"), need(p, "arm_length")); }

struct ModelEntry {
  const char* id;
  ParamMap defaults;
  double (*eval)(const ParamMap&);
};

const std::vector<ModelEntry>& registry() {
  static const std::vector<ModelEntry> entries = {
      {"snr_parametric",
       {{"n_units", 1.0},
        {"spacing", 1.0},
        {"finesse", 1e4},
        {"rep_rate", 1e5},
        {"squeeze", 1.5},
        {"g_ent", 1.0},
        {"g_shape", 1.0},
        {"g_multi", 1.0},
        {"g_noise", 1.0},
        {"ref_n", 1e3},
        {"ref_d", 0.05},
        {"noise_enabled", 0.0},
        {"detector_floor", 1e-4},
        {"technical_floor", 1e-3},
        {"gap_coeff", 1e-2}},
       &eval_snr_parametric},
      {"snr_normalized",
       {{"n_units", 1.0},
        {"spacing", 1.0},
        {"finesse", 1e4},
        {"rep_rate", 1e5},
        {"squeeze", 1.5},
        {"g_ent", 1.0},
        {"g_shape", 1.0},
        {"g_multi", 1.0},
        {"g_noise", 1.0},
        {"ref_n", 1e3},
        {"ref_d", 0.05},
        {"noise_enabled", 0.0},
        {"detector_floor", 1e-4},
        {"technical_floor", 1e-3},
        {"gap_coeff", 1e-2}},
       &eval_snr_normalized},
      {"snr_curvature",
       {{"n_units", 1.0}, {"delta_r0", 1e-36}, {"sigma_r", 1e-35}},
       &eval_snr_curvature},
      {"curvature_signal",
       {{"n_units", 1.0}, {"delta_r0", 1e-36}},
       &eval_curvature_signal},
      {"clock_drift",
       {{"delta_r", 1e-36}, {"extent", 1e-3}, {"duration", 1e-3}},
       &eval_clock_drift},
      {"phase_shift",
       {{"delta_r", 1e-36}, {"arm_length", 1.0}, {"wavelength", 1e-6}},
       &eval_phase_shift},
      {"clock_freq_shift",
       {{"delta_r", 1e-36}, {"extent", 1.0}, {"c", 299792458.0}},
       &eval_clock_freq_shift},
      {"strain", {{"delta_r", 1e-36}, {"arm_length", 1.0}}, &eval_strain},
  };
  return entries;
}

const ModelEntry& find_entry(const std::string& id) {
  for (const auto& e : registry()) {
    if (id == e.id) return e;
  }
  std::ostringstream msg;
  msg << "unknown model '" << id << "' (available:";
  for (const auto& e : registry()) msg << ' ' << e.id;
  msg << ')';
  throw validation_error(msg.str());
}

}  // namespace

std::vector<std::string> model_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.emplace_back(e.id);
  return ids;
}

const ParamMap& model_defaults(const std::string& id) { return find_entry(id).defaults; }

Model make_model(const std::string& id, const ParamMap& overrides) {
  const ModelEntry& entry = find_entry(id);
  Model model{entry.id, entry.defaults, entry.eval};
  for (const auto& [key, value] : overrides) {
    auto it = model.params.find(key);
    if (it == model.params.end()) {
      throw validation_error("unknown parameter '" + key + "' for model " + id);
    }
    it->second = value;
  }
  return model;
}

double SweepResult::value_at(std::size_t i0, std::size_t i1) const {
  const std::size_t inner = axes.size() == 2 ? axes[1].n_points : 1;
  return values[i0 * inner + i1];
}

SweepResult run_sweep(const Model& model, const std::vector<AxisSpec>& axes,
                      unsigned n_threads) {
  if (axes.empty() || axes.size() > 2) {
    throw validation_error("run_sweep requires 1 or 2 axes, got " +
                           std::to_string(axes.size()));
  }
  for (const auto& axis : axes) {
    axis.validate();
    if (model.params.find(axis.param) == model.params.end()) {
      throw validation_error("axis parameter '" + axis.param + "' is not a parameter of model " +
                             model.id);
    }
  }
  if (axes.size() == 2 && axes[0].param == axes[1].param) {
    throw validation_error("both axes sweep the same parameter '" + axes[0].param + "'");
  }

  SweepResult result;
  result.model_id = model.id;
  result.axes = axes;
  result.fixed = model.params;
  for (const auto& axis : axes) result.fixed.erase(axis.param);

  const std::size_t n0 = axes[0].n_points;
  const std::size_t n1 = axes.size() == 2 ? axes[1].n_points : 1;
  result.values.assign(n0 * n1, 0.0);

  auto eval_row = [&](std::size_t i0) {
    ParamMap point = model.params;
    point[axes[0].param] = axes[0].coord(i0);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      if (axes.size() == 2) point[axes[1].param] = axes[1].coord(i1);
      const double v = model.eval(point);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "model " << model.id << " produced a non-finite value at " << axes[0].param
            << " = " << axes[0].coord(i0);
        if (axes.size() == 2) msg << ", " << axes[1].param << " = " << axes[1].coord(i1);
        throw numeric_error(msg.str());
      }
      result.values[i0 * n1 + i1] = v;
    }
  };

  unsigned workers = n_threads == 0 ? std::thread::hardware_concurrency() : n_threads;
  workers = std::max(1u, std::min(workers, static_cast<unsigned>(n0)));
  if (workers == 1 || n0 * n1 < 4096) {
    for (std::size_t i0 = 0; i0 < n0; ++i0) eval_row(i0);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i0 = w; i0 < n0; i0 += workers) eval_row(i0);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  return result;
}

namespace {

struct EdgeKey {
  int dir;  // 0: edge along axis1 at fixed i; 1: edge along axis0 at fixed j
  std::size_t i;
  std::size_t j;

  bool operator<(const EdgeKey& o) const {
    if (dir != o.dir) return dir < o.dir;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
  bool operator==(const EdgeKey& o) const { return dir == o.dir && i == o.i && j == o.j; }
};

struct Segment {
  EdgeKey a, b;
  std::array<double, 2> pa, pb;
};

}  // namespace

std::vector<Polyline> extract_contour(const SweepResult& result, double level,
                                      ContourSpace space) {
  if (result.axes.size() != 2) {
    throw validation_error("contour extraction requires a 2D sweep result");
  }
  const std::size_t n0 = result.axes[0].n_points;
  const std::size_t n1 = result.axes[1].n_points;

  // Transformed view of values and level; monotone, so the crossed-cell set
  // is unchanged and only interpolation fractions differ.
  std::vector<double> f(result.values.size());
  double level_t = level;
  if (space == ContourSpace::Log10) {
    if (!(level > 0.0)) throw validation_error("log-space contour requires level > 0");
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (!(result.values[k] > 0.0)) {
        throw validation_error("log-space contour requires strictly positive values");
      }
      f[k] = std::log10(result.values[k]);
    }
    level_t = std::log10(level);
  } else {
    f = result.values;
  }

  // Axis coordinates in interpolation space (log10 for log axes).
  auto scaled_coord = [&](int axis, std::size_t idx) {
    const double c = result.axes[static_cast<std::size_t>(axis)].coord(idx);
    return result.axes[static_cast<std::size_t>(axis)].scale == AxisScale::Log10 ? std::log10(c)
                                                                                 : c;
  };
  auto unscale = [&](int axis, double v) {
    return result.axes[static_cast<std::size_t>(axis)].scale == AxisScale::Log10
               ? std::pow(10.0, v)
               : v;
  };

  auto value = [&](std::size_t i, std::size_t j) { return f[i * n1 + j]; };

  // Crossing point on an edge, in raw axis units.
  auto cross_point = [&](const EdgeKey& e) -> std::array<double, 2> {
    if (e.dir == 0) {  // between (i, j) and (i, j+1)
      const double va = value(e.i, e.j), vb = value(e.i, e.j + 1);
      const double t = (level_t - va) / (vb - va);
      const double s = scaled_coord(1, e.j) + t * (scaled_coord(1, e.j + 1) - scaled_coord(1, e.j));
      return {result.axes[0].coord(e.i), unscale(1, s)};
    }
    const double va = value(e.i, e.j), vb = value(e.i + 1, e.j);
    const double t = (level_t - va) / (vb - va);
    const double s = scaled_coord(0, e.i) + t * (scaled_coord(0, e.i + 1) - scaled_coord(0, e.i));
    return {unscale(0, s), result.axes[1].coord(e.j)};
  };

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < n0; ++i) {
    for (std::size_t j = 0; j + 1 < n1; ++j) {
      const bool b00 = value(i, j) >= level_t;
      const bool b01 = value(i, j + 1) >= level_t;
      const bool b10 = value(i + 1, j) >= level_t;
      const bool b11 = value(i + 1, j + 1) >= level_t;

      const EdgeKey left{0, i, j};
      const EdgeKey right{0, i + 1, j};
      const EdgeKey bottom{1, i, j};
      const EdgeKey top{1, i, j + 1};

      std::vector<EdgeKey> crossed;
      if (b00 != b01) crossed.push_back(left);
      if (b10 != b11) crossed.push_back(right);
      if (b00 != b10) crossed.push_back(bottom);
      if (b01 != b11) crossed.push_back(top);

      if (crossed.size() == 2) {
        segments.push_back({crossed[0], crossed[1], cross_point(crossed[0]),
                            cross_point(crossed[1])});
      } else if (crossed.size() == 4) {
        // Saddle: the midpoint value decides which opposite corners connect.
        const double center =
            (value(i, j) + value(i, j + 1) + value(i + 1, j) + value(i + 1, j + 1)) / 4.0;
        const bool center_high = center >= level_t;
        bool pair_left_top;
        if (b00 == b11) {
          // corners (00,11) share a side; (01,10) are the opposite pair
          pair_left_top = (center_high == b00);
        } else {
          pair_left_top = (center_high != b01);
        }
        if (pair_left_top) {
          segments.push_back({left, top, cross_point(left), cross_point(top)});
          segments.push_back({bottom, right, cross_point(bottom), cross_point(right)});
        } else {
          segments.push_back({left, bottom, cross_point(left), cross_point(bottom)});
          segments.push_back({top, right, cross_point(top), cross_point(right)});
        }
      }
    }
  }

  // Stitch segments into polylines by shared edges.
  std::map<EdgeKey, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_edge[segments[s].a].push_back(s);
    by_edge[segments[s].b].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> polylines;

  auto walk = [&](std::size_t start, bool from_a) {
    Polyline line;
    std::size_t seg = start;
    EdgeKey entry = from_a ? segments[seg].a : segments[seg].b;
    line.push_back(from_a ? segments[seg].pa : segments[seg].pb);
    while (true) {
      used[seg] = true;
      const bool entered_at_a = segments[seg].a == entry;
      const EdgeKey exit = entered_at_a ? segments[seg].b : segments[seg].a;
      line.push_back(entered_at_a ? segments[seg].pb : segments[seg].pa);
      const auto& adj = by_edge[exit];
      std::size_t next = segments.size();
      for (std::size_t cand : adj) {
        if (!used[cand]) {
          next = cand;
          break;
        }
      }
      if (next == segments.size()) break;
      seg = next;
      entry = exit;
    }
    return line;
  };

  // Open chains first (an end edge touched by only one segment).
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    if (by_edge[segments[s].a].size() == 1) {
      polylines.push_back(walk(s, true));
    } else if (by_edge[segments[s].b].size() == 1) {
      polylines.push_back(walk(s, false));
    }
  }
  // Remaining segments form closed loops.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) polylines.push_back(walk(s, true));
  }

  return polylines;
}

}  // namespace qetsim
