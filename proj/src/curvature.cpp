#include "qetsim/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "qetsim/stress_energy.hpp"

namespace qetsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* sign_convention_name(SignConvention s) {
  return s == SignConvention::DipNegative ? "dip_negative" : "inverted";
}

SignConvention sign_convention_from_name(const std::string& name) {
  if (name == "dip_negative") return SignConvention::DipNegative;
  if (name == "inverted") return SignConvention::InvertedSign;
  throw validation_error("unknown sign convention '" + name +
                         "' (expected dip_negative or inverted)");
}

void GatedPulseSpec::validate() const {
  if (n_units < 1) throw validation_error("gated pulse requires n_units >= 1");
  if (!(delta_r0 > 0.0)) throw validation_error("gated pulse requires delta_r0 > 0");
  if (!(sigma_t > 0.0)) throw validation_error("gated pulse requires sigma_t > 0");
}

void QixChainConfig::validate() const {
  constants.validate();
  if (n_events < 1) throw validation_error("chain requires n_events >= 1");
  if (!(spacing > 0.0)) throw validation_error("chain spacing must be > 0");
  if (!(sigma > 0.0)) throw validation_error("chain sigma must be > 0");
  if (!(gate_interval > 0.0)) throw validation_error("chain gate_interval must be > 0");
  if (!(epsilon > 0.0)) throw validation_error("chain epsilon must be > 0");
}

ScalarField static_curvature(const ScalarField& t00, const PhysicalConstants& constants,
                             SignConvention sign, double calibration) {
  if (t00.quantity != Quantity::EnergyDensity) {
    throw validation_error("static_curvature expects an energy-density field");
  }
  constants.validate();
  const double factor = sign_factor(sign) * 8.0 * kPi * constants.G * calibration;
  std::vector<double> values(t00.values.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = factor * t00.values[i];
  return ScalarField(t00.grid, Quantity::Curvature, std::move(values));
}

double gated_pulse(const GatedPulseSpec& spec, double t, SignConvention sign) {
  spec.validate();
  const double u = (t - spec.t0) / spec.sigma_t;
  const double magnitude =
      static_cast<double>(spec.n_units) * spec.delta_r0 * std::exp(-0.5 * u * u);
  // DipNegative emits the dip as a negative excursion.
  return -sign_factor(sign) * magnitude;
}

SpaceTimeField qix_analytic(double epsilon, double v, double sigma, const GridST& grid,
                            const PhysicalConstants& constants) {
  constants.validate();
  if (!(sigma > 0.0)) throw validation_error("qix_analytic requires sigma > 0");
  if (constants.unit_mode == UnitMode::Si && std::abs(v) > constants.c) {
    throw validation_error("qix_analytic requires |v| <= c in SI mode");
  }
  const std::size_t nx = grid.space.n_x;
  std::vector<double> values(grid.n_points());
  for (std::size_t n = 0; n < grid.n_t; ++n) {
    const double center = v * grid.time(n);
    for (std::size_t i = 0; i < nx; ++i) {
      const double u = (grid.space.coord(i) - center) / sigma;
      values[n * nx + i] = -epsilon * std::exp(-0.5 * u * u);
    }
  }
  return SpaceTimeField(grid, Quantity::Curvature, std::move(values));
}

SpaceTimeField solve_retarded(const SpaceTimeField& source, const PhysicalConstants& constants,
                              SignConvention sign, double kappa) {
  if (source.quantity != Quantity::EnergyDensity) {
    throw validation_error("solve_retarded expects an energy-density source");
  }
  constants.validate();
  const GridST& grid = source.grid;
  const double dx = grid.space.spacing();
  const double dt = grid.dt();
  const double c = constants.c;
  if (c * dt > dx * (1.0 + 1e-12)) {
    throw validation_error("retarded solve requires c*dt <= dx, got c*dt = " +
                           std::to_string(c * dt) + ", dx = " + std::to_string(dx));
  }

  const std::size_t nx = grid.space.n_x;
  const std::size_t nt = grid.n_t;

  // Per-slice prefix sums of the source; window sums over the cone are O(1).
  std::vector<double> prefix((nx + 1) * nt, 0.0);
  for (std::size_t m = 0; m < nt; ++m) {
    double* p = prefix.data() + m * (nx + 1);
    const double* s = source.values.data() + m * nx;
    for (std::size_t i = 0; i < nx; ++i) p[i + 1] = p[i] + s[i];
  }

  const double prefactor =
      sign_factor(sign) * 8.0 * kPi * constants.G * kappa * (c / 2.0) * dx * dt;
  std::vector<double> out(grid.n_points(), 0.0);

  auto compute_slice = [&](std::size_t n) {
    double* row = out.data() + n * nx;
    for (std::size_t m = 0; m <= n; ++m) {
      const double radius = c * (grid.time(n) - grid.time(m));
      // Inclusive cone boundary: points with |x_i - x_j| == radius contribute.
      const auto reach = static_cast<std::ptrdiff_t>(std::floor(radius / dx * (1.0 + 1e-12) + 1e-12));
      const double* p = prefix.data() + m * (nx + 1);
      for (std::size_t i = 0; i < nx; ++i) {
        const auto ii = static_cast<std::ptrdiff_t>(i);
        const std::size_t lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, ii - reach));
        const std::size_t hi =
            static_cast<std::size_t>(std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(nx) - 1, ii + reach));
        row[i] += p[hi + 1] - p[lo];
      }
    }
    for (std::size_t i = 0; i < nx; ++i) row[i] *= prefactor;
  };

  // Output slices are independent; split them across threads.
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned n_threads = std::max(1u, std::min(hw, static_cast<unsigned>(nt)));
  if (n_threads == 1 || nt < 64) {
    for (std::size_t n = 0; n < nt; ++n) compute_slice(n);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t n = w; n < nt; n += n_threads) compute_slice(n);
      });
    }
    for (auto& th : workers) th.join();
  }

  return SpaceTimeField(grid, Quantity::Curvature, std::move(out));
}

QixChainResult simulate_qix_chain(const QixChainConfig& config, const GridST& grid,
                                  SignConvention sign) {
  config.validate();
  const double tau = config.event_tau();
  const double last_x = static_cast<double>(config.n_events - 1) * config.spacing;
  const double last_t = static_cast<double>(config.n_events - 1) * config.gate_interval;
  if (!grid.space.covers(-5.0 * config.sigma, last_x + 5.0 * config.sigma)) {
    throw validation_error("grid does not cover all event centers +-5 sigma");
  }
  if (!(grid.t_min <= 0.0 && grid.t_max >= last_t)) {
    throw validation_error("grid does not cover the full firing schedule [0, " +
                           std::to_string(last_t) + "]");
  }

  const std::size_t nx = grid.space.n_x;
  std::vector<double> src(grid.n_points(), 0.0);
  GaussianPulse event{config.epsilon, 0.0, 0.0, config.sigma, tau};
  for (std::size_t k = 0; k < config.n_events; ++k) {
    event.x0 = static_cast<double>(k) * config.spacing;
    event.t0 = static_cast<double>(k) * config.gate_interval;
    for (std::size_t n = 0; n < grid.n_t; ++n) {
      const double t = grid.time(n);
      for (std::size_t i = 0; i < nx; ++i) {
        src[n * nx + i] += eval_gaussian_t00(event, grid.space.coord(i), t);
      }
    }
  }
  SpaceTimeField source(grid, Quantity::EnergyDensity, std::move(src));

  // One event's late-time response is (c/2) * 2 pi sigma tau * epsilon; this
  // kappa makes that amplitude equal the static-map peak for the same event.
  const double kappa = 1.0 / (kPi * config.constants.c * config.sigma * tau);
  SpaceTimeField curvature = solve_retarded(source, config.constants, sign, kappa);
  return QixChainResult{std::move(source), std::move(curvature), config.v_eff(),
                        config.superluminal(), kappa};
}

DipTrack track_dip(const SpaceTimeField& field, double window_skip) {
  if (field.quantity != Quantity::Curvature) {
    throw validation_error("track_dip expects a curvature field");
  }
  if (!(window_skip >= 0.0 && window_skip < 0.5)) {
    throw validation_error("window_skip must be in [0, 0.5)");
  }

  const GridST& grid = field.grid;
  const std::size_t nx = grid.space.n_x;
  const double dx = grid.space.spacing();

  DipTrack track;
  track.window_skip = window_skip;
  track.samples.reserve(grid.n_t);
  for (std::size_t n = 0; n < grid.n_t; ++n) {
    const auto row = field.slice(n);
    std::size_t best = 0;
    double lo = row[0], hi = row[0];
    for (std::size_t i = 1; i < nx; ++i) {
      if (row[i] < row[best]) best = i;
      lo = std::min(lo, row[i]);
      hi = std::max(hi, row[i]);
    }
    DipSample sample{grid.time(n), grid.space.coord(best), row[best], lo == hi};
    if (!sample.degenerate && best > 0 && best + 1 < nx) {
      const double y0 = row[best - 1], y1 = row[best], y2 = row[best + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom > 0.0) {
        const double offset = std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
        sample.x += offset * dx;
      }
    }
    track.samples.push_back(sample);
  }

  const auto skip = static_cast<std::size_t>(std::ceil(window_skip * static_cast<double>(grid.n_t)));
  double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
  std::size_t count = 0;
  for (std::size_t n = skip; n + skip < grid.n_t; ++n) {
    if (track.samples[n].degenerate) continue;
    ++count;
    st += track.samples[n].t;
    sx += track.samples[n].x;
  }
  if (count < 2) {
    track.velocity = 0.0;
    track.degenerate = true;
    return track;
  }
  const double mt = st / static_cast<double>(count);
  const double mx = sx / static_cast<double>(count);
  for (std::size_t n = skip; n + skip < grid.n_t; ++n) {
    if (track.samples[n].degenerate) continue;
    stt += (track.samples[n].t - mt) * (track.samples[n].t - mt);
    stx += (track.samples[n].t - mt) * (track.samples[n].x - mx);
  }
  if (stt == 0.0) {
    track.velocity = 0.0;
    track.degenerate = true;
    return track;
  }
  track.velocity = stx / stt;
  track.degenerate = false;
  return track;
}

double fwhm_around_min(const ScalarField& field) {
  const std::size_t i_min = field.argmin();
  const double depth = field.values[i_min];
  const double half = depth / 2.0;
  if (depth == 0.0) return std::nan("");

  const auto& v = field.values;
  const auto x = [&](std::size_t i) { return field.grid.coord(i); };

  std::size_t lo = i_min;
  while (lo > 0 && v[lo - 1] <= half) --lo;
  double x_lo = x(lo);
  if (lo > 0) {
    const double t = (half - v[lo - 1]) / (v[lo] - v[lo - 1]);
    x_lo = x(lo - 1) + t * (x(lo) - x(lo - 1));
  }

  std::size_t hi = i_min;
  while (hi + 1 < v.size() && v[hi + 1] <= half) ++hi;
  double x_hi = x(hi);
  if (hi + 1 < v.size()) {
    const double t = (half - v[hi]) / (v[hi + 1] - v[hi]);
    x_hi = x(hi) + t * (x(hi + 1) - x(hi));
  }

  return x_hi - x_lo;
}

}  // namespace qetsim
