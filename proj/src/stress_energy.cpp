#include "qetsim/stress_energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qetsim/rng.hpp"

namespace qetsim {

void GaussianPulse::validate() const {
  if (!(epsilon > 0.0)) throw validation_error("pulse epsilon must be > 0");
  if (!(sigma > 0.0)) throw validation_error("pulse sigma must be > 0");
  if (!(tau > 0.0)) throw validation_error("pulse tau must be > 0");
  if (!std::isfinite(x0) || !std::isfinite(t0)) {
    throw validation_error("pulse center must be finite");
  }
}

const char* architecture_name(Architecture a) {
  switch (a) {
    case Architecture::SinglePair: return "single";
    case Architecture::Uncoordinated: return "uncoordinated";
    case Architecture::Synchronized: return "synchronized";
  }
  return "?";
}

Architecture architecture_from_name(const std::string& name) {
  if (name == "single") return Architecture::SinglePair;
  if (name == "uncoordinated") return Architecture::Uncoordinated;
  if (name == "synchronized") return Architecture::Synchronized;
  throw validation_error("unknown architecture '" + name +
                         "' (expected single, uncoordinated or synchronized)");
}

void ArrayConfig::validate() const {
  unit_pulse.validate();
  if (n_units < 1) throw validation_error("array requires n_units >= 1");
  if (architecture == Architecture::SinglePair && n_units != 1) {
    throw validation_error("single-pair architecture forces n_units = 1, got " +
                           std::to_string(n_units));
  }
  if (n_units > 1 && !(spacing > 0.0)) {
    throw validation_error("array spacing must be > 0 when n_units > 1");
  }
}

std::vector<double> ArrayConfig::unit_centers() const {
  validate();
  std::vector<double> centers;
  centers.reserve(n_units);
  switch (architecture) {
    case Architecture::SinglePair:
      centers.push_back(unit_pulse.x0);
      break;
    case Architecture::Synchronized: {
      const double mid = static_cast<double>(n_units - 1) / 2.0;
      for (std::size_t k = 0; k < n_units; ++k) {
        centers.push_back(unit_pulse.x0 + (static_cast<double>(k) - mid) * spacing);
      }
      break;
    }
    case Architecture::Uncoordinated: {
      SplitMix64 rng(seed);
      const double lo = unit_pulse.x0 - spacing / 2.0;
      for (std::size_t k = 0; k < n_units; ++k) {
        centers.push_back(lo + rng.uniform01() * spacing);
      }
      break;
    }
  }
  return centers;
}

double eval_gaussian_t00(const GaussianPulse& pulse, double x, double t) {
  const double ux = (x - pulse.x0) / pulse.sigma;
  const double ut = (t - pulse.t0) / pulse.tau;
  return -pulse.epsilon * std::exp(-0.5 * ux * ux - 0.5 * ut * ut);
}

ScalarField sample_array_t00(const ArrayConfig& config, const Grid1D& grid, double t) {
  const std::vector<double> centers = config.unit_centers();
  const double margin = 5.0 * config.unit_pulse.sigma;
  const auto [lo_it, hi_it] = std::minmax_element(centers.begin(), centers.end());
  if (!grid.covers(*lo_it - margin, *hi_it + margin)) {
    throw validation_error(
        "grid does not cover all unit centers +-5 sigma (truncation risk): need [" +
        std::to_string(*lo_it - margin) + ", " + std::to_string(*hi_it + margin) +
        "], have [" + std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) + "]");
  }

  std::vector<double> values(grid.n_x, 0.0);
  GaussianPulse unit = config.unit_pulse;
  for (double center : centers) {
    unit.x0 = center;
    for (std::size_t i = 0; i < grid.n_x; ++i) {
      values[i] += eval_gaussian_t00(unit, grid.coord(i), t);
    }
  }
  return ScalarField(grid, Quantity::EnergyDensity, std::move(values));
}

void InterferenceConfig::validate() const {
  if (!(lambda_strength >= 0.0)) throw validation_error("lambda_strength must be >= 0");
  if (!(branch_width > 0.0)) throw validation_error("branch_width must be > 0");
  if (x_left == x_right) throw validation_error("branch centers must differ");
}

ScalarField interference_t00(const InterferenceConfig& config, const Grid1D& grid) {
  config.validate();
  const double margin = 5.0 * config.branch_width;
  const double lo = std::min(config.x_left, config.x_right) - margin;
  const double hi = std::max(config.x_left, config.x_right) + margin;
  if (!grid.covers(lo, hi)) {
    throw validation_error("grid does not cover both branch centers +-5 widths: need [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  const double w2 = 2.0 * config.branch_width * config.branch_width;
  const double cross = 2.0 * config.lambda_strength * std::cos(config.rel_phase);
  std::vector<double> values(grid.n_x);
  for (std::size_t i = 0; i < grid.n_x; ++i) {
    const double x = grid.coord(i);
    const double gl = std::exp(-(x - config.x_left) * (x - config.x_left) / w2);
    const double gr = std::exp(-(x - config.x_right) * (x - config.x_right) / w2);
    values[i] = -config.lambda_strength * (gl + gr) - cross * std::sqrt(gl * gr);
  }
  return ScalarField(grid, Quantity::EnergyDensity, std::move(values));
}

}  // namespace qetsim
