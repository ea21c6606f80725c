#pragma once

#include "qetsim/core.hpp"

namespace qetsim {

struct InterferometerSpec {
  double arm_length;  // L, m
  double wavelength;  // m
  double baseline;    // L0, m, for the time-dependent path shift

  void validate() const;
};

struct ClockSpec {
  double extent;     // L, m; spatial extent of significant curvature
  double duration;   // s; curvature pulse duration
  double stability;  // fractional frequency floor, dimensionless

  void validate() const;
};

// All observables below are formula-literal in delta_R. The printed forms mix
// a m^-2 curvature with m^2 lengths and treat the result as the target unit;
// outputs are nominal in the documented unit, not dimensionally derived.

// (2 pi / wavelength) * delta_R * L^2, rad
double phase_shift(double delta_r, const InterferometerSpec& spec);

// 0.5 * delta_R(t) * L0 * t^2, m; delta_r_t is the pulse value at time t
double path_shift_t(double delta_r_t, const InterferometerSpec& spec, double t);

// (1/12) * delta_R * L^2 * duration, dimensionless fraction
double clock_drift(double delta_r, const ClockSpec& spec);

// delta_R * L^2 / c^2, dimensionless
double clock_freq_shift(double delta_r, double extent, const PhysicalConstants& constants);

// 0.5 * delta_R * L^2, dimensionless
double strain(double delta_r, double arm_length);

}  // namespace qetsim
