#pragma once

#include <optional>

#include "qetsim/core.hpp"

namespace qetsim {

// Inputs to the parametric SNR model plus the reference normalization point.
// n_units is kept as a real number so sweeps can sample it continuously.
struct SnrParameters {
  double n_units;   // N
  double spacing;   // d, m
  double finesse;   // F
  double rep_rate;  // f, Hz
  double squeeze;   // r
  double g_ent;
  double g_shape;
  double g_multi;
  double g_noise;
  double ref_n;  // N0
  double ref_d;  // d0, m

  void validate() const;
};

// Independent noise floors folded into the denominator's noise factor.
// gap_coeff enters as gap_coeff / (d in micrometers).
struct NoiseFloors {
  double detector_floor = 1e-4;
  double technical_floor = 1e-3;
  double gap_coeff = 1e-2;

  void validate() const;
};

// (N/d^3 * F/pi * G_ent*G_shape*G_multi) / (f^-1/2 * e^-r * G_eff).
// Without floors G_eff = g_noise; with floors the three entries are
// quadrature-summed onto a unit baseline:
//   G_eff = g_noise * (1 + sqrt(detector^2 + technical^2 + gap(d)^2)).
// The squeeze term sits in the denominator as e^-r, so larger r raises SNR.
double snr_parametric(const SnrParameters& p, const std::optional<NoiseFloors>& noise = {});

// snr_parametric(p) / snr_parametric(p at N = ref_n, d = ref_d); equals 1 at
// the reference point by construction. log10 of this is the plotted quantity.
double snr_normalized(const SnrParameters& p, const std::optional<NoiseFloors>& noise = {});

struct InterferometerNoise {
  double wavelength;        // m
  double arm_length;        // m
  double integration_time;  // s
  double snr_opt;           // optical detection sensitivity, dimensionless
};

struct MemsNoise {
  double accel_floor;  // m s^-2 Hz^-1/2
  double length;       // m
};

struct ClockNoise {
  double stability;  // fractional frequency floor
  double length;     // m
};

// Curvature-equivalent noise floors sigma_R, m^-2.
double sigma_r_platform(const InterferometerNoise& noise);
double sigma_r_platform(const MemsNoise& noise);
double sigma_r_platform(const ClockNoise& noise, const PhysicalConstants& constants);

// N * delta_r0 / sigma_r. N = 0 is degenerate but defined (returns 0).
double snr_curvature(double n_units, double delta_r0, double sigma_r);

}  // namespace qetsim
