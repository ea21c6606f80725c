#include "qetsim/snr.hpp"

#include <cmath>
#include <numbers>

namespace qetsim {

void SnrParameters::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw validation_error(std::string("snr parameter ") + name + " must be > 0");
    }
  };
  positive(n_units, "n_units");
  positive(spacing, "spacing");
  positive(finesse, "finesse");
  positive(rep_rate, "rep_rate");
  if (!(squeeze >= 0.0)) {
    throw validation_error("snr parameter squeeze must be >= 0");
  }
  positive(g_ent, "g_ent");
  positive(g_shape, "g_shape");
  positive(g_multi, "g_multi");
  positive(g_noise, "g_noise");
  positive(ref_n, "ref_n");
  positive(ref_d, "ref_d");
}

void NoiseFloors::validate() const {
  if (!(detector_floor >= 0.0) || !(technical_floor >= 0.0) || !(gap_coeff >= 0.0)) {
    throw validation_error("noise floors must be >= 0");
  }
}

double snr_parametric(const SnrParameters& p, const std::optional<NoiseFloors>& noise) {
  p.validate();
  const double numerator = (p.n_units / (p.spacing * p.spacing * p.spacing)) *
                           (p.finesse / std::numbers::pi) * p.g_ent * p.g_shape * p.g_multi;
  double g_eff = p.g_noise;
  if (noise) {
    noise->validate();
    const double d_um = p.spacing * 1e6;
    const double gap = noise->gap_coeff / d_um;
    g_eff = p.g_noise * (1.0 + std::sqrt(noise->detector_floor * noise->detector_floor +
                                         noise->technical_floor * noise->technical_floor +
                                         gap * gap));
  }
  const double denominator = (1.0 / std::sqrt(p.rep_rate)) * std::exp(-p.squeeze) * g_eff;
  return numerator / denominator;
}

double snr_normalized(const SnrParameters& p, const std::optional<NoiseFloors>& noise) {
  SnrParameters ref = p;
  ref.n_units = p.ref_n;
  ref.spacing = p.ref_d;
  return snr_parametric(p, noise) / snr_parametric(ref, noise);
}

double sigma_r_platform(const InterferometerNoise& noise) {
  if (!(noise.wavelength > 0.0 && noise.arm_length > 0.0 && noise.integration_time > 0.0 &&
        noise.snr_opt > 0.0)) {
    throw validation_error("interferometer noise parameters must be > 0");
  }
  return (noise.wavelength / (noise.arm_length * noise.arm_length)) /
         std::sqrt(noise.integration_time) / noise.snr_opt;
}

double sigma_r_platform(const MemsNoise& noise) {
  if (!(noise.accel_floor > 0.0 && noise.length > 0.0)) {
    throw validation_error("mems noise parameters must be > 0");
  }
  return noise.accel_floor / noise.length;
}

double sigma_r_platform(const ClockNoise& noise, const PhysicalConstants& constants) {
  if (!(noise.stability > 0.0 && noise.length > 0.0)) {
    throw validation_error("clock noise parameters must be > 0");
  }
  constants.validate();
  // Frequency-shift relation delta_f/f = delta_R L^2 / c^2 inverted at the
  // stability floor; in natural mode c = 1 drops out.
  return noise.stability * constants.c * constants.c / (noise.length * noise.length);
}

double snr_curvature(double n_units, double delta_r0, double sigma_r) {
  if (!(sigma_r > 0.0)) throw validation_error("snr_curvature requires sigma_r > 0");
  if (n_units < 0.0) throw validation_error("snr_curvature requires n_units >= 0");
  return n_units * delta_r0 / sigma_r;
}

}  // namespace qetsim
