#include "qetsim/observables.hpp"

#include <numbers>

namespace qetsim {

void InterferometerSpec::validate() const {
  if (!(arm_length > 0.0)) throw validation_error("interferometer arm_length must be > 0");
  if (!(wavelength > 0.0)) throw validation_error("interferometer wavelength must be > 0");
  if (!(baseline > 0.0)) throw validation_error("interferometer baseline must be > 0");
}

void ClockSpec::validate() const {
  if (!(extent > 0.0)) throw validation_error("clock extent must be > 0");
  if (!(duration > 0.0)) throw validation_error("clock duration must be > 0");
  if (!(stability > 0.0)) throw validation_error("clock stability must be > 0");
}

double phase_shift(double delta_r, const InterferometerSpec& spec) {
  spec.validate();
  return (2.0 * std::numbers::pi / spec.wavelength) * delta_r * spec.arm_length *
         spec.arm_length;
}

double path_shift_t(double delta_r_t, const InterferometerSpec& spec, double t) {
  spec.validate();
  if (t < 0.0) throw validation_error("path_shift_t requires t >= 0");
  return 0.5 * delta_r_t * spec.baseline * t * t;
}

double clock_drift(double delta_r, const ClockSpec& spec) {
  spec.validate();
  return (1.0 / 12.0) * delta_r * spec.extent * spec.extent * spec.duration;
}

double clock_freq_shift(double delta_r, double extent, const PhysicalConstants& constants) {
  if (!(extent > 0.0)) throw validation_error("clock_freq_shift requires extent > 0");
  constants.validate();
  return delta_r * extent * extent / (constants.c * constants.c);
}

double strain(double delta_r, double arm_length) {
  if (!(arm_length > 0.0)) throw validation_error("strain requires arm_length > 0");
  return 0.5 * delta_r * arm_length * arm_length;
}

}  // namespace qetsim
