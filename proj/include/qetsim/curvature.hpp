#pragma once

#include <string>
#include <vector>

#include "qetsim/core.hpp"

namespace qetsim {

// DipNegative maps negative energy density to a negative curvature dip
// (delta_R = +8 pi G <T00>); InvertedSign flips the overall sign
// (delta_R = -8 pi G <T00>). DipNegative is the plotting convention used
// by every profile and recipe in this artifact.
enum class SignConvention { DipNegative, InvertedSign };

const char* sign_convention_name(SignConvention s);
SignConvention sign_convention_from_name(const std::string& name);

inline double sign_factor(SignConvention s) {
  return s == SignConvention::DipNegative ? 1.0 : -1.0;
}

// Synchronized array curvature pulse in time: N * delta_r0 * exp(-(t-t0)^2 / 2 sigma_t^2).
struct GatedPulseSpec {
  std::size_t n_units;
  double delta_r0;  // m^-2, per-pair curvature magnitude, > 0
  double t0;        // s
  double sigma_t;   // s, > 0

  void validate() const;
};

// Timed chain of QET events firing at (x, t) = (k*spacing, k*gate_interval).
struct QixChainConfig {
  std::size_t n_events;
  double spacing;        // distance between successive events
  double sigma;          // spatial pulse width
  double gate_interval;  // time between successive firings
  double epsilon;        // source magnitude
  double tau_e;          // temporal event width; <= 0 selects the default sigma/c
  PhysicalConstants constants;

  void validate() const;
  double event_tau() const { return tau_e > 0.0 ? tau_e : sigma / constants.c; }
  double v_eff() const { return spacing / gate_interval; }
  bool superluminal() const { return v_eff() > constants.c; }
};

// Pointwise weak-field map delta_R = sign * 8 pi G * calibration * <T00>.
// The calibration factor defaults to the formula-literal 1.0; it exists so
// the output scale can be pinned explicitly instead of silently rescaled.
ScalarField static_curvature(const ScalarField& t00, const PhysicalConstants& constants,
                             SignConvention sign, double calibration = 1.0);

double gated_pulse(const GatedPulseSpec& spec, double t,
                   SignConvention sign = SignConvention::DipNegative);

// Traveling-dip closed form: -epsilon * exp(-(x - v t)^2 / 2 sigma^2), sampled
// on the space-time grid and tagged as curvature. |v| <= c is required in SI
// mode; Natural mode accepts any v (callers report superluminal separately).
SpaceTimeField qix_analytic(double epsilon, double v, double sigma, const GridST& grid,
                            const PhysicalConstants& constants);

// Causal 1+1D wave response: delta_R(x,t) = sign * 8 pi G * kappa * (K * <T00>)(x,t)
// with kernel K(x,t; x',t') = (c/2) on the past light cone c(t-t') >= |x-x'|
// and zero elsewhere, evaluated by direct discrete convolution (per-slice
// prefix sums, O(n_x * n_t) work per output slice). Requires c*dt <= dx.
SpaceTimeField solve_retarded(const SpaceTimeField& source, const PhysicalConstants& constants,
                              SignConvention sign, double kappa = 1.0);

struct QixChainResult {
  SpaceTimeField source;     // superposed event <T00>
  SpaceTimeField curvature;  // retarded response
  double v_eff;              // spacing / gate_interval
  bool superluminal;         // v_eff > c
  double kappa;              // normalization used for the retarded solve
};

// Builds the chain's <T00>, then propagates it with solve_retarded. kappa is
// chosen so one event's late-time response amplitude matches the static map
// of that event's spatial peak: kappa = 1 / (pi c sigma tau_e).
QixChainResult simulate_qix_chain(const QixChainConfig& config, const GridST& grid,
                                  SignConvention sign = SignConvention::DipNegative);

struct DipSample {
  double t;
  double x;        // sub-grid argmin position (parabolic refinement)
  double value;    // field value at the grid argmin
  bool degenerate; // slice had no unique minimum
};

struct DipTrack {
  std::vector<DipSample> samples;  // one per time slice
  double velocity;                 // least-squares slope of x(t) over the fit window
  bool degenerate;                 // too few usable samples to fit
  double window_skip;              // fraction of slices excluded at each end
};

// Per-slice minimum tracker with 3-point parabolic refinement. The velocity
// fit excludes the first and last window_skip fraction of slices and skips
// degenerate slices. A flat or empty trajectory yields degenerate = true
// with velocity 0, not an exception.
DipTrack track_dip(const SpaceTimeField& field, double window_skip = 0.1);

// Full width of the connected region around the global minimum at half its
// depth, with linear interpolation at the crossings. NaN for a flat field.
double fwhm_around_min(const ScalarField& field);

}  // namespace qetsim
