#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qetsim/core.hpp"

namespace qetsim {

// Localized negative-energy source. epsilon stores the positive magnitude;
// the emitted density is -epsilon at the pulse center.
struct GaussianPulse {
  double epsilon;  // J/m^3, > 0
  double x0;       // m
  double t0;       // s
  double sigma;    // m, > 0
  double tau;      // s, > 0

  void validate() const;
};

enum class Architecture { SinglePair, Uncoordinated, Synchronized };

const char* architecture_name(Architecture a);
Architecture architecture_from_name(const std::string& name);

struct ArrayConfig {
  Architecture architecture;
  std::size_t n_units;
  // Unit separation for Synchronized; total placement span for Uncoordinated.
  double spacing;  // m
  GaussianPulse unit_pulse;
  std::uint64_t seed;  // Uncoordinated placement

  void validate() const;
  // Deterministic unit centers. Synchronized units sit at symmetric
  // multiples of `spacing` around x0 (half-integer multiples for even N);
  // Uncoordinated units are drawn uniformly over [x0 - spacing/2, x0 + spacing/2].
  std::vector<double> unit_centers() const;
};

struct InterferenceConfig {
  double lambda_strength;  // J/m per branch, >= 0
  double x_left;           // m
  double x_right;          // m
  double branch_width;     // m, > 0; Gaussian regularization width of the branch profiles
  double rel_phase;        // rad

  void validate() const;
};

// -epsilon * exp(-(x-x0)^2/2 sigma^2 - (t-t0)^2/2 tau^2); <= 0 everywhere.
double eval_gaussian_t00(const GaussianPulse& pulse, double x, double t);

// Pointwise superposition of the array's unit pulses at time t.
// Rejects grids that do not cover every unit center +-5 sigma.
ScalarField sample_array_t00(const ArrayConfig& config, const Grid1D& grid, double t);

// Two regularized branches plus the phase-dependent two-path cross term:
//   -lambda*(gL + gR) - 2*lambda*cos(rel_phase)*sqrt(gL*gR)
// where gL, gR are unit-peak Gaussians of width branch_width.
ScalarField interference_t00(const InterferenceConfig& config, const Grid1D& grid);

}  // namespace qetsim
