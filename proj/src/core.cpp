#include "qetsim/core.hpp"

#include <cmath>
#include <string>

namespace qetsim {

PhysicalConstants PhysicalConstants::si() {
  return {6.67430e-11, 299792458.0, UnitMode::Si};
}

PhysicalConstants PhysicalConstants::natural() {
  return {1.0, 1.0, UnitMode::Natural};
}

void PhysicalConstants::validate() const {
  if (!(G > 0.0) || !(c > 0.0)) {
    throw validation_error("physical constants require G > 0 and c > 0");
  }
  if (unit_mode == UnitMode::Natural && (G != 1.0 || c != 1.0)) {
    throw validation_error("natural unit mode requires c == 1 and G == 1 exactly");
  }
}

Grid1D::Grid1D(double x_min_, double x_max_, std::size_t n_x_)
    : x_min(x_min_), x_max(x_max_), n_x(n_x_) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw validation_error("grid bounds must be finite");
  }
  if (!(x_min < x_max)) {
    throw validation_error("grid requires x_min < x_max, got [" + std::to_string(x_min) +
                           ", " + std::to_string(x_max) + "]");
  }
  if (n_x < 2) {
    throw validation_error("grid requires n_x >= 2, got " + std::to_string(n_x));
  }
}

std::vector<double> Grid1D::coords() const {
  std::vector<double> xs(n_x);
  for (std::size_t i = 0; i < n_x; ++i) xs[i] = coord(i);
  return xs;
}

GridST::GridST(Grid1D space_, double t_min_, double t_max_, std::size_t n_t_)
    : space(space_), t_min(t_min_), t_max(t_max_), n_t(n_t_) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw validation_error("time bounds must be finite");
  }
  if (!(t_min < t_max)) {
    throw validation_error("space-time grid requires t_min < t_max, got [" +
                           std::to_string(t_min) + ", " + std::to_string(t_max) + "]");
  }
  if (n_t < 2) {
    throw validation_error("space-time grid requires n_t >= 2, got " + std::to_string(n_t));
  }
}

std::vector<double> GridST::times() const {
  std::vector<double> ts(n_t);
  for (std::size_t n = 0; n < n_t; ++n) ts[n] = time(n);
  return ts;
}

GridST make_grid_st(const Grid1D& space, double t_min, double t_max, std::size_t n_t) {
  return GridST(space, t_min, t_max, n_t);
}

const char* quantity_unit(Quantity q) {
  return q == Quantity::EnergyDensity ? "J/m^3" : "m^-2";
}

namespace {

void check_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw validation_error("field value at index " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

ScalarField::ScalarField(Grid1D grid_, Quantity quantity_, std::vector<double> values_)
    : grid(grid_), quantity(quantity_), values(std::move(values_)) {
  if (values.size() != grid.n_x) {
    throw validation_error("field has " + std::to_string(values.size()) +
                           " values for a grid of " + std::to_string(grid.n_x) + " points");
  }
  check_finite(values);
}

double ScalarField::min_value() const { return values[argmin()]; }

std::size_t ScalarField::argmin() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

SpaceTimeField::SpaceTimeField(GridST grid_, Quantity quantity_, std::vector<double> values_)
    : grid(grid_), quantity(quantity_), values(std::move(values_)) {
  if (values.size() != grid.n_points()) {
    throw validation_error("field has " + std::to_string(values.size()) +
                           " values for a lattice of " + std::to_string(grid.n_points()) +
                           " points");
  }
  check_finite(values);
}

}  // namespace qetsim
