#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qetsim/errors.hpp"

namespace qetsim {

enum class UnitMode { Si, Natural };

struct PhysicalConstants {
  double G;  // m^3 kg^-1 s^-2
  double c;  // m/s
  UnitMode unit_mode;

  static PhysicalConstants si();
  static PhysicalConstants natural();  // c = G = 1 exactly

  void validate() const;
};

// Uniform 1D spatial grid. Coordinates are always recomputed as
// x_min + i*spacing so reconstruction from (min, max, n) is bitwise stable.
struct Grid1D {
  double x_min;  // m
  double x_max;  // m
  std::size_t n_x;

  Grid1D(double x_min, double x_max, std::size_t n_x);

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
  double coord(std::size_t i) const { return x_min + static_cast<double>(i) * spacing(); }
  std::vector<double> coords() const;
  bool covers(double lo, double hi) const { return x_min <= lo && hi <= x_max; }
};

// Uniform space-time lattice. The CFL-style bound c*dt <= dx is checked by
// the retarded solver, not here.
struct GridST {
  Grid1D space;
  double t_min;  // s
  double t_max;  // s
  std::size_t n_t;

  GridST(Grid1D space, double t_min, double t_max, std::size_t n_t);

  double dt() const { return (t_max - t_min) / static_cast<double>(n_t - 1); }
  double time(std::size_t n) const { return t_min + static_cast<double>(n) * dt(); }
  std::vector<double> times() const;
  std::size_t n_points() const { return space.n_x * n_t; }
};

GridST make_grid_st(const Grid1D& space, double t_min, double t_max, std::size_t n_t);

enum class Quantity { EnergyDensity, Curvature };

const char* quantity_unit(Quantity q);  // "J/m^3" or "m^-2"

// Sampled scalar quantity on a Grid1D. Construction rejects non-finite values.
struct ScalarField {
  Grid1D grid;
  Quantity quantity;
  std::vector<double> values;

  ScalarField(Grid1D grid, Quantity quantity, std::vector<double> values);

  double min_value() const;
  std::size_t argmin() const;
};

// Sampled scalar quantity on a GridST; values are time-slice major:
// values[n*n_x + i] for time index n, space index i.
struct SpaceTimeField {
  GridST grid;
  Quantity quantity;
  std::vector<double> values;

  SpaceTimeField(GridST grid, Quantity quantity, std::vector<double> values);

  double at(std::size_t n, std::size_t i) const { return values[n * grid.space.n_x + i]; }
  std::span<const double> slice(std::size_t n) const {
    return {values.data() + n * grid.space.n_x, grid.space.n_x};
  }
};

}  // namespace qetsim
