#include <doctest.h>

#include <cmath>
#include <cstring>

#include "qetsim/curvature.hpp"
#include "qetsim/rng.hpp"
#include "qetsim/stress_energy.hpp"

using namespace qetsim;

namespace {

SpaceTimeField impulse_source(const GridST& grid, std::size_t i0, std::size_t m0,
                              double weight) {
  std::vector<double> values(grid.n_points(), 0.0);
  values[m0 * grid.space.n_x + i0] = weight / (grid.space.spacing() * grid.dt());
  return SpaceTimeField(grid, Quantity::EnergyDensity, std::move(values));
}

}  // namespace

TEST_CASE("static weak-field map") {
  const auto constants = PhysicalConstants::si();
  const Grid1D grid(0.0, 1.0, 5);

  SUBCASE("vacuum stays flat") {
    const ScalarField t00(grid, Quantity::EnergyDensity, std::vector<double>(5, 0.0));
    for (const double v : static_curvature(t00, constants, SignConvention::DipNegative).values) {
      CHECK(v == 0.0);
    }
  }

  SUBCASE("formula-literal amplitude") {
    const ScalarField t00(grid, Quantity::EnergyDensity, std::vector<double>(5, -1e-11));
    const ScalarField dip = static_curvature(t00, constants, SignConvention::DipNegative);
    const double expected = -8.0 * M_PI * constants.G * 1e-11;
    CHECK(dip.values[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(dip.values[0] == doctest::Approx(-1.677e-20).epsilon(1e-3));
    CHECK(dip.quantity == Quantity::Curvature);

    const ScalarField flipped = static_curvature(t00, constants, SignConvention::InvertedSign);
    CHECK(flipped.values[0] == -dip.values[0]);
  }

  SUBCASE("calibration factor scales the output") {
    const ScalarField t00(grid, Quantity::EnergyDensity, std::vector<double>(5, -2.0));
    const ScalarField a = static_curvature(t00, constants, SignConvention::DipNegative, 1.0);
    const ScalarField b = static_curvature(t00, constants, SignConvention::DipNegative, 0.5);
    CHECK(b.values[2] == 0.5 * a.values[2]);
  }

  SUBCASE("mis-tagged input is rejected") {
    const ScalarField wrong(grid, Quantity::Curvature, std::vector<double>(5, 0.0));
    CHECK_THROWS_AS(static_curvature(wrong, constants, SignConvention::DipNegative),
                    validation_error);
  }
}

TEST_CASE("gated curvature pulse") {
  const GatedPulseSpec one{1, 1e-36, 0.0, 1.0};
  CHECK(std::abs(gated_pulse(one, 0.0)) == 1e-36);
  CHECK(gated_pulse(one, 0.0) < 0.0);  // dip convention
  CHECK(gated_pulse(one, 0.0, SignConvention::InvertedSign) > 0.0);

  CHECK(std::abs(gated_pulse(one, 1.0)) ==
        doctest::Approx(1e-36 * std::exp(-0.5)).epsilon(1e-15));

  const GatedPulseSpec ten{10, 1e-36, 0.0, 1.0};
  CHECK(gated_pulse(ten, 0.0) == 10.0 * gated_pulse(one, 0.0));

  SplitMix64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + (rng.next() % 50);
    const double r0 = rng.uniform(1e-38, 1e-30);
    const double t = rng.uniform(-3.0, 3.0);
    const GatedPulseSpec base{1, r0, 0.0, 1.0};
    const GatedPulseSpec scaled{n, 3.0 * r0, 0.0, 1.0};
    CHECK(gated_pulse(scaled, t) ==
          doctest::Approx(static_cast<double>(n) * 3.0 * gated_pulse(base, t)).epsilon(1e-15));
  }
}

TEST_CASE("analytic traveling dip") {
  const auto natural = PhysicalConstants::natural();
  const GridST grid = make_grid_st(Grid1D(-5.0, 10.0, 301), 0.0, 8.0, 81);

  SUBCASE("minimum follows x = v t") {
    const SpaceTimeField field = qix_analytic(1.0, 0.5, 0.8, grid, natural);
    for (std::size_t n = 0; n < grid.n_t; n += 7) {
      const auto row = field.slice(n);
      std::size_t best = 0;
      for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i] < row[best]) best = i;
      }
      CHECK(std::abs(grid.space.coord(best) - 0.5 * grid.time(n)) <=
            grid.space.spacing() / 2.0 + 1e-12);
    }
  }

  SUBCASE("static limit has identical slices") {
    const SpaceTimeField field = qix_analytic(1.0, 0.0, 0.8, grid, natural);
    for (std::size_t n = 1; n < grid.n_t; ++n) {
      CHECK(std::memcmp(field.slice(0).data(), field.slice(n).data(),
                        grid.space.n_x * sizeof(double)) == 0);
    }
  }

  SUBCASE("peak value is -epsilon on the trajectory") {
    // v = 0 keeps the peak pinned on a grid point at x = 0.
    const SpaceTimeField field = qix_analytic(2.5, 0.0, 0.8, grid, natural);
    CHECK(*std::min_element(field.values.begin(), field.values.end()) == -2.5);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(qix_analytic(1.0, 0.5, -1.0, grid, natural), validation_error);
    CHECK_THROWS_AS(qix_analytic(1.0, 2.0 * 299792458.0, 0.8, grid, PhysicalConstants::si()),
                    validation_error);
    CHECK_NOTHROW(qix_analytic(1.0, 2.5, 0.8, grid, natural));
  }
}

TEST_CASE("retarded impulse response") {
  const auto natural = PhysicalConstants::natural();
  const GridST grid = make_grid_st(Grid1D(-2.0, 2.0, 81), 0.0, 2.0, 81);
  const double dx = grid.space.spacing();  // 0.05
  const double dt = grid.dt();             // 0.025
  REQUIRE(natural.c * dt <= dx);

  const std::size_t i0 = 40, m0 = 8;  // x = 0, t = 0.2
  const SpaceTimeField source = impulse_source(grid, i0, m0, 1.0);
  const SpaceTimeField response =
      solve_retarded(source, natural, SignConvention::DipNegative);

  const double plateau = 8.0 * M_PI * natural.G * 1.0 * (natural.c / 2.0);
  const double x0 = grid.space.coord(i0);
  const double t0 = grid.time(m0);
  for (std::size_t n = 0; n < grid.n_t; ++n) {
    for (std::size_t i = 0; i < grid.space.n_x; ++i) {
      const double gap = std::abs(grid.space.coord(i) - x0) - natural.c * (grid.time(n) - t0);
      if (gap > 1e-9) {
        CHECK(response.at(n, i) == 0.0);  // outside the cone: exactly zero
      } else if (gap < -1e-9) {
        CHECK(response.at(n, i) == doctest::Approx(plateau).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("retarded solve is linear") {
  const auto natural = PhysicalConstants::natural();
  const GridST grid = make_grid_st(Grid1D(-2.0, 2.0, 41), 0.0, 1.8, 41);
  SplitMix64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> sa(grid.n_points()), sb(grid.n_points());
    for (auto& v : sa) v = -rng.uniform01();
    for (auto& v : sb) v = -rng.uniform01();
    const double a = rng.uniform(0.1, 3.0);
    const double b = rng.uniform(0.1, 3.0);
    std::vector<double> combined(grid.n_points());
    for (std::size_t k = 0; k < combined.size(); ++k) combined[k] = a * sa[k] + b * sb[k];

    const auto ra = solve_retarded(SpaceTimeField(grid, Quantity::EnergyDensity, sa), natural,
                                   SignConvention::DipNegative);
    const auto rb = solve_retarded(SpaceTimeField(grid, Quantity::EnergyDensity, sb), natural,
                                   SignConvention::DipNegative);
    const auto rc = solve_retarded(SpaceTimeField(grid, Quantity::EnergyDensity, combined),
                                   natural, SignConvention::DipNegative);
    for (std::size_t k = 0; k < combined.size(); ++k) {
      const double expected = a * ra.values[k] + b * rb.values[k];
      const double scale = std::max(std::abs(expected), 1e-30);
      CHECK(std::abs(rc.values[k] - expected) / scale < 1e-12);
    }
  }
}

TEST_CASE("retarded solve convergence and preconditions") {
  const auto natural = PhysicalConstants::natural();

  SUBCASE("halving the spacing leaves the impulse plateau within 1%") {
    double plateaus[2];
    const std::size_t sizes[2] = {81, 161};
    for (int k = 0; k < 2; ++k) {
      const GridST grid = make_grid_st(Grid1D(-2.0, 2.0, sizes[k]), 0.0, 1.6, sizes[k]);
      const std::size_t i0 = sizes[k] / 2;
      const SpaceTimeField src = impulse_source(grid, i0, 0, 1.0);
      const auto out = solve_retarded(src, natural, SignConvention::DipNegative);
      plateaus[k] = out.at(grid.n_t - 1, i0);
    }
    CHECK(std::abs(plateaus[1] - plateaus[0]) <= 0.01 * std::abs(plateaus[0]));
  }

  SUBCASE("time-step bound is enforced at entry") {
    const GridST bad = make_grid_st(Grid1D(0.0, 1.0, 11), 0.0, 10.0, 11);
    const SpaceTimeField src(bad, Quantity::EnergyDensity,
                             std::vector<double>(bad.n_points(), 0.0));
    CHECK_THROWS_AS(solve_retarded(src, natural, SignConvention::DipNegative),
                    validation_error);
  }

  SUBCASE("mis-tagged source is rejected") {
    const GridST grid = make_grid_st(Grid1D(0.0, 1.0, 11), 0.0, 0.5, 11);
    const SpaceTimeField src(grid, Quantity::Curvature,
                             std::vector<double>(grid.n_points(), 0.0));
    CHECK_THROWS_AS(solve_retarded(src, natural, SignConvention::DipNegative),
                    validation_error);
  }
}

TEST_CASE("chain simulation") {
  const auto natural = PhysicalConstants::natural();

  SUBCASE("a single event does not translate") {
    QixChainConfig config{1, 1.0, 0.5, 0.375, 1.0, 0.0, natural};
    const GridST grid = make_grid_st(Grid1D(-4.0, 4.0, 161), 0.0, 3.0, 161);
    const QixChainResult sim = simulate_qix_chain(config, grid);
    const DipTrack track = track_dip(sim.curvature);
    CHECK(!track.degenerate);
    CHECK(std::abs(track.velocity) < 0.05);
  }

  SUBCASE("a sub-luminal chain travels at the gate velocity") {
    QixChainConfig config{10, 0.5, 0.5, 1.0, 1.0, 0.0, natural};
    CHECK(config.v_eff() == 0.5);
    CHECK(!config.superluminal());
    const GridST grid = make_grid_st(Grid1D(-4.0, 10.0, 257), 0.0, 10.0, 257);
    const QixChainResult sim = simulate_qix_chain(config, grid);
    const DipTrack track = track_dip(sim.curvature);
    CHECK(!track.degenerate);
    CHECK(track.velocity == doctest::Approx(0.5).epsilon(0.10));
  }

  SUBCASE("doubling the source magnitude doubles the response") {
    QixChainConfig config{3, 1.0, 0.5, 0.5, 1.0, 0.0, natural};
    const GridST grid = make_grid_st(Grid1D(-4.0, 7.0, 129), 0.0, 3.0, 129);
    const QixChainResult one = simulate_qix_chain(config, grid);
    config.epsilon = 2.0;
    const QixChainResult two = simulate_qix_chain(config, grid);
    for (std::size_t k = 0; k < one.curvature.values.size(); ++k) {
      CHECK(two.curvature.values[k] == 2.0 * one.curvature.values[k]);
    }
  }

  SUBCASE("grids must cover the events and the schedule") {
    QixChainConfig config{10, 1.0, 0.5, 0.375, 1.0, 0.0, natural};
    CHECK_THROWS_AS(
        simulate_qix_chain(config, make_grid_st(Grid1D(-4.0, 5.0, 65), 0.0, 4.5, 129)),
        validation_error);
    CHECK_THROWS_AS(
        simulate_qix_chain(config, make_grid_st(Grid1D(-4.0, 14.0, 129), 0.0, 2.0, 65)),
        validation_error);
  }
}

TEST_CASE("dip tracker") {
  const auto natural = PhysicalConstants::natural();

  SUBCASE("recovers the analytic velocity within 2%") {
    const GridST grid = make_grid_st(Grid1D(-5.0, 10.0, 301), 0.0, 8.0, 161);
    const SpaceTimeField field = qix_analytic(1.0, 0.5, 0.8, grid, natural);
    const DipTrack track = track_dip(field);
    CHECK(!track.degenerate);
    CHECK(track.velocity == doctest::Approx(0.5).epsilon(0.02));
  }

  SUBCASE("static dip fits zero velocity") {
    const GridST grid = make_grid_st(Grid1D(-5.0, 5.0, 201), 0.0, 4.0, 81);
    const SpaceTimeField field = qix_analytic(1.0, 0.0, 0.8, grid, natural);
    const DipTrack track = track_dip(field);
    CHECK(!track.degenerate);
    CHECK(std::abs(track.velocity) < 1e-12);
  }

  SUBCASE("a flat field is degenerate, not an error") {
    const GridST grid = make_grid_st(Grid1D(-1.0, 1.0, 21), 0.0, 1.0, 21);
    const SpaceTimeField field(grid, Quantity::Curvature,
                               std::vector<double>(grid.n_points(), 0.0));
    const DipTrack track = track_dip(field);
    CHECK(track.degenerate);
    CHECK(track.velocity == 0.0);
  }

  SUBCASE("only curvature fields are tracked") {
    const GridST grid = make_grid_st(Grid1D(-1.0, 1.0, 21), 0.0, 1.0, 21);
    const SpaceTimeField field(grid, Quantity::EnergyDensity,
                               std::vector<double>(grid.n_points(), 0.0));
    CHECK_THROWS_AS(track_dip(field), validation_error);
  }
}

TEST_CASE("half-depth width of a gaussian profile") {
  const Grid1D grid(-1.0, 1.0, 4001);
  std::vector<double> values(grid.n_x);
  for (std::size_t i = 0; i < grid.n_x; ++i) {
    const double x = grid.coord(i);
    values[i] = -std::exp(-x * x / (2.0 * 0.1 * 0.1));
  }
  const ScalarField field(grid, Quantity::Curvature, std::move(values));
  const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) * 0.1;
  CHECK(fwhm_around_min(field) == doctest::Approx(expected).epsilon(5e-3));
}
