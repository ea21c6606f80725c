#include <doctest.h>

#include <cmath>

#include "qetsim/rng.hpp"
#include "qetsim/snr.hpp"

using namespace qetsim;

namespace {

SnrParameters reference_point() {
  return SnrParameters{100.0, 0.1, 1e4, 1e5, 1.5, 2.0, 2.0, 2.0, 1.0, 1e3, 0.05};
}

SnrParameters random_point(SplitMix64& rng) {
  return SnrParameters{rng.uniform(1.0, 1e4),   rng.uniform(1e-3, 1.0), rng.uniform(10.0, 1e5),
                       rng.uniform(1e2, 1e6),   rng.uniform(0.0, 3.0),  rng.uniform(0.5, 10.0),
                       rng.uniform(0.5, 10.0),  rng.uniform(0.5, 10.0), rng.uniform(0.5, 10.0),
                       rng.uniform(10.0, 1e4),  rng.uniform(1e-3, 1.0)};
}

}  // namespace

TEST_CASE("parametric model matches direct arithmetic") {
  const double snr = snr_parametric(reference_point());
  const double numerator = (100.0 / std::pow(0.1, 3)) * (1e4 / M_PI) * 2.0 * 2.0 * 2.0;
  const double denominator = (1.0 / std::sqrt(1e5)) * std::exp(-1.5) * 1.0;
  CHECK(snr == doctest::Approx(numerator / denominator).epsilon(1e-14));
  CHECK(snr == doctest::Approx(3.609e12).epsilon(1e-3));
}

TEST_CASE("all-unity inputs give SNR = 1") {
  const SnrParameters p{1.0, 1.0, M_PI, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(snr_parametric(p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("doubling the unit count doubles the SNR") {
  SnrParameters p = reference_point();
  const double base = snr_parametric(p);
  p.n_units *= 2.0;
  CHECK(snr_parametric(p) == doctest::Approx(2.0 * base).epsilon(1e-15));
}

TEST_CASE("homogeneity in every factor") {
  SplitMix64 rng(51);
  for (int i = 0; i < 1000; ++i) {
    const SnrParameters p = random_point(rng);
    const double base = snr_parametric(p);

    SnrParameters q = p;
    q.n_units = 2.0 * p.n_units;
    CHECK(snr_parametric(q) / base == doctest::Approx(2.0).epsilon(1e-12));

    q = p;
    q.spacing = p.spacing / 2.0;
    CHECK(snr_parametric(q) / base == doctest::Approx(8.0).epsilon(1e-12));

    q = p;
    q.rep_rate = 4.0 * p.rep_rate;
    CHECK(snr_parametric(q) / base == doctest::Approx(2.0).epsilon(1e-12));

    q = p;
    q.squeeze = p.squeeze + 1.0;
    CHECK(snr_parametric(q) / base == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

    q = p;
    q.finesse = 3.0 * p.finesse;
    q.g_ent = 2.0 * p.g_ent;
    CHECK(snr_parametric(q) / base == doctest::Approx(6.0).epsilon(1e-12));
  }
}

TEST_CASE("monotonicity in squeezing and noise") {
  SplitMix64 rng(53);
  for (int i = 0; i < 500; ++i) {
    const SnrParameters p = random_point(rng);
    SnrParameters q = p;
    q.squeeze = p.squeeze + rng.uniform(0.01, 2.0);
    CHECK(snr_parametric(q) > snr_parametric(p));
    q = p;
    q.g_noise = p.g_noise * rng.uniform(1.01, 5.0);
    CHECK(snr_parametric(q) < snr_parametric(p));
  }
}

TEST_CASE("noise floors fold into the denominator") {
  SnrParameters p = reference_point();
  const NoiseFloors floors;
  const double with = snr_parametric(p, floors);
  const double without = snr_parametric(p);
  CHECK(with < without);

  const double d_um = p.spacing * 1e6;
  const double gap = floors.gap_coeff / d_um;
  const double g_eff = 1.0 + std::sqrt(floors.detector_floor * floors.detector_floor +
                                       floors.technical_floor * floors.technical_floor +
                                       gap * gap);
  CHECK(with == doctest::Approx(without / g_eff).epsilon(1e-13));
}

TEST_CASE("SNR decreases monotonically in spacing even with gap noise") {
  SnrParameters p = reference_point();
  const NoiseFloors floors;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 600; ++i) {
    // d from 1 micrometer to 1 m, log spaced
    p.spacing = std::pow(10.0, -6.0 + 6.0 * i / 600.0);
    const double snr = snr_parametric(p, floors);
    CHECK(snr < prev);
    prev = snr;
  }
}

TEST_CASE("normalized SNR") {
  SnrParameters p = reference_point();

  SUBCASE("equals one at the reference point regardless of other parameters") {
    SplitMix64 rng(57);
    for (int i = 0; i < 500; ++i) {
      SnrParameters q = random_point(rng);
      q.n_units = q.ref_n;
      q.spacing = q.ref_d;
      CHECK(snr_normalized(q) == 1.0);
    }
  }

  SUBCASE("linear in the unit count") {
    p.n_units = 10.0 * p.ref_n;
    p.spacing = p.ref_d;
    CHECK(snr_normalized(p) == doctest::Approx(10.0).epsilon(1e-13));
  }

  SUBCASE("cubic in the spacing") {
    p.n_units = p.ref_n;
    p.spacing = 2.0 * p.ref_d;
    CHECK(snr_normalized(p) == doctest::Approx(0.125).epsilon(1e-13));
  }
}

TEST_CASE("platform noise floors") {
  CHECK(sigma_r_platform(InterferometerNoise{1e-6, 1.0, 1.0, 1.0}) ==
        doctest::Approx(1e-6).epsilon(1e-15));
  CHECK(sigma_r_platform(MemsNoise{1e-10, 1e-3}) == doctest::Approx(1e-7).epsilon(1e-15));

  const double base = sigma_r_platform(InterferometerNoise{1e-6, 1.0, 1.0, 1.0});
  const double longer = sigma_r_platform(InterferometerNoise{1e-6, 1.0, 4.0, 1.0});
  CHECK(longer == doctest::Approx(base / 2.0).epsilon(1e-15));

  const auto si = PhysicalConstants::si();
  CHECK(sigma_r_platform(ClockNoise{1e-18, 1e-3}, si) ==
        doctest::Approx(1e-18 * si.c * si.c / 1e-6).epsilon(1e-13));
  CHECK(sigma_r_platform(ClockNoise{1e-18, 2.0}, PhysicalConstants::natural()) ==
        doctest::Approx(1e-18 / 4.0).epsilon(1e-13));

  CHECK_THROWS_AS(sigma_r_platform(MemsNoise{0.0, 1.0}), validation_error);
}

TEST_CASE("curvature SNR") {
  CHECK(snr_curvature(10.0, 1e-36, 1e-35) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snr_curvature(0.0, 1e-36, 1e-35) == 0.0);
  CHECK(snr_curvature(100.0, 1e-36, 1e-35) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(snr_curvature(10.0, 1e-36, 0.0), validation_error);
  CHECK_THROWS_AS(snr_curvature(-1.0, 1e-36, 1e-35), validation_error);

  SplitMix64 rng(61);
  for (int i = 0; i < 500; ++i) {
    const double n = rng.uniform(1.0, 1e4);
    const double r0 = rng.uniform(1e-38, 1e-30);
    const double floor = rng.uniform(1e-37, 1e-30);
    const double base = snr_curvature(n, r0, floor);
    CHECK(snr_curvature(5.0 * n, r0, floor) == doctest::Approx(5.0 * base).epsilon(1e-13));
    CHECK(snr_curvature(n, 5.0 * r0, floor) == doctest::Approx(5.0 * base).epsilon(1e-13));
    CHECK(snr_curvature(n, r0, 5.0 * floor) == doctest::Approx(base / 5.0).epsilon(1e-13));
  }
}

TEST_CASE("parameter bounds are enforced by name") {
  SnrParameters p = reference_point();
  p.finesse = -3.0;
  try {
    snr_parametric(p);
    FAIL("expected a validation error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("finesse") != std::string::npos);
    CHECK(std::string(e.what()).find("> 0") != std::string::npos);
  }

  p = reference_point();
  p.spacing = 0.0;
  CHECK_THROWS_AS(snr_parametric(p), validation_error);
  p = reference_point();
  p.rep_rate = 0.0;
  CHECK_THROWS_AS(snr_parametric(p), validation_error);
}
