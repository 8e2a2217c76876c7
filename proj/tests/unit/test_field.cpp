// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "beamsynth/errors.hpp"
#include "beamsynth/field.hpp"
#include "test_support.hpp"

using namespace beamsynth;
using namespace beamsynth::pattern;

namespace {

constexpr double kPi = std::numbers::pi;
double rad(double deg) { return deg * kPi / 180.0; }

// Straight double sum over the element grid of one subarray.
double direct_subarray_pattern(const ArrayConfig& c, double theta_deg, double phi_deg) {
  const double u = std::sin(rad(theta_deg)) * std::cos(rad(phi_deg));
  const double v = std::sin(rad(theta_deg)) * std::sin(rad(phi_deg));
  std::complex<double> sum{0.0, 0.0};
  for (int a = 0; a < c.elements_per_subarray_x; ++a) {
    for (int b = 0; b < c.elements_per_subarray_y; ++b) {
      sum += std::polar(1.0, 2.0 * kPi * c.element_pitch_wavelengths * (a * u + b * v));
    }
  }
  return std::pow(std::cos(rad(theta_deg)), c.element_pattern_exponent) * std::abs(sum);
}

// Straight double sum of the steered array factor.
std::complex<double> direct_array_factor(const ArrayConfig& c, const WeightMatrix& w,
                                         double theta_deg, double phi_deg) {
  const double k = 2.0 * kPi;
  const double d = c.subarray_pitch_wavelengths;
  const double u = std::sin(rad(theta_deg)) * std::cos(rad(phi_deg));
  const double v = std::sin(rad(theta_deg)) * std::sin(rad(phi_deg));
  const double u0 = std::sin(rad(w.steering.theta_deg)) * std::cos(rad(w.steering.phi_deg));
  const double v0 = std::sin(rad(w.steering.theta_deg)) * std::sin(rad(w.steering.phi_deg));
  std::complex<double> sum{0.0, 0.0};
  for (int m = 0; m < c.subarray_count_x; ++m) {
    for (int n = 0; n < c.subarray_count_y; ++n) {
      if (!w.mask(m, n)) continue;
      sum += std::polar(1.0, m * (k * d * u - k * d * u0) + n * (k * d * v - k * d * v0));
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("array factor of a fully active 2 x 2 at broadside") {
  const ArrayConfig c = test::point_array(2, 2, 0.5);
  const WeightMatrix w{ActivationMask(2, 2, true), {0.0, 0.0}};
  CHECK(std::abs(array_factor(c, w, 0.0, 0.0)) == doctest::Approx(4.0));
}

TEST_CASE("full-wavelength spacing has a grating lobe at endfire") {
  const ArrayConfig c = test::point_array(2, 1, 1.0);
  const WeightMatrix w{ActivationMask(2, 1, true), {0.0, 0.0}};
  CHECK(std::abs(array_factor(c, w, 90.0, 0.0)) == doctest::Approx(2.0));
}

TEST_CASE("progressive phase re-points the beam") {
  const ArrayConfig c = test::point_array(2, 1, 0.5);
  const WeightMatrix w{ActivationMask(2, 1, true), {30.0, 0.0}};
  CHECK(std::abs(array_factor(c, w, 30.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(array_factor(c, w, 0.0, 0.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("array factor magnitude matches a direct double sum") {
  Rng rng(11);
  const ArrayConfig c = test::small_array(6, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightMatrix w{test::random_mask(6, 8, rng), {rng.uniform(0.0, 8.0), rng.uniform(0.0, 360.0)}};
    const double theta = rng.uniform(0.0, 80.0);
    const double phi = rng.uniform(0.0, 360.0);
    // Centring the grid only changes the phase of the sum.
    CHECK(std::abs(array_factor(c, w, theta, phi)) ==
          doctest::Approx(std::abs(direct_array_factor(c, w, theta, phi))).epsilon(1e-9));
  }
}

TEST_CASE("array factor is bounded by the active count and reaches it at the steering direction") {
  Rng rng(2024);
  const ArrayConfig c;
  for (int trial = 0; trial < 200; ++trial) {
    const ActivationMask mask = test::random_mask(36, 36, rng, rng.uniform(0.05, 1.0));
    const geom::SteeringAngles steer{rng.uniform(0.0, 8.5), rng.uniform(0.0, 360.0)};
    const WeightMatrix w{mask, steer};
    const double n = mask.active_count();
    CHECK(std::abs(array_factor(c, w, steer.theta_deg, steer.phi_deg)) ==
          doctest::Approx(n).epsilon(1e-9));
    for (int probe = 0; probe < 5; ++probe) {
      const double af = std::abs(array_factor(c, w, rng.uniform(0.0, 90.0), rng.uniform(0.0, 360.0)));
      CHECK(af <= n * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("array factor at the steering direction does not depend on the steering") {
  Rng rng(5);
  const ArrayConfig c = test::small_array(10, 10);
  const ActivationMask mask = test::random_mask(10, 10, rng);
  for (const auto& s : {geom::SteeringAngles{0.0, 0.0}, geom::SteeringAngles{4.0, 45.0},
                        geom::SteeringAngles{8.5, 300.0}}) {
    const WeightMatrix w{mask, s};
    CHECK(std::abs(array_factor(c, w, s.theta_deg, s.phi_deg)) ==
          doctest::Approx(mask.active_count()).epsilon(1e-12));
  }
}

TEST_CASE("array factor rejects a mismatched mask") {
  const ArrayConfig c = test::small_array(4, 4);
  const WeightMatrix w{ActivationMask(4, 5, true), {0.0, 0.0}};
  CHECK_THROWS_AS(array_factor(c, w, 0.0, 0.0), ContractError);
}

TEST_CASE("subarray pattern") {
  const ArrayConfig c;
  CHECK(subarray_pattern(c, 0.0, 0.0) == doctest::Approx(16.0));
  ArrayConfig iso = test::point_array(1, 1, 0.5);
  for (double theta : {0.0, 30.0, 60.0, 89.9}) {
    CHECK(subarray_pattern(iso, theta, 17.0) == doctest::Approx(1.0));
  }
  // Direct double sum at the edge of the field of view quantifies scan loss.
  for (double phi : {0.0, 30.0, 90.0, 200.0}) {
    CHECK(subarray_pattern(c, 8.55, phi) ==
          doctest::Approx(direct_subarray_pattern(c, 8.55, phi)).epsilon(1e-12));
  }
  CHECK(subarray_pattern(c, 8.55, 0.0) < 16.0);
  CHECK(subarray_pattern(c, 100.0, 0.0) == 0.0);
}

TEST_CASE("total field is the subarray pattern times the array factor") {
  Rng rng(77);
  const ArrayConfig c;
  for (int trial = 0; trial < 30; ++trial) {
    const WeightMatrix w{test::random_mask(36, 36, rng), {rng.uniform(0.0, 8.0), rng.uniform(0.0, 360.0)}};
    const double theta = rng.uniform(0.0, 90.0);
    const double phi = rng.uniform(0.0, 360.0);
    const double expected = subarray_pattern(c, theta, phi) * std::abs(array_factor(c, w, theta, phi));
    CHECK(std::abs(total_field(c, w, theta, phi) - expected) <= 1e-12 * std::max(1.0, expected));
    CHECK(total_field(c, w, theta, phi) >= 0.0);
  }
}

TEST_CASE("broadside all-active field") {
  const ArrayConfig c;
  const WeightMatrix w{ActivationMask(36, 36, true), {0.0, 0.0}};
  CHECK(total_field(c, w, 0.0, 0.0) == doctest::Approx(16.0 * 1296.0));
}

TEST_CASE("a single active subarray radiates the subarray pattern") {
  const ArrayConfig c;
  ActivationMask m(36, 36);
  m.set(3, 30, true);
  const WeightMatrix w{m, {5.0, 120.0}};
  for (double theta : {0.0, 2.0, 5.0, 8.0, 40.0}) {
    for (double phi : {0.0, 77.0, 250.0}) {
      CHECK(total_field(c, w, theta, phi) ==
            doctest::Approx(subarray_pattern(c, theta, phi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadrant-symmetric masks radiate symmetrically at broadside") {
  Rng rng(99);
  const ArrayConfig c;
  for (int trial = 0; trial < 10; ++trial) {
    const WeightMatrix w{test::random_symmetric_mask(36, 36, rng), {0.0, 0.0}};
    for (int probe = 0; probe < 10; ++probe) {
      const double theta = rng.uniform(0.0, 89.0);
      const double phi = rng.uniform(0.0, 180.0);
      const double a = total_field(c, w, theta, phi);
      const double b = total_field(c, w, theta, phi + 180.0);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(a, 1e-300) + 1e-12);
    }
  }
}

TEST_CASE("uniform line magnitude") {
  CHECK(uniform_line_magnitude(4, 0.875, 0.0) == doctest::Approx(4.0));
  // Exact null of a 4-element line at 1/(4 d).
  CHECK(uniform_line_magnitude(4, 0.5, 0.5) < 1e-12);
  // Near a grating lobe the closed form falls back to the direct sum.
  CHECK(uniform_line_magnitude(4, 1.0, 1.0 + 1e-12) == doctest::Approx(4.0));
}
