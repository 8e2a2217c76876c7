// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/field.hpp"

#include <cmath>
#include <numbers>

namespace beamsynth::pattern {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double uniform_line_magnitude(int n, double pitch_wavelengths, double s) {
  if (n == 1) return 1.0;
  const double half = std::numbers::pi * pitch_wavelengths * s;
  const double den = std::sin(half);
  if (std::abs(den) < 1e-9) {
    // Near a lobe of the Dirichlet kernel the ratio loses precision.
    double re = 0.0;
    double im = 0.0;
    for (int k = 0; k < n; ++k) {
      re += std::cos(2.0 * k * half);
      im += std::sin(2.0 * k * half);
    }
    return std::hypot(re, im);
  }
  return std::abs(std::sin(n * half) / den);
}

double subarray_pattern_uv(const ArrayConfig& config, double u, double v, double w) {
  if (w < 0.0) return 0.0;
  const double element = std::pow(w, config.element_pattern_exponent);
  return element *
         uniform_line_magnitude(config.elements_per_subarray_x, config.element_pitch_wavelengths, u) *
         uniform_line_magnitude(config.elements_per_subarray_y, config.element_pitch_wavelengths, v);
}

double subarray_pattern(const ArrayConfig& config, double theta_deg, double phi_deg) {
  const auto d = geom::to_direction_cosines({theta_deg, phi_deg});
  return subarray_pattern_uv(config, d.u, d.v, d.w);
}

std::complex<double> array_factor_uv(const ArrayConfig& config, const ActivationMask& mask,
                                     const geom::DirectionCosines& steer, double u, double v) {
  require_matching(config, mask);
  const int p = config.subarray_count_x;
  const int q = config.subarray_count_y;
  const double d = config.subarray_pitch_wavelengths;
  const double cx = 0.5 * (p - 1);
  const double cy = 0.5 * (q - 1);
  // Per-axis phase increments k d sin(theta) cos(phi) + beta_x and likewise y.
  const double psi_x = kTwoPi * d * (u - steer.u);
  const double psi_y = kTwoPi * d * (v - steer.v);

  std::complex<double> sum{0.0, 0.0};
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) {
      if (!mask(i, j)) continue;
      sum += std::polar(1.0, (i - cx) * psi_x + (j - cy) * psi_y);
    }
  }
  return sum;
}

std::complex<double> array_factor(const ArrayConfig& config, const WeightMatrix& weights,
                                  double theta_deg, double phi_deg) {
  const auto d = geom::to_direction_cosines({theta_deg, phi_deg});
  return array_factor_uv(config, weights.mask, geom::to_direction_cosines(weights.steering), d.u,
                         d.v);
}

double total_field(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                   double phi_deg) {
  return subarray_pattern(config, theta_deg, phi_deg) *
         std::abs(array_factor(config, weights, theta_deg, phi_deg));
}

}  // namespace beamsynth::pattern
