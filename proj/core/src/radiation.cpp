// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/radiation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "beamsynth/errors.hpp"
#include "beamsynth/field.hpp"
#include "beamsynth/parallel.hpp"

namespace beamsynth::pattern {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Highest spatial frequency of |E_T|^2 along one axis, in cycles per unit
// direction cosine: array autocorrelation span plus subarray pattern span.
double axis_bandwidth(int subarrays, double subarray_pitch, int elements, double element_pitch) {
  return (subarrays - 1) * subarray_pitch + (elements - 1) * element_pitch + 1.0;
}

// cos(k x) for k = 0..out.size()-1 by the Chebyshev recurrence.
void cos_multiples(double x, std::vector<double>& out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  const double c1 = std::cos(x);
  out[1] = c1;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * c1 * out[k - 1] - out[k - 2];
}

}  // namespace

int quadrature_intervals(const ArrayConfig& config, const QuadratureSpec& spec) {
  const double fx = axis_bandwidth(config.subarray_count_x, config.subarray_pitch_wavelengths,
                                   config.elements_per_subarray_x, config.element_pitch_wavelengths);
  const double fy = axis_bandwidth(config.subarray_count_y, config.subarray_pitch_wavelengths,
                                   config.elements_per_subarray_y, config.element_pitch_wavelengths);
  const double cycles = std::numbers::pi * std::max(fx, fy);
  int n = static_cast<int>(std::ceil(cycles * spec.samples_per_cycle));
  n = std::max(n, spec.min_intervals);
  return n + (n % 2);
}

CouplingKernel::CouplingKernel(const ArrayConfig& config, const QuadratureSpec& spec)
    : config_(config), intervals_(quadrature_intervals(config, spec)) {
  config_.validate();
  const int p = config_.subarray_count_x;
  const int q = config_.subarray_count_y;
  const double d = config_.subarray_pitch_wavelengths;
  const int half = intervals_ / 2;
  const double h = std::numbers::pi / intervals_;

  // The integrand is even in u and in v, so only s, t >= 0 are visited and
  // the sine parts of the kernel vanish. Weight of the half-grid node k:
  // trapezoid weight, doubled for the mirrored node, halved at the horizon.
  const auto node_weight = [&](int k) {
    double wgt = (k == 0) ? h : 2.0 * h;
    if (k == half) wgt *= 0.5;
    return wgt;
  };

  // inner[i][n] = sum_t W_t g(s_i, t) cos(2 pi n d v).
  std::vector<double> inner(static_cast<std::size_t>(half + 1) * q, 0.0);
  parallel_for(static_cast<std::size_t>(half + 1), resolve_thread_count(spec.threads),
               [&](std::size_t i) {
                 const double s = static_cast<double>(i) * h;
                 const double cs = std::cos(s);
                 const double u = std::sin(s);
                 const double lx = uniform_line_magnitude(config_.elements_per_subarray_x,
                                                          config_.element_pitch_wavelengths, u);
                 std::vector<double> harmonics(q);
                 double* row = inner.data() + i * q;
                 for (int k = 0; k <= half; ++k) {
                   const double t = k * h;
                   const double v = cs * std::sin(t);
                   const double w = cs * std::cos(t);
                   // subarray_pattern_uv with the u factor hoisted out of the loop.
                   const double e = std::pow(w, config_.element_pattern_exponent) * lx *
                                    uniform_line_magnitude(config_.elements_per_subarray_y,
                                                           config_.element_pitch_wavelengths, v);
                   const double g = node_weight(k) * e * e;
                   if (g == 0.0) continue;
                   cos_multiples(kTwoPi * d * v, harmonics);
                   for (int n = 0; n < q; ++n) row[n] += g * harmonics[n];
                 }
               });

  values_.assign(static_cast<std::size_t>(p) * q, 0.0);
  std::vector<double> harmonics(p);
  for (int i = 0; i <= half; ++i) {
    const double s = i * h;
    const double wgt = node_weight(i) * std::cos(s);
    if (wgt == 0.0) continue;
    cos_multiples(kTwoPi * d * std::sin(s), harmonics);
    const double* row = inner.data() + static_cast<std::size_t>(i) * q;
    for (int m = 0; m < p; ++m) {
      const double a = wgt * harmonics[m];
      double* out = values_.data() + static_cast<std::size_t>(m) * q;
      for (int n = 0; n < q; ++n) out[n] += a * row[n];
    }
  }
}

double CouplingKernel::at(int dm, int dn) const {
  dm = std::abs(dm);
  dn = std::abs(dn);
  if (dm >= config_.subarray_count_x || dn >= config_.subarray_count_y) {
    throw ContractError("kernel offset outside the array");
  }
  return values_[static_cast<std::size_t>(dm) * config_.subarray_count_y + dn];
}

double CouplingKernel::radiated_power(const ActivationMask& mask,
                                      const geom::DirectionCosines& steer) const {
  require_matching(config_, mask);
  return SteeredKernel(*this, steer).radiated_power(mask);
}

MaskAutocorrelation::MaskAutocorrelation(const ActivationMask& mask)
    : rows_(mask.rows()), cols_(mask.cols()),
      counts_(static_cast<std::size_t>(rows_) * std::max(2 * cols_ - 1, 0), 0) {
  const int p = rows_;
  const int q = cols_;
  const auto slot = [&](int dm, int dn) {
    return static_cast<std::size_t>(dm) * (2 * q - 1) + (dn + q - 1);
  };
  if (q <= 64) {
    std::vector<std::uint64_t> bits(p, 0);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < q; ++j) {
        if (mask(i, j)) bits[i] |= std::uint64_t{1} << j;
      }
    }
    for (int dm = 0; dm < p; ++dm) {
      for (int dn = -(q - 1); dn < q; ++dn) {
        std::int64_t total = 0;
        for (int m = 0; m + dm < p; ++m) {
          const std::uint64_t other = dn >= 0 ? bits[m + dm] >> dn : bits[m + dm] << -dn;
          total += std::popcount(bits[m] & other);
        }
        counts_[slot(dm, dn)] = total;
      }
    }
    return;
  }
  for (int dm = 0; dm < p; ++dm) {
    for (int dn = -(q - 1); dn < q; ++dn) {
      std::int64_t total = 0;
      for (int m = 0; m + dm < p; ++m) {
        for (int n = std::max(0, -dn); n < q && n + dn < q; ++n) {
          total += (mask(m, n) && mask(m + dm, n + dn)) ? 1 : 0;
        }
      }
      counts_[slot(dm, dn)] = total;
    }
  }
}

std::int64_t MaskAutocorrelation::at(int dm, int dn) const {
  if (dm < 0) {
    dm = -dm;
    dn = -dn;
  }
  if (dm >= rows_ || std::abs(dn) >= cols_) return 0;
  return counts_[static_cast<std::size_t>(dm) * (2 * cols_ - 1) + (dn + cols_ - 1)];
}

SteeredKernel::SteeredKernel(const CouplingKernel& kernel, const geom::DirectionCosines& steer)
    : rows_(kernel.config().subarray_count_x), cols_(kernel.config().subarray_count_y) {
  const double d = kernel.config().subarray_pitch_wavelengths;
  const int q = cols_;
  coeff_.assign(static_cast<std::size_t>(rows_) * (2 * q - 1), 0.0);
  for (int dm = 0; dm < rows_; ++dm) {
    for (int dn = -(q - 1); dn < q; ++dn) {
      // R and the steered kernel are both even under (dm, dn) -> (-dm, -dn);
      // fold the mirrored half into the stored one.
      double fold = 2.0;
      if (dm == 0) fold = dn > 0 ? 2.0 : (dn == 0 ? 1.0 : 0.0);
      if (fold == 0.0) continue;
      const double phase = kTwoPi * d * (dm * steer.u + dn * steer.v);
      coeff_[static_cast<std::size_t>(dm) * (2 * q - 1) + (dn + q - 1)] =
          fold * kernel.at(dm, dn) * std::cos(phase);
    }
  }
}

double SteeredKernel::radiated_power(const MaskAutocorrelation& r) const {
  if (r.rows() != rows_ || r.cols() != cols_) throw ContractError("autocorrelation size mismatch");
  double total = 0.0;
  const int q = cols_;
  for (int dm = 0; dm < rows_; ++dm) {
    for (int dn = -(q - 1); dn < q; ++dn) {
      const double c = coeff_[static_cast<std::size_t>(dm) * (2 * q - 1) + (dn + q - 1)];
      if (c != 0.0) total += c * static_cast<double>(r.at(dm, dn));
    }
  }
  return total;
}

double SteeredKernel::radiated_power(const ActivationMask& mask) const {
  return radiated_power(MaskAutocorrelation(mask));
}

double directivity_dbi(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                       double phi_deg) {
  const auto& config = kernel.config();
  require_matching(config, weights.mask);
  const double power =
      kernel.radiated_power(weights.mask, geom::to_direction_cosines(weights.steering));
  if (!(power > 0.0)) throw ContractError("directivity undefined: no radiated power");
  const double field = total_field(config, weights, theta_deg, phi_deg);
  return 10.0 * std::log10(4.0 * std::numbers::pi * field * field / power);
}

double directivity_dbi(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                       double phi_deg, const QuadratureSpec& spec) {
  return directivity_dbi(CouplingKernel(config, spec), weights, theta_deg, phi_deg);
}

double gain_dbi(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                double phi_deg) {
  return directivity_dbi(kernel, weights, theta_deg, phi_deg) +
         10.0 * std::log10(kernel.config().aperture_efficiency);
}

double gain_dbi(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                double phi_deg, const QuadratureSpec& spec) {
  return gain_dbi(CouplingKernel(config, spec), weights, theta_deg, phi_deg);
}

double eirp_dbw(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                double phi_deg) {
  const int chains = weights.mask.active_count();
  if (chains == 0) throw ContractError("EIRP undefined: no active chain");
  return 10.0 * std::log10(chains * kernel.config().per_chain_power_w) +
         gain_dbi(kernel, weights, theta_deg, phi_deg);
}

double eirp_dbw(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                double phi_deg, const QuadratureSpec& spec) {
  return eirp_dbw(CouplingKernel(config, spec), weights, theta_deg, phi_deg);
}

}  // namespace beamsynth::pattern
