// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/beam_evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beamsynth/errors.hpp"
#include "beamsynth/field.hpp"

namespace beamsynth::pattern {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BeamEvaluator::BeamEvaluator(std::shared_ptr<const CouplingKernel> kernel,
                             const geom::SteeringAngles& steering, double fov_deg,
                             double step_deg)
    : kernel_(std::move(kernel)),
      steering_(steering),
      steer_(geom::to_direction_cosines(steering)),
      fov_deg_(fov_deg),
      step_deg_(step_deg),
      steered_(*kernel_, steer_) {
  if (!(fov_deg > 0.0 && fov_deg < 90.0)) throw ContractError("cut fov must be in (0, 90) deg");
  if (!(step_deg > 0.0)) throw ContractError("cut step must be > 0");
  az_ = build_cut(CutPlane::azimuth);
  el_ = build_cut(CutPlane::elevation);
}

BeamEvaluator::CutTable BeamEvaluator::build_cut(CutPlane plane) const {
  const auto& cfg = config();
  const bool azimuth = plane == CutPlane::azimuth;
  const int count = azimuth ? cfg.subarray_count_x : cfg.subarray_count_y;
  const double centre = 0.5 * (count - 1);
  const double d = cfg.subarray_pitch_wavelengths;
  const double steer_angle =
      azimuth ? azimuth_cut_angle_deg(steer_) : elevation_cut_angle_deg(steer_);

  CutTable table;
  table.angles_deg = cut_angles(fov_deg_, step_deg_, steer_angle);
  table.width = static_cast<std::size_t>(count);
  const std::size_t n = table.angles_deg.size();
  table.element_field.resize(n);
  table.phasors.resize(n * table.width);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(table.angles_deg[k] * geom::kDegToRad);
    const double u = azimuth ? s : steer_.u;
    const double v = azimuth ? steer_.v : s;
    const double w2 = 1.0 - u * u - v * v;
    table.element_field[k] = w2 < 0.0 ? 0.0 : subarray_pattern_uv(cfg, u, v, std::sqrt(w2));
    // Along this cut the other coordinate equals the steering one, so its
    // progressive phase cancels and only this axis contributes.
    const double psi = kTwoPi * d * (s - (azimuth ? steer_.u : steer_.v));
    for (int m = 0; m < count; ++m) {
      table.phasors[k * table.width + m] = std::polar(1.0, (m - centre) * psi);
    }
  }
  return table;
}

double BeamEvaluator::eirp_offset_db(const ActivationMask& mask) const {
  require_matching(config(), mask);
  const int chains = mask.active_count();
  if (chains == 0) throw ContractError("EIRP undefined: no active chain");
  const double power = steered_.radiated_power(mask);
  if (!(power > 0.0)) throw ContractError("no radiated power");
  const auto& cfg = config();
  return 10.0 * std::log10(chains * cfg.per_chain_power_w * cfg.aperture_efficiency * 4.0 *
                           std::numbers::pi / power);
}

PatternCut BeamEvaluator::sample(const CutTable& table, CutPlane plane,
                                 const std::vector<int>& sums, double offset_db,
                                 double floor) const {
  PatternCut cut;
  cut.plane = plane;
  cut.angles_deg = table.angles_deg;
  cut.values_db.resize(table.angles_deg.size());
  for (std::size_t k = 0; k < table.angles_deg.size(); ++k) {
    const std::complex<double>* row = table.phasors.data() + k * table.width;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t m = 0; m < table.width; ++m) {
      if (sums[m] == 0) continue;
      re += sums[m] * row[m].real();
      im += sums[m] * row[m].imag();
    }
    const double field = table.element_field[k] * std::hypot(re, im);
    cut.values_db[k] = offset_db + 20.0 * std::log10(std::max(field, floor));
  }
  return cut;
}

std::pair<PatternCut, PatternCut> BeamEvaluator::cuts(const ActivationMask& mask,
                                                      CutQuantity quantity) const {
  const double offset = eirp_offset_db(mask);
  const double floor = 1e-12 * mask.active_count() * config().elements_per_subarray();
  PatternCut az = sample(az_, CutPlane::azimuth, mask.row_sums(), offset, floor);
  PatternCut el = sample(el_, CutPlane::elevation, mask.col_sums(), offset, floor);
  if (quantity == CutQuantity::normalized_db) {
    for (PatternCut* cut : {&az, &el}) {
      const double top = *std::max_element(cut->values_db.begin(), cut->values_db.end());
      for (double& value : cut->values_db) value -= top;
    }
  }
  return {std::move(az), std::move(el)};
}

BeamMetrics BeamEvaluator::metrics(const ActivationMask& mask) const {
  const auto [az, el] = cuts(mask, CutQuantity::eirp_dbw);
  return extract_metrics(az, el, config(), WeightMatrix{mask, steering_});
}

PatternGrid BeamEvaluator::uv_grid(const ActivationMask& mask, double step_deg) const {
  if (!(step_deg > 0.0)) throw ContractError("grid step must be > 0");
  require_matching(config(), mask);
  const auto& cfg = config();
  const int p = cfg.subarray_count_x;
  const int q = cfg.subarray_count_y;
  const double d = cfg.subarray_pitch_wavelengths;
  const double offset = eirp_offset_db(mask);
  const double floor = 1e-12 * mask.active_count() * cfg.elements_per_subarray();
  const double rim = std::sin(fov_deg_ * geom::kDegToRad);

  const auto half = static_cast<long>(std::floor(fov_deg_ / step_deg + 1e-9));
  std::vector<double> sines;
  for (long k = -half; k <= half; ++k) sines.push_back(std::sin(k * step_deg * geom::kDegToRad));

  std::vector<std::complex<double>> phase_x(sines.size() * p);
  for (std::size_t a = 0; a < sines.size(); ++a) {
    const double psi = kTwoPi * d * (sines[a] - steer_.u);
    for (int m = 0; m < p; ++m) phase_x[a * p + m] = std::polar(1.0, (m - 0.5 * (p - 1)) * psi);
  }

  PatternGrid grid;
  std::vector<std::complex<double>> rows(p);
  for (const double v : sines) {
    const double psi_y = kTwoPi * d * (v - steer_.v);
    for (int m = 0; m < p; ++m) {
      std::complex<double> acc{0.0, 0.0};
      for (int n = 0; n < q; ++n) {
        if (mask(m, n)) acc += std::polar(1.0, (n - 0.5 * (q - 1)) * psi_y);
      }
      rows[m] = acc;
    }
    for (std::size_t a = 0; a < sines.size(); ++a) {
      const double u = sines[a];
      if (u * u + v * v > rim * rim) continue;
      std::complex<double> af{0.0, 0.0};
      for (int m = 0; m < p; ++m) af += phase_x[a * p + m] * rows[m];
      const double w = std::sqrt(1.0 - u * u - v * v);
      const double field = subarray_pattern_uv(cfg, u, v, w) * std::abs(af);
      const auto angles = geom::to_steering_angles({u, v, w});
      grid.theta_deg.push_back(angles.theta_deg);
      grid.phi_deg.push_back(angles.phi_deg);
      grid.values_db.push_back(offset + 20.0 * std::log10(std::max(field, floor)));
    }
  }
  return grid;
}

}  // namespace beamsynth::pattern
