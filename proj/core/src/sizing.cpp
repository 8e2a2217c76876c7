// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/sizing.hpp"

#include <cmath>
#include <memory>

#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/errors.hpp"

namespace beamsynth::scenario {

void SizingInputs::validate() const {
  if (!(coverage_area_km2 > 0.0)) throw ConfigError("sizing.coverage_area_km2 must be > 0");
  if (!(aperture_efficiency > 0.0 && aperture_efficiency <= 1.0)) {
    throw ConfigError("sizing.aperture_efficiency must be in (0, 1]");
  }
  if (!(element_pitch_wavelengths > 0.0)) {
    throw ConfigError("sizing.element_pitch_wavelengths must be > 0");
  }
  if (subarray_dim < 1) throw ConfigError("sizing.subarray_dim must be >= 1");
  if (!(frequency_hz > 0.0)) throw ConfigError("sizing.frequency_hz must be > 0");
  if (!std::isfinite(beamwidth_resolution_deg)) {
    throw ConfigError("sizing.beamwidth_resolution_deg must be finite");
  }
}

SizingReport size_array(const SizingInputs& inputs, const geom::OrbitGeometry& orbit) {
  inputs.validate();
  orbit.validate();

  SizingReport r;
  r.coverage_half_angle_deg = geom::coverage_half_angle_deg(inputs.coverage_area_km2, orbit);
  r.exact_beamwidth_deg = geom::required_beamwidth_deg(r.coverage_half_angle_deg, orbit);
  r.design_beamwidth_deg = r.exact_beamwidth_deg;
  if (inputs.beamwidth_resolution_deg > 0.0) {
    const double res = inputs.beamwidth_resolution_deg;
    // The epsilon stops a value sitting on a step from dropping a whole
    // step through rounding noise.
    r.design_beamwidth_deg = std::floor(r.exact_beamwidth_deg / res + 1e-9) * res;
    if (!(r.design_beamwidth_deg > 0.0)) {
      throw ConfigError("sizing.beamwidth_resolution_deg is coarser than the required beamwidth");
    }
  }
  r.raw_elements = geom::raw_elements_per_dimension(
      r.design_beamwidth_deg, inputs.aperture_efficiency, inputs.element_pitch_wavelengths);
  r.elements_per_dimension =
      geom::elements_per_dimension(r.design_beamwidth_deg, inputs.aperture_efficiency,
                                   inputs.element_pitch_wavelengths, inputs.subarray_dim);
  r.subarrays_per_dimension = r.elements_per_dimension / inputs.subarray_dim;
  r.field_of_view_deg = geom::field_of_view_deg(orbit);
  r.max_subarray_pitch_wavelengths = geom::max_subarray_pitch_wavelengths(r.field_of_view_deg);
  r.subarray_pitch_wavelengths = inputs.subarray_dim * inputs.element_pitch_wavelengths;
  r.grating_lobe_free = r.subarray_pitch_wavelengths <= r.max_subarray_pitch_wavelengths;

  ArrayConfig& a = r.array;
  a.subarray_count_x = r.subarrays_per_dimension;
  a.subarray_count_y = r.subarrays_per_dimension;
  a.elements_per_subarray_x = inputs.subarray_dim;
  a.elements_per_subarray_y = inputs.subarray_dim;
  a.element_pitch_wavelengths = inputs.element_pitch_wavelengths;
  a.subarray_pitch_wavelengths = r.subarray_pitch_wavelengths;
  a.frequency_hz = inputs.frequency_hz;
  a.aperture_efficiency = inputs.aperture_efficiency;
  return r;
}

ActivationMask centred_block(const ArrayConfig& config, int block_x, int block_y) {
  const int p = config.subarray_count_x;
  const int q = config.subarray_count_y;
  if (block_x < 1 || block_y < 1 || block_x > p || block_y > q || (p - block_x) % 2 != 0 ||
      (q - block_y) % 2 != 0) {
    throw ContractError("block must fit the array and leave equal margins on both sides");
  }
  ActivationMask mask(p, q);
  const int i0 = (p - block_x) / 2;
  const int j0 = (q - block_y) / 2;
  for (int i = i0; i < i0 + block_x; ++i) {
    for (int j = j0; j < j0 + block_y; ++j) mask.set(i, j, true);
  }
  return mask;
}

double calibrate_per_chain_power_w(ArrayConfig config, const CalibrationReference& reference) {
  config.per_chain_power_w = 1.0;
  config.validate();
  geom::OrbitGeometry orbit;
  orbit.satellite_longitude_deg = reference.satellite_longitude_deg;
  const auto kernel = std::make_shared<const pattern::CouplingKernel>(config, reference.quadrature);
  const auto steering = geom::target_to_steering(reference.target, orbit);
  const pattern::BeamEvaluator evaluator(kernel, steering, geom::field_of_view_deg(orbit),
                                         reference.cut_step_deg);
  const auto metrics = evaluator.metrics(centred_block(config, reference.block_x, reference.block_y));
  return std::pow(10.0, (reference.eirp_dbw - metrics.eirp_dbw) / 10.0);
}

}  // namespace beamsynth::scenario
