// SPDX-License-Identifier: Apache-2.0
#pragma once

// Array dimensioning from a coverage requirement: coverage area -> cap half
// angle -> required beamwidth -> element count -> subarray grid.

#include "beamsynth/array_config.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/radiation.hpp"

namespace beamsynth::scenario {

struct SizingInputs {
  double coverage_area_km2 = 53093.0;
  double aperture_efficiency = 1.0;
  double element_pitch_wavelengths = 0.875;
  int subarray_dim = 4;  // elements per subarray side
  double frequency_hz = 19e9;
  // The design beamwidth is truncated to this resolution (degrees) before
  // the element count is computed; <= 0 keeps the exact value.
  double beamwidth_resolution_deg = 0.01;

  void validate() const;  // throws ConfigError
};

struct SizingReport {
  double coverage_half_angle_deg = 0.0;
  double exact_beamwidth_deg = 0.0;   // root of the law-of-sines relation
  double design_beamwidth_deg = 0.0;  // after truncation to the resolution
  double raw_elements = 0.0;          // before rounding up
  int elements_per_dimension = 0;
  int subarrays_per_dimension = 0;
  double field_of_view_deg = 0.0;
  double max_subarray_pitch_wavelengths = 0.0;
  double subarray_pitch_wavelengths = 0.0;
  // Whether the tiled subarray pitch stays within the grating-lobe bound.
  bool grating_lobe_free = false;
  ArrayConfig array;
};

SizingReport size_array(const SizingInputs& inputs, const geom::OrbitGeometry& orbit);

// Reference beam that fixes the per-chain transmit power: a centred block of
// block_x x block_y active chains steered to `target` must radiate
// eirp_dbw at the peak of its principal cuts.
struct CalibrationReference {
  int block_x = 22;
  int block_y = 22;
  geom::GroundTarget target{39.3, -5.3};
  double eirp_dbw = 62.204;
  double satellite_longitude_deg = 13.0;
  double cut_step_deg = 0.01;
  pattern::QuadratureSpec quadrature = pattern::QuadratureSpec{}.refined();
};

// Centred block mask of the reference size. Throws ContractError when the
// block does not fit or is not centred on the array.
ActivationMask centred_block(const ArrayConfig& config, int block_x, int block_y);

// Per-chain power (W) for which `config` meets the reference. EIRP is
// linear in the per-chain power, so one evaluation at 1 W suffices.
double calibrate_per_chain_power_w(ArrayConfig config, const CalibrationReference& reference = {});

}  // namespace beamsynth::scenario
