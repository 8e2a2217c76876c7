// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "beamsynth/geom.hpp"

namespace beamsynth {

// Per-RF-chain transmit power that puts a centred 22x22-chain block, steered
// to (39.3 N, 5.3 W) from 13 E, at 62.204 dBW with the default array. Derived
// by `beamsynth calibrate`; tests/unit/test_calibration.cpp guards the value.
inline constexpr double kCalibratedPerChainPowerW = 0.0856561926;

// Geometry and RF parameters of a planar direct radiating array built from
// identical rectangular subarrays, one RF chain per subarray.
struct ArrayConfig {
  int subarray_count_x = 36;  // p
  int subarray_count_y = 36;  // q
  int elements_per_subarray_x = 4;
  int elements_per_subarray_y = 4;
  double element_pitch_wavelengths = 0.875;
  double subarray_pitch_wavelengths = 3.5;
  double frequency_hz = 19e9;
  double element_pattern_exponent = 1.2;  // element pattern cos^q(theta)
  double aperture_efficiency = 1.0;
  double per_chain_power_w = kCalibratedPerChainPowerW;
  // Permit a subarray pitch that differs from elements * element pitch.
  bool allow_non_tiling = false;

  void validate() const;

  int chain_count() const { return subarray_count_x * subarray_count_y; }
  int elements_per_subarray() const { return elements_per_subarray_x * elements_per_subarray_y; }
  double wavelength_m() const;

  friend bool operator==(const ArrayConfig&, const ArrayConfig&) = default;
};

// Binary on/off state of every subarray. Row index i runs along x
// (0..p-1), column index j along y (0..q-1).
class ActivationMask {
 public:
  ActivationMask() = default;
  ActivationMask(int rows, int cols, bool value = false);

  static ActivationMask for_config(const ArrayConfig& config, bool value = false) {
    return ActivationMask(config.subarray_count_x, config.subarray_count_y, value);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool operator()(int i, int j) const { return cells_[index(i, j)] != 0; }
  void set(int i, int j, bool on) { cells_[index(i, j)] = on ? 1 : 0; }

  int active_count() const;
  bool is_quadrant_symmetric() const;
  std::span<const std::uint8_t> cells() const { return cells_; }

  // Number of active cells per row / per column.
  std::vector<int> row_sums() const;
  std::vector<int> col_sums() const;

  friend bool operator==(const ActivationMask&, const ActivationMask&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Activation mask plus the beam direction applied through a progressive
// phase across subarrays.
struct WeightMatrix {
  ActivationMask mask;
  geom::SteeringAngles steering;
};

// Throws ContractError when the mask does not match the array dimensions.
void require_matching(const ArrayConfig& config, const ActivationMask& mask);

}  // namespace beamsynth
