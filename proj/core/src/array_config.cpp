// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/array_config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "beamsynth/errors.hpp"

namespace beamsynth {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

void ArrayConfig::validate() const {
  if (subarray_count_x < 1 || subarray_count_y < 1) {
    throw ConfigError("array subarray counts must be >= 1");
  }
  if (elements_per_subarray_x < 1 || elements_per_subarray_y < 1) {
    throw ConfigError("array elements per subarray must be >= 1");
  }
  if (!(element_pitch_wavelengths > 0.0) || !(subarray_pitch_wavelengths > 0.0)) {
    throw ConfigError("array pitches must be > 0");
  }
  if (!(frequency_hz > 0.0)) throw ConfigError("array frequency_hz must be > 0");
  if (!(element_pattern_exponent >= 0.0)) {
    throw ConfigError("array element_pattern_exponent must be >= 0");
  }
  if (!(aperture_efficiency > 0.0 && aperture_efficiency <= 1.0)) {
    throw ConfigError("array aperture_efficiency must be in (0, 1]");
  }
  if (!(per_chain_power_w > 0.0)) throw ConfigError("array per_chain_power_w must be > 0");
  if (!allow_non_tiling) {
    const auto tiles = [&](int n) {
      return std::abs(n * element_pitch_wavelengths - subarray_pitch_wavelengths) <=
             1e-9 * subarray_pitch_wavelengths;
    };
    if (!tiles(elements_per_subarray_x) || !tiles(elements_per_subarray_y)) {
      throw ConfigError(
          "array subarray_pitch_wavelengths must equal elements_per_subarray * "
          "element_pitch_wavelengths (set allow_non_tiling to override)");
    }
  }
}

double ArrayConfig::wavelength_m() const { return kSpeedOfLight / frequency_hz; }

ActivationMask::ActivationMask(int rows, int cols, bool value)
    : rows_(rows), cols_(cols),
      cells_(static_cast<std::size_t>(std::max(rows, 0)) * std::max(cols, 0), value ? 1 : 0) {
  if (rows < 0 || cols < 0) throw ContractError("mask dimensions must be non-negative");
}

int ActivationMask::active_count() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool ActivationMask::is_quadrant_symmetric() const {
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      const bool v = (*this)(i, j);
      if (v != (*this)(rows_ - 1 - i, j) || v != (*this)(i, cols_ - 1 - j)) return false;
    }
  }
  return true;
}

std::vector<int> ActivationMask::row_sums() const {
  std::vector<int> sums(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) sums[i] += cells_[index(i, j)];
  }
  return sums;
}

std::vector<int> ActivationMask::col_sums() const {
  std::vector<int> sums(cols_, 0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) sums[j] += cells_[index(i, j)];
  }
  return sums;
}

void require_matching(const ArrayConfig& config, const ActivationMask& mask) {
  if (mask.rows() != config.subarray_count_x || mask.cols() != config.subarray_count_y) {
    throw ContractError("mask is " + std::to_string(mask.rows()) + "x" +
                        std::to_string(mask.cols()) + " but the array has " +
                        std::to_string(config.subarray_count_x) + "x" +
                        std::to_string(config.subarray_count_y) + " subarrays");
  }
}

}  // namespace beamsynth
