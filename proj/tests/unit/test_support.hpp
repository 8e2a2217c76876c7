// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "beamsynth/array_config.hpp"
#include "beamsynth/random.hpp"

namespace beamsynth::test {

// p x q array of single isotropic-pattern elements at `pitch` wavelengths.
inline ArrayConfig point_array(int p, int q, double pitch) {
  ArrayConfig c;
  c.subarray_count_x = p;
  c.subarray_count_y = q;
  c.elements_per_subarray_x = 1;
  c.elements_per_subarray_y = 1;
  c.element_pitch_wavelengths = pitch;
  c.subarray_pitch_wavelengths = pitch;
  c.element_pattern_exponent = 0.0;
  c.per_chain_power_w = 1.0;
  return c;
}

// Default subarray geometry with a smaller p x q grid.
inline ArrayConfig small_array(int p, int q) {
  ArrayConfig c;
  c.subarray_count_x = p;
  c.subarray_count_y = q;
  return c;
}

inline ActivationMask random_mask(int p, int q, Rng& rng, double density = 0.5) {
  ActivationMask m(p, q);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) m.set(i, j, rng.bernoulli(density));
  }
  if (m.active_count() == 0) m.set(0, 0, true);
  return m;
}

inline ActivationMask random_symmetric_mask(int p, int q, Rng& rng, double density = 0.5) {
  ActivationMask m(p, q);
  for (int i = 0; i < (p + 1) / 2; ++i) {
    for (int j = 0; j < (q + 1) / 2; ++j) {
      const bool on = rng.bernoulli(density);
      m.set(i, j, on);
      m.set(p - 1 - i, j, on);
      m.set(i, q - 1 - j, on);
      m.set(p - 1 - i, q - 1 - j, on);
    }
  }
  if (m.active_count() == 0) {
    m.set(0, 0, true);
    m.set(p - 1, 0, true);
    m.set(0, q - 1, true);
    m.set(p - 1, q - 1, true);
  }
  return m;
}

}  // namespace beamsynth::test
