// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "beamsynth/errors.hpp"
#include "beamsynth/sizing.hpp"

using namespace beamsynth;
using namespace beamsynth::scenario;

TEST_CASE("default sizing chain gives a 36 x 36 subarray grid") {
  const SizingReport r = size_array(SizingInputs{}, geom::OrbitGeometry{});
  CHECK(r.design_beamwidth_deg == doctest::Approx(0.41));
  CHECK(r.elements_per_dimension == 144);
  CHECK(r.subarrays_per_dimension == 36);
  CHECK(r.array.subarray_count_x == 36);
  CHECK(r.array.subarray_count_y == 36);
  CHECK(r.array.subarray_pitch_wavelengths == doctest::Approx(3.5));
  CHECK_NOTHROW(r.array.validate());
  // 3.5 wavelengths exceeds the 3.37 wavelength grating-lobe bound.
  CHECK_FALSE(r.grating_lobe_free);
}

TEST_CASE("sizing without beamwidth truncation") {
  SizingInputs in;
  in.beamwidth_resolution_deg = 0.0;
  const SizingReport r = size_array(in, geom::OrbitGeometry{});
  CHECK(r.design_beamwidth_deg == r.exact_beamwidth_deg);
  CHECK(r.raw_elements == doctest::Approx(139.4).epsilon(0.001));
  CHECK(r.elements_per_dimension == 140);
}

TEST_CASE("sizing input validation") {
  SizingInputs in;
  in.subarray_dim = 0;
  CHECK_THROWS_AS(size_array(in, geom::OrbitGeometry{}), ConfigError);
  in = SizingInputs{};
  in.aperture_efficiency = 1.5;
  CHECK_THROWS_AS(size_array(in, geom::OrbitGeometry{}), ConfigError);
  in = SizingInputs{};
  in.beamwidth_resolution_deg = 1.0;  // coarser than the 0.42 degree beam
  CHECK_THROWS_AS(size_array(in, geom::OrbitGeometry{}), ConfigError);
}

TEST_CASE("centred block") {
  const ArrayConfig config;
  const ActivationMask m = centred_block(config, 22, 22);
  CHECK(m.active_count() == 484);
  CHECK(m.is_quadrant_symmetric());
  CHECK(m(7, 7));
  CHECK_FALSE(m(6, 7));
  CHECK(m(28, 28));
  CHECK_FALSE(m(29, 28));
  CHECK_THROWS_AS(centred_block(config, 21, 22), ContractError);
  CHECK_THROWS_AS(centred_block(config, 38, 38), ContractError);
}
