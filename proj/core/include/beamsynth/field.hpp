// SPDX-License-Identifier: Apache-2.0
#pragma once

// Far-field evaluation for a subarrayed planar array.
//
// The array factor runs over the subarray grid, centred on the array's
// geometric centre, with a progressive phase that points the main lobe at the
// steering direction. Each subarray is a uniform, in-phase grid of elements
// with a cos^q(theta) element pattern, so the subarray pattern does not follow
// the beam; that is where scan loss comes from. Nothing radiates into the back
// hemisphere (theta > 90 deg).

#include <complex>

#include "beamsynth/array_config.hpp"
#include "beamsynth/geom.hpp"

namespace beamsynth::pattern {

std::complex<double> array_factor(const ArrayConfig& config, const WeightMatrix& weights,
                                  double theta_deg, double phi_deg);

// Same as array_factor, in direction cosines.
std::complex<double> array_factor_uv(const ArrayConfig& config, const ActivationMask& mask,
                                     const geom::DirectionCosines& steer, double u, double v);

// Magnitude of one subarray's pattern, cos^q(theta) times the |array factor|
// of its uniform element grid. Equals elements_per_subarray at broadside.
double subarray_pattern(const ArrayConfig& config, double theta_deg, double phi_deg);
double subarray_pattern_uv(const ArrayConfig& config, double u, double v, double w);

// |E_T| = subarray_pattern * |array_factor|.
double total_field(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                   double phi_deg);

// |sum_{k<n} exp(j 2 pi k pitch s)|, the uniform line-array magnitude.
double uniform_line_magnitude(int n, double pitch_wavelengths, double s);

}  // namespace beamsynth::pattern
