// SPDX-License-Identifier: Apache-2.0
#pragma once

// Radiated power, directivity, gain and EIRP.
//
// Power is integrated over the front hemisphere on a uniform trapezoidal grid
// in (s, t), where the direction is (sin s, cos s sin t, cos s cos t) and
// dOmega = cos s ds dt. The grid needs no special treatment at the horizon.
//
// |E_T|^2 expands into a sum over pairs of active subarrays, so the integral
// equals sum_{dm,dn} R(dm,dn) K(dm,dn) with R the mask autocorrelation and K a
// coupling kernel depending only on the array geometry. K is computed once
// per ArrayConfig; after that the power of any mask and steering costs
// O(p^2 q). The result is the grid quadrature of |E_T|^2 itself, not an
// approximation of it.

#include <cstdint>
#include <vector>

#include "beamsynth/array_config.hpp"
#include "beamsynth/geom.hpp"

namespace beamsynth::pattern {

struct QuadratureSpec {
  // Grid points per period of the fastest oscillation in |E_T|^2.
  double samples_per_cycle = 8.0;
  int min_intervals = 64;
  int threads = 0;  // 0: resolve_thread_count default

  // Same grid with half the step.
  QuadratureSpec refined() const { return {2.0 * samples_per_cycle, 2 * min_intervals, threads}; }
};

// Number of trapezoid intervals per axis (always even) that `spec` gives for
// `config`.
int quadrature_intervals(const ArrayConfig& config, const QuadratureSpec& spec);

class CouplingKernel {
 public:
  explicit CouplingKernel(const ArrayConfig& config, const QuadratureSpec& spec = {});

  const ArrayConfig& config() const { return config_; }
  int intervals() const { return intervals_; }

  // Unsteered kernel, real and even in both offsets.
  double at(int dm, int dn) const;

  // Integral of |E_T|^2 over the front hemisphere for `mask` steered to `steer`.
  double radiated_power(const ActivationMask& mask, const geom::DirectionCosines& steer) const;

 private:
  ArrayConfig config_;
  int intervals_ = 0;
  std::vector<double> values_;  // [|dm|][|dn|]
};

// Count of active pairs at every subarray offset, R(dm, dn) for dm in [0, p),
// dn in (-q, q). Offsets with dm < 0 follow from R(-dm, -dn) = R(dm, dn).
class MaskAutocorrelation {
 public:
  explicit MaskAutocorrelation(const ActivationMask& mask);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t at(int dm, int dn) const;

 private:
  int rows_;
  int cols_;
  std::vector<std::int64_t> counts_;
};

// Coupling kernel folded with one steering direction, so radiated power of a
// mask is a single dot product with its autocorrelation.
class SteeredKernel {
 public:
  SteeredKernel(const CouplingKernel& kernel, const geom::DirectionCosines& steer);

  double radiated_power(const ActivationMask& mask) const;
  double radiated_power(const MaskAutocorrelation& autocorrelation) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> coeff_;  // [dm in 0..p-1][dn + q - 1]
};

// Directivity in dBi at (theta, phi): 4 pi |E_T|^2 / radiated power.
// Throws ContractError when no power is radiated (empty mask).
double directivity_dbi(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                       double phi_deg);
double directivity_dbi(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                       double phi_deg, const QuadratureSpec& spec = {});

// Gain = aperture_efficiency * directivity, in dBi.
double gain_dbi(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                double phi_deg);
double gain_dbi(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                double phi_deg, const QuadratureSpec& spec = {});

// EIRP in dBW: 10 log10(active chains * per-chain power) + gain.
// Throws ContractError when no chain is active.
double eirp_dbw(const CouplingKernel& kernel, const WeightMatrix& weights, double theta_deg,
                double phi_deg);
double eirp_dbw(const ArrayConfig& config, const WeightMatrix& weights, double theta_deg,
                double phi_deg, const QuadratureSpec& spec = {});

}  // namespace beamsynth::pattern
