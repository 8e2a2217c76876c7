// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "beamsynth/array_config.hpp"
#include "beamsynth/cuts.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/radiation.hpp"

namespace beamsynth::pattern {

// Sampled (theta, phi) pattern over the field of view.
struct PatternGrid {
  std::vector<double> theta_deg;
  std::vector<double> phi_deg;
  std::vector<double> values_db;
};

// Everything about a beam evaluation that does not depend on the mask:
// cut sample directions, subarray pattern along the cuts, per-subarray
// phasors and the steered coupling kernel. Evaluating a mask afterwards costs
// two O(samples * p) sums and one autocorrelation.
//
// Immutable after construction; safe to share between threads.
class BeamEvaluator {
 public:
  BeamEvaluator(std::shared_ptr<const CouplingKernel> kernel, const geom::SteeringAngles& steering,
                double fov_deg, double step_deg);

  const ArrayConfig& config() const { return kernel_->config(); }
  const geom::SteeringAngles& steering() const { return steering_; }
  double fov_deg() const { return fov_deg_; }
  double step_deg() const { return step_deg_; }

  // 10 log10(chains * P * e_eff * 4 pi / radiated power): add 20 log10 |E_T|
  // to get EIRP. Throws ContractError for an empty mask.
  double eirp_offset_db(const ActivationMask& mask) const;

  std::pair<PatternCut, PatternCut> cuts(const ActivationMask& mask,
                                         CutQuantity quantity = CutQuantity::eirp_dbw) const;

  // Throws MetricError (no -3 dB crossing) or ContractError (empty mask).
  BeamMetrics metrics(const ActivationMask& mask) const;

  // EIRP over the disc of directions within fov, on a sine-space grid with
  // step_deg spacing in each cut coordinate.
  PatternGrid uv_grid(const ActivationMask& mask, double step_deg) const;

 private:
  struct CutTable {
    std::vector<double> angles_deg;
    std::vector<double> element_field;             // subarray pattern per sample
    std::vector<std::complex<double>> phasors;     // [sample][subarray index]
    std::size_t width = 0;
  };

  CutTable build_cut(CutPlane plane) const;
  PatternCut sample(const CutTable& table, CutPlane plane, const std::vector<int>& sums,
                    double offset_db, double floor) const;

  std::shared_ptr<const CouplingKernel> kernel_;
  geom::SteeringAngles steering_;
  geom::DirectionCosines steer_;
  double fov_deg_;
  double step_deg_;
  SteeredKernel steered_;
  CutTable az_;
  CutTable el_;
};

}  // namespace beamsynth::pattern
