// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "beamsynth/cuts.hpp"
#include "beamsynth/geom.hpp"

namespace beamsynth::ga {

// One synthesis target.
struct BeamSpec {
  geom::GroundTarget target;
  double beamwidth_az_deg = 0.9;
  double beamwidth_el_deg = 0.9;
  double sll_min_db = 14.0;
  double eirp_dbw = 61.94;

  void validate() const;  // throws ConfigError
};

enum class SllPenalty {
  one_sided,  // only sidelobes above the allowed level cost anything
  symmetric,  // |SLL_c - SLL_o| / SLL_o in both directions
};

enum class EirpErrorScale {
  dbw,     // relative error of the dBW figures
  linear,  // relative error of the powers in watts
};

struct CostWeights {
  double k1 = 1.0;  // beamwidth
  double k2 = 1.0;  // sidelobe level
  double k3 = 1.0;  // EIRP
};

struct CostOptions {
  CostWeights weights;
  SllPenalty sll_penalty = SllPenalty::one_sided;
  EirpErrorScale eirp_scale = EirpErrorScale::dbw;
};

struct CostTerms {
  double beamwidth = 0.0;  // Z1
  double sidelobe = 0.0;   // Z2
  double eirp = 0.0;       // Z3
  double total() const { return beamwidth + sidelobe + eirp; }
};

// Cost assigned to masks that cannot be measured (all off, no -3 dB crossing).
inline constexpr double kPenaltyCost = 1e6;

// Z1 = k1 (|bw_az - bw_az_o| / bw_az_o + |bw_el - bw_el_o| / bw_el_o)
// Z2 = k2 (sum over cuts of |sll - sll_o| / sll_o), one-sided by default
// Z3 = k3 |eirp - eirp_o| / |eirp_o|
// Throws ContractError when a target used as a denominator is zero.
CostTerms cost_terms(const pattern::BeamMetrics& metrics, const BeamSpec& spec,
                     const CostOptions& options = {});

inline double cost(const pattern::BeamMetrics& metrics, const BeamSpec& spec,
                   const CostOptions& options = {}) {
  return cost_terms(metrics, spec, options).total();
}

}  // namespace beamsynth::ga
