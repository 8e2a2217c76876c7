// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/cost.hpp"

#include <cmath>

#include "beamsynth/errors.hpp"

namespace beamsynth::ga {

void BeamSpec::validate() const {
  if (!(target.latitude_deg >= -90.0 && target.latitude_deg <= 90.0)) {
    throw ConfigError("beam latitude_deg must be in [-90, 90]");
  }
  if (!(target.longitude_deg >= -180.0 && target.longitude_deg <= 180.0)) {
    throw ConfigError("beam longitude_deg must be in [-180, 180]");
  }
  if (!(beamwidth_az_deg > 0.0) || !(beamwidth_el_deg > 0.0)) {
    throw ConfigError("beam beamwidths must be > 0");
  }
  if (!(sll_min_db > 0.0)) throw ConfigError("beam sll_min_db must be > 0");
  if (!std::isfinite(eirp_dbw)) throw ConfigError("beam eirp_dbw must be finite");
}

CostTerms cost_terms(const pattern::BeamMetrics& metrics, const BeamSpec& spec,
                     const CostOptions& options) {
  if (spec.beamwidth_az_deg == 0.0 || spec.beamwidth_el_deg == 0.0 || spec.sll_min_db == 0.0 ||
      spec.eirp_dbw == 0.0) {
    throw ContractError("cost targets must be non-zero");
  }
  const auto relative = [](double achieved, double target) {
    return std::abs(achieved - target) / std::abs(target);
  };
  const auto sll_term = [&](double achieved) {
    if (options.sll_penalty == SllPenalty::one_sided && achieved >= spec.sll_min_db) return 0.0;
    return relative(achieved, spec.sll_min_db);
  };

  CostTerms terms;
  terms.beamwidth = options.weights.k1 * (relative(metrics.beamwidth_az_deg, spec.beamwidth_az_deg) +
                                          relative(metrics.beamwidth_el_deg, spec.beamwidth_el_deg));
  terms.sidelobe = options.weights.k2 * (sll_term(metrics.sll_az_db) + sll_term(metrics.sll_el_db));
  if (options.eirp_scale == EirpErrorScale::dbw) {
    terms.eirp = options.weights.k3 * relative(metrics.eirp_dbw, spec.eirp_dbw);
  } else {
    terms.eirp = options.weights.k3 * relative(std::pow(10.0, metrics.eirp_dbw / 10.0),
                                               std::pow(10.0, spec.eirp_dbw / 10.0));
  }
  return terms;
}

}  // namespace beamsynth::ga
