// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/errors.hpp"
#include "beamsynth/radiation.hpp"

namespace beamsynth::pattern {

void PatternCut::validate() const {
  if (angles_deg.size() != values_db.size()) throw ContractError("cut angle/value size mismatch");
  for (std::size_t i = 0; i < angles_deg.size(); ++i) {
    if (!std::isfinite(angles_deg[i]) || !std::isfinite(values_db[i])) {
      throw ContractError("cut contains a non-finite sample");
    }
    if (i > 0 && !(angles_deg[i] > angles_deg[i - 1])) {
      throw ContractError("cut angles must be strictly increasing");
    }
  }
}

double azimuth_cut_angle_deg(const geom::DirectionCosines& d) {
  return std::asin(std::clamp(d.u, -1.0, 1.0)) * geom::kRadToDeg;
}

double elevation_cut_angle_deg(const geom::DirectionCosines& d) {
  return std::asin(std::clamp(d.v, -1.0, 1.0)) * geom::kRadToDeg;
}

std::vector<double> cut_angles(double fov_deg, double step_deg, double steer_angle_deg) {
  if (!(step_deg > 0.0) || !(fov_deg > 0.0)) throw ContractError("cut fov and step must be > 0");
  const auto half = static_cast<long>(std::floor(fov_deg / step_deg + 1e-9));
  std::vector<double> angles;
  angles.reserve(2 * half + 2);
  for (long k = -half; k <= half; ++k) angles.push_back(static_cast<double>(k) * step_deg);

  const auto it = std::lower_bound(angles.begin(), angles.end(), steer_angle_deg);
  const double snap = 1e-6 * step_deg;
  if (it != angles.end() && std::abs(*it - steer_angle_deg) <= snap) {
    *it = steer_angle_deg;
  } else if (it != angles.begin() && std::abs(*(it - 1) - steer_angle_deg) <= snap) {
    *(it - 1) = steer_angle_deg;
  } else {
    angles.insert(it, steer_angle_deg);
  }
  return angles;
}

CutAnalysis analyze_cut(const PatternCut& cut, double steer_angle_deg) {
  cut.validate();
  const auto& x = cut.angles_deg;
  const auto& y = cut.values_db;
  const std::size_t n = x.size();
  if (n < 3) throw MetricError("cut needs at least three samples");

  // Sample nearest the steering angle.
  std::size_t start = static_cast<std::size_t>(
      std::lower_bound(x.begin(), x.end(), steer_angle_deg) - x.begin());
  if (start == n) start = n - 1;
  if (start > 0 && std::abs(x[start - 1] - steer_angle_deg) <= std::abs(x[start] - steer_angle_deg)) {
    --start;
  }

  std::size_t ip = start;
  for (;;) {
    const bool left_up = ip > 0 && y[ip - 1] > y[ip];
    const bool right_up = ip + 1 < n && y[ip + 1] > y[ip];
    if (left_up && (!right_up || y[ip - 1] >= y[ip + 1])) {
      --ip;
    } else if (right_up) {
      ++ip;
    } else {
      break;
    }
  }

  CutAnalysis out;
  out.peak_index = ip;
  out.peak_angle_deg = x[ip];
  out.peak_db = y[ip];
  const double level = y[ip] - 3.0;

  const auto interpolate = [&](std::size_t below, std::size_t above) {
    return x[below] + (level - y[below]) * (x[above] - x[below]) / (y[above] - y[below]);
  };

  bool found = false;
  for (std::size_t j = ip; j-- > 0;) {
    if (y[j] < level) {
      out.left_crossing_deg = interpolate(j, j + 1);
      found = true;
      break;
    }
  }
  if (!found) throw MetricError("no -3 dB crossing left of the peak inside the cut");
  found = false;
  for (std::size_t j = ip + 1; j < n; ++j) {
    if (y[j] < level) {
      out.right_crossing_deg = interpolate(j, j - 1);
      found = true;
      break;
    }
  }
  if (!found) throw MetricError("no -3 dB crossing right of the peak inside the cut");
  out.beamwidth_deg = out.right_crossing_deg - out.left_crossing_deg;

  std::size_t lo = ip;
  while (lo > 0 && y[lo - 1] < y[lo]) --lo;
  std::size_t hi = ip;
  while (hi + 1 < n && y[hi + 1] < y[hi]) ++hi;
  out.main_lobe_first = lo;
  out.main_lobe_last = hi;

  double highest = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i >= lo && i <= hi) continue;
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) highest = std::max(highest, y[i]);
  }
  out.sll_db = std::isfinite(highest) ? out.peak_db - highest : kNoSidelobe;
  return out;
}

std::pair<PatternCut, PatternCut> principal_cuts(const CouplingKernel& kernel,
                                                 const WeightMatrix& weights, double fov_deg,
                                                 double step_deg, CutQuantity quantity) {
  // Non-owning handle (aliasing constructor); the evaluator dies with this call.
  const std::shared_ptr<const CouplingKernel> handle(std::shared_ptr<void>{}, &kernel);
  const BeamEvaluator evaluator(handle, weights.steering, fov_deg, step_deg);
  require_matching(kernel.config(), weights.mask);
  return evaluator.cuts(weights.mask, quantity);
}

BeamMetrics extract_metrics(const PatternCut& az_cut, const PatternCut& el_cut,
                            const ArrayConfig& config, const WeightMatrix& weights) {
  require_matching(config, weights.mask);
  const auto steer = geom::to_direction_cosines(weights.steering);
  const CutAnalysis az = analyze_cut(az_cut, azimuth_cut_angle_deg(steer));
  const CutAnalysis el = analyze_cut(el_cut, elevation_cut_angle_deg(steer));

  BeamMetrics m;
  m.beamwidth_az_deg = az.beamwidth_deg;
  m.beamwidth_el_deg = el.beamwidth_deg;
  m.sll_az_db = az.sll_db;
  m.sll_el_db = el.sll_db;
  m.eirp_dbw = std::max(az.peak_db, el.peak_db);

  const double u = std::sin(az.peak_angle_deg * geom::kDegToRad);
  const double v = std::sin(el.peak_angle_deg * geom::kDegToRad);
  const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
  m.pointing = geom::to_steering_angles({u, v, w});

  m.active_chains = weights.mask.active_count();
  m.active_elements = m.active_chains * config.elements_per_subarray();
  return m;
}

}  // namespace beamsynth::pattern
