// SPDX-License-Identifier: Apache-2.0
#pragma once

// Principal pattern cuts and the beam metrics measured on them.
//
// Cuts are taken in sine space through the steering direction (u0, v0):
// the azimuth cut varies u = sin(a) at fixed v = v0, the elevation cut varies
// v = sin(e) at fixed u = u0. Samples run from -fov to +fov in steps of
// step_deg, plus the exact steering angle when it is not on that grid, so the
// cut covers the whole Earth-facing window.

#include <limits>
#include <utility>
#include <vector>

#include "beamsynth/array_config.hpp"
#include "beamsynth/geom.hpp"

namespace beamsynth::pattern {

class CouplingKernel;

enum class CutPlane { azimuth, elevation };

struct PatternCut {
  CutPlane plane = CutPlane::azimuth;
  std::vector<double> angles_deg;
  std::vector<double> values_db;

  // Throws ContractError unless angles strictly increase, sizes match and
  // every value is finite.
  void validate() const;
  std::size_t size() const { return angles_deg.size(); }
};

// What a cut's values_db hold.
enum class CutQuantity {
  eirp_dbw,       // absolute EIRP
  normalized_db,  // total field relative to the cut maximum
};

inline constexpr double kNoSidelobe = std::numeric_limits<double>::infinity();

struct BeamMetrics {
  double beamwidth_az_deg = 0.0;
  double beamwidth_el_deg = 0.0;
  // Peak minus highest sidelobe, dB; kNoSidelobe when the cut has none.
  double sll_az_db = 0.0;
  double sll_el_db = 0.0;
  double eirp_dbw = 0.0;
  geom::SteeringAngles pointing;
  int active_chains = 0;
  int active_elements = 0;

  double beamwidth_max_deg() const { return std::max(beamwidth_az_deg, beamwidth_el_deg); }
  double sll_min_db() const { return std::min(sll_az_db, sll_el_db); }
};

// Main-lobe measurements on one cut.
struct CutAnalysis {
  std::size_t peak_index = 0;
  double peak_angle_deg = 0.0;
  double peak_db = 0.0;
  double left_crossing_deg = 0.0;
  double right_crossing_deg = 0.0;
  double beamwidth_deg = 0.0;
  std::size_t main_lobe_first = 0;  // first local minimum left of the peak
  std::size_t main_lobe_last = 0;   // first local minimum right of the peak
  double sll_db = kNoSidelobe;
};

// Peak: the local maximum reached by climbing from the sample nearest
// `steer_angle_deg` (flat tops keep the sample nearest the steering angle).
// Beamwidth: distance between the -3 dB crossings nearest the peak, each
// interpolated linearly in dB. SLL: peak minus the highest interior local
// maximum outside the main lobe.
// Throws MetricError when a -3 dB crossing is missing on either side.
CutAnalysis analyze_cut(const PatternCut& cut, double steer_angle_deg);

// Cut coordinates of a direction: azimuth asin(u), elevation asin(v), degrees.
double azimuth_cut_angle_deg(const geom::DirectionCosines& d);
double elevation_cut_angle_deg(const geom::DirectionCosines& d);

// -fov..fov in step_deg increments plus `steer_angle_deg`, sorted.
std::vector<double> cut_angles(double fov_deg, double step_deg, double steer_angle_deg);

// Azimuth and elevation cuts through the steering direction.
std::pair<PatternCut, PatternCut> principal_cuts(const CouplingKernel& kernel,
                                                 const WeightMatrix& weights, double fov_deg,
                                                 double step_deg,
                                                 CutQuantity quantity = CutQuantity::eirp_dbw);

// Metrics from a pair of EIRP cuts. The reported EIRP is the higher of the two
// cut peaks and the pointing direction combines both peak angles.
BeamMetrics extract_metrics(const PatternCut& az_cut, const PatternCut& el_cut,
                            const ArrayConfig& config, const WeightMatrix& weights);

}  // namespace beamsynth::pattern
