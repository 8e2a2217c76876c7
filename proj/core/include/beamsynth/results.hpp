// SPDX-License-Identifier: Apache-2.0
#pragma once

// Results table of a batch run and its renderings.
//
// results.csv columns:
//   scenario,lat_deg,lon_deg,bw_az_deg,bw_el_deg,sll_db,eirp_dbw,
//   active_chains,active_elements,cost,generations,wall_s,status
// status is "ok", "sll_below_min" or "error"; metric fields of an "error"
// row are empty, and wall_s is empty unless wall times were recorded.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamsynth/cuts.hpp"

namespace beamsynth::scenario {

enum class BeamStatus { ok, sll_below_min, error };

std::string_view to_string(BeamStatus status);

struct ResultRow {
  std::string scenario;  // beam id
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double bw_az_deg = 0.0;
  double bw_el_deg = 0.0;
  double sll_db = 0.0;  // minimum over both cuts; +inf when no sidelobe
  double eirp_dbw = 0.0;
  int active_chains = 0;
  int active_elements = 0;
  double cost = 0.0;
  int generations = 0;
  std::optional<double> wall_s;
  BeamStatus status = BeamStatus::ok;

  double beamwidth_max_deg() const { return std::max(bw_az_deg, bw_el_deg); }
};

using ResultsTable = std::vector<ResultRow>;

std::string results_to_csv(const ResultsTable& table);
// Throws ParseError naming the offending line.
ResultsTable results_from_csv(std::string_view text);

enum class ReportFormat { csv, markdown };

// csv: identical to results_to_csv. markdown: one row per beam with columns
// Scenario | lat,lon | θ−3dB | SLL | EIRP | Active (θ−3dB is the wider cut,
// Active counts RF chains).
std::string report(const ResultsTable& table, ReportFormat format);

}  // namespace beamsynth::scenario
