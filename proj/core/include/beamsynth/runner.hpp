// SPDX-License-Identifier: Apache-2.0
#pragma once

// Batch synthesis of every beam in a scenario, with on-disk results:
//
//   <out>/results.csv               one row per beam (see results.hpp)
//   <out>/manifest.json             format version, seeds, resolutions, status
//   <out>/scenario_resolved.json    the scenario with every default spelled out
//   <out>/beams/<id>/mask.csv       p x q activation mask
//   <out>/beams/<id>/cut_az.csv     EIRP azimuth cut
//   <out>/beams/<id>/cut_el.csv     EIRP elevation cut
//   <out>/beams/<id>/uv.csv         EIRP over the field of view
//   <out>/beams/<id>/history.csv    best search cost per generation
//
// Every file is written atomically.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "beamsynth/ga.hpp"
#include "beamsynth/results.hpp"
#include "beamsynth/scenario.hpp"

namespace beamsynth::scenario {

inline constexpr int kManifestFormatVersion = 1;

struct RunOptions {
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;  // overrides ga.rng_seed
  std::vector<std::string> beam_ids;  // empty: all beams
  int threads = 0;                    // 0: BEAMSYNTH_THREADS or hardware
  // Report at a ten times finer cut step and a four times finer quadrature
  // (instead of the default two times finer quadrature).
  bool fine_report = false;
  bool record_wall_time = false;  // fills wall_s (makes results.csv non-reproducible)
  std::function<void(const std::string&)> log;
};

struct RunOutcome {
  ResultsTable table;
  // Every beam finished and met its minimum sidelobe level.
  bool all_ok = false;
};

// Resolution used for the search and for the reported metrics of a run.
struct RunResolution {
  ga::Resolution search;
  ga::Resolution report;
};

RunResolution run_resolution(const EvaluationSettings& evaluation, bool fine_report);

// Throws ValidationError for an unknown beam id; per-beam failures are
// recorded in the table instead of thrown.
RunOutcome run(const ScenarioFile& scenario, const RunOptions& options);

// Re-measures every persisted mask of a finished run with the recorded
// report resolution and compares against results.csv.
struct RoundTripCheck {
  std::string beam_id;
  pattern::BeamMetrics stored;
  pattern::BeamMetrics recomputed;
  double max_angle_error_deg = 0.0;  // beamwidths
  double max_db_error = 0.0;         // SLL and EIRP
  bool counts_match = false;
};

std::vector<RoundTripCheck> verify_run(const std::filesystem::path& run_dir, int threads = 0);

}  // namespace beamsynth::scenario
