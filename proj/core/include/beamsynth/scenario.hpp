// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scenario files: one JSON document describing the orbit, the array (given
// explicitly or sized from a coverage requirement), GA settings and the list
// of beams to synthesize. See schemas/scenario.schema.json.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamsynth/array_config.hpp"
#include "beamsynth/cost.hpp"
#include "beamsynth/ga.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/radiation.hpp"
#include "beamsynth/sizing.hpp"

namespace beamsynth::scenario {

inline constexpr int kScenarioFormatVersion = 1;

struct BeamEntry {
  std::string id;
  ga::BeamSpec spec;
};

// Sampling used during the search and for the reported results.
struct EvaluationSettings {
  double cut_step_deg = 0.01;
  double uv_step_deg = 0.1;  // exported u-v grid
  pattern::QuadratureSpec quadrature;
};

struct ScenarioFile {
  std::string name;
  geom::OrbitGeometry orbit;
  std::optional<SizingInputs> sizing;  // set when the array was derived
  ArrayConfig array;
  ga::GaConfig ga;
  EvaluationSettings evaluation;
  std::vector<BeamEntry> beams;

  // Throws ValidationError / VisibilityError naming the offending field.
  void validate() const;
};

// Parses and validates a scenario document. Missing sections take their
// defaults; a missing "array" is sized from "sizing" (or its defaults).
// Throws ParseError (with line and column) for malformed JSON, and
// ValidationError / VisibilityError naming the offending field otherwise.
ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::filesystem::path& path);

// Fully resolved document: every default spelled out and the array given
// explicitly (the sizing inputs it came from are dropped).
std::string to_json(const ScenarioFile& scenario);

// Seed of the beam at `index` in the file, derived from the base seed so a
// beam's result does not depend on which other beams are run.
std::uint64_t beam_seed(std::uint64_t base_seed, std::size_t index);

}  // namespace beamsynth::scenario
