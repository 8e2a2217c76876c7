// SPDX-License-Identifier: Apache-2.0
#pragma once

// CSV exchange formats. UTF-8, '.' decimal separator, '\n' line ends.
//   cut:  header "angle_deg,value_db", one row per sample
//   grid: header "theta_deg,phi_deg,value_db"
//   mask: p rows of q comma-separated 0/1 values, no header

#include <filesystem>
#include <string>
#include <string_view>

#include "beamsynth/array_config.hpp"
#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/cuts.hpp"

namespace beamsynth::pattern {

std::string cut_to_csv(const PatternCut& cut);
PatternCut cut_from_csv(std::string_view text, CutPlane plane);

std::string grid_to_csv(const PatternGrid& grid);

std::string mask_to_csv(const ActivationMask& mask);
// Throws ParseError naming the offending line.
ActivationMask mask_from_csv(std::string_view text);

}  // namespace beamsynth::pattern

namespace beamsynth::io {

// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace beamsynth::io
