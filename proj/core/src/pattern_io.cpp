// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <fmt/format.h>

#include "beamsynth/errors.hpp"

namespace beamsynth::pattern {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double to_double(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(fmt::format("line {}: '{}' is not a number", line_no, field));
  }
  return value;
}

}  // namespace

std::string cut_to_csv(const PatternCut& cut) {
  std::string out = "angle_deg,value_db\n";
  for (std::size_t i = 0; i < cut.size(); ++i) {
    out += fmt::format("{:.6f},{:.9f}\n", cut.angles_deg[i], cut.values_db[i]);
  }
  return out;
}

PatternCut cut_from_csv(std::string_view text, CutPlane plane) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "angle_deg,value_db") {
    throw ParseError("line 1: expected header 'angle_deg,value_db'");
  }
  PatternCut cut;
  cut.plane = plane;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != 2) throw ParseError(fmt::format("line {}: expected 2 fields", i + 1));
    cut.angles_deg.push_back(to_double(fields[0], i + 1));
    cut.values_db.push_back(to_double(fields[1], i + 1));
  }
  return cut;
}

std::string grid_to_csv(const PatternGrid& grid) {
  std::string out = "theta_deg,phi_deg,value_db\n";
  for (std::size_t i = 0; i < grid.values_db.size(); ++i) {
    out += fmt::format("{:.6f},{:.6f},{:.6f}\n", grid.theta_deg[i], grid.phi_deg[i],
                       grid.values_db[i]);
  }
  return out;
}

std::string mask_to_csv(const ActivationMask& mask) {
  std::string out;
  out.reserve(static_cast<std::size_t>(mask.rows()) * (2 * mask.cols() + 1));
  for (int i = 0; i < mask.rows(); ++i) {
    for (int j = 0; j < mask.cols(); ++j) {
      if (j > 0) out += ',';
      out += mask(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

ActivationMask mask_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("mask CSV is empty");
  const std::size_t cols = split(lines[0], ',').size();
  ActivationMask mask(static_cast<int>(lines.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != cols) {
      throw ParseError(fmt::format("line {}: expected {} values, found {}", i + 1, cols,
                                   fields.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (fields[j] != "0" && fields[j] != "1") {
        throw ParseError(fmt::format("line {}, column {}: expected 0 or 1", i + 1, j + 1));
      }
      mask.set(static_cast<int>(i), static_cast<int>(j), fields[j] == "1");
    }
  }
  return mask;
}

}  // namespace beamsynth::pattern

namespace beamsynth::io {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace beamsynth::io
