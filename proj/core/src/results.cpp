// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/results.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "beamsynth/errors.hpp"

namespace beamsynth::scenario {

namespace {

constexpr std::string_view kHeader =
    "scenario,lat_deg,lon_deg,bw_az_deg,bw_el_deg,sll_db,eirp_dbw,active_chains,"
    "active_elements,cost,generations,wall_s,status";
constexpr std::size_t kColumns = 13;

std::string real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.9f}", x);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw ParseError(fmt::format("results line {}: {}", line, what));
}

double parse_real(std::string_view field, std::size_t line, const char* name) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    bad(line, fmt::format("{} \"{}\" is not a number", name, field));
  }
  return x;
}

int parse_int(std::string_view field, std::size_t line, const char* name) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    bad(line, fmt::format("{} \"{}\" is not an integer", name, field));
  }
  return x;
}

BeamStatus parse_status(std::string_view field, std::size_t line) {
  if (field == "ok") return BeamStatus::ok;
  if (field == "sll_below_min") return BeamStatus::sll_below_min;
  if (field == "error") return BeamStatus::error;
  bad(line, fmt::format("unknown status \"{}\"", field));
}

}  // namespace

std::string_view to_string(BeamStatus status) {
  switch (status) {
    case BeamStatus::ok: return "ok";
    case BeamStatus::sll_below_min: return "sll_below_min";
    case BeamStatus::error: return "error";
  }
  return "error";
}

std::string results_to_csv(const ResultsTable& table) {
  std::string out(kHeader);
  out += '\n';
  for (const ResultRow& r : table) {
    const std::string wall = r.wall_s ? fmt::format("{:.3f}", *r.wall_s) : std::string();
    if (r.status == BeamStatus::error) {
      out += fmt::format("{},{},{},,,,,,,,,{},{}\n", r.scenario, real(r.lat_deg), real(r.lon_deg),
                         wall, to_string(r.status));
      continue;
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario, real(r.lat_deg),
                       real(r.lon_deg), real(r.bw_az_deg), real(r.bw_el_deg), real(r.sll_db),
                       real(r.eirp_dbw), r.active_chains, r.active_elements, real(r.cost),
                       r.generations, wall, to_string(r.status));
  }
  return out;
}

ResultsTable results_from_csv(std::string_view text) {
  ResultsTable table;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) bad(line_no, "unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != kColumns) {
      bad(line_no, fmt::format("expected {} fields, got {}", kColumns, f.size()));
    }
    ResultRow r;
    r.scenario = std::string(f[0]);
    r.lat_deg = parse_real(f[1], line_no, "lat_deg");
    r.lon_deg = parse_real(f[2], line_no, "lon_deg");
    if (!f[11].empty()) r.wall_s = parse_real(f[11], line_no, "wall_s");
    r.status = parse_status(f[12], line_no);
    if (r.status != BeamStatus::error) {
      r.bw_az_deg = parse_real(f[3], line_no, "bw_az_deg");
      r.bw_el_deg = parse_real(f[4], line_no, "bw_el_deg");
      r.sll_db = parse_real(f[5], line_no, "sll_db");
      r.eirp_dbw = parse_real(f[6], line_no, "eirp_dbw");
      r.active_chains = parse_int(f[7], line_no, "active_chains");
      r.active_elements = parse_int(f[8], line_no, "active_elements");
      r.cost = parse_real(f[9], line_no, "cost");
      r.generations = parse_int(f[10], line_no, "generations");
    }
    table.push_back(std::move(r));
  }
  if (!header_seen) bad(1, "missing header");
  return table;
}

std::string report(const ResultsTable& table, ReportFormat format) {
  if (format == ReportFormat::csv) return results_to_csv(table);
  std::string out =
      "| Scenario | lat,lon | θ−3dB (°) | SLL (dB) | EIRP (dBW) | Active |\n"
      "|---|---|---|---|---|---|\n";
  for (const ResultRow& r : table) {
    const std::string where = fmt::format("{:g},{:g}", r.lat_deg, r.lon_deg);
    if (r.status == BeamStatus::error) {
      out += fmt::format("| {} | {} | error | error | error | error |\n", r.scenario, where);
      continue;
    }
    const std::string sll = std::isinf(r.sll_db) ? std::string("∞") : fmt::format("{:.3f}", r.sll_db);
    out += fmt::format("| {} | {} | {:.3f} | {} | {:.3f} | {} |\n", r.scenario, where,
                       r.beamwidth_max_deg(), sll, r.eirp_dbw, r.active_chains);
  }
  return out;
}

}  // namespace beamsynth::scenario
