// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

#include <fmt/format.h>

#include <json.hpp>

#include "beamsynth/errors.hpp"
#include "beamsynth/pattern_io.hpp"
#include "beamsynth/random.hpp"

namespace beamsynth::scenario {

namespace {

using nlohmann::json;

constexpr std::uint64_t kBeamSeedStream = 0x4245414d;  // "BEAM"

// Typed, path-aware access to one JSON object. Unknown keys are rejected so
// that typos do not silently fall back to defaults.
class Section {
 public:
  Section(const json& value, std::string path, std::initializer_list<const char*> allowed)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) fail("", "must be an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : value_.items()) {
      if (!keys.contains(key)) fail(key.c_str(), "unknown field");
    }
  }

  bool has(const char* key) const { return value_.contains(key); }
  const json& raw(const char* key) const { return value_.at(key); }
  std::string child(const char* key) const { return join(key); }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_number()) fail(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  int small_integer(const char* key, int fallback) const {
    const std::int64_t x = integer(key, fallback);
    if (x < -1'000'000'000 || x > 1'000'000'000) fail(key, "is out of range");
    return static_cast<int>(x);
  }

  std::uint64_t seed(const char* key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(key, "must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_boolean()) fail(key, "must be true or false");
    return v.get<bool>();
  }

  std::string string(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  [[noreturn]] void fail(const char* key, const std::string& what) const {
    throw ValidationError(fmt::format("{}: {}", join(key), what));
  }

 private:
  std::string join(const char* key) const {
    if (*key == '\0') return path_.empty() ? std::string("(root)") : path_;
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

  const json& value_;
  std::string path_;
};

// Runs a validate() that throws ConfigError and re-throws it as a
// ValidationError prefixed with the section path.
template <typename F>
void checked(const std::string& path, F&& check) {
  try {
    check();
  } catch (const ConfigError& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

geom::OrbitGeometry read_orbit(const json& j) {
  const Section s(j, "orbit", {"earth_radius_km", "altitude_km", "satellite_longitude_deg"});
  geom::OrbitGeometry o;
  o.earth_radius_km = s.number("earth_radius_km", o.earth_radius_km);
  o.altitude_km = s.number("altitude_km", o.altitude_km);
  o.satellite_longitude_deg = s.number("satellite_longitude_deg", o.satellite_longitude_deg);
  checked("orbit", [&] { o.validate(); });
  return o;
}

SizingInputs read_sizing(const json& j) {
  const Section s(j, "sizing",
                  {"coverage_area_km2", "aperture_efficiency", "element_pitch_wavelengths",
                   "subarray_dim", "frequency_hz", "beamwidth_resolution_deg"});
  SizingInputs in;
  in.coverage_area_km2 = s.number("coverage_area_km2", in.coverage_area_km2);
  in.aperture_efficiency = s.number("aperture_efficiency", in.aperture_efficiency);
  in.element_pitch_wavelengths = s.number("element_pitch_wavelengths", in.element_pitch_wavelengths);
  in.subarray_dim = s.small_integer("subarray_dim", in.subarray_dim);
  in.frequency_hz = s.number("frequency_hz", in.frequency_hz);
  in.beamwidth_resolution_deg = s.number("beamwidth_resolution_deg", in.beamwidth_resolution_deg);
  checked("sizing", [&] { in.validate(); });
  return in;
}

ArrayConfig read_array(const json& j, const ArrayConfig& base) {
  const Section s(j, "array",
                  {"subarray_count_x", "subarray_count_y", "elements_per_subarray_x",
                   "elements_per_subarray_y", "element_pitch_wavelengths",
                   "subarray_pitch_wavelengths", "frequency_hz", "element_pattern_exponent",
                   "aperture_efficiency", "per_chain_power_w", "allow_non_tiling"});
  ArrayConfig a = base;
  a.subarray_count_x = s.small_integer("subarray_count_x", a.subarray_count_x);
  a.subarray_count_y = s.small_integer("subarray_count_y", a.subarray_count_y);
  a.elements_per_subarray_x = s.small_integer("elements_per_subarray_x", a.elements_per_subarray_x);
  a.elements_per_subarray_y = s.small_integer("elements_per_subarray_y", a.elements_per_subarray_y);
  a.element_pitch_wavelengths = s.number("element_pitch_wavelengths", a.element_pitch_wavelengths);
  a.subarray_pitch_wavelengths = s.number("subarray_pitch_wavelengths", a.subarray_pitch_wavelengths);
  a.frequency_hz = s.number("frequency_hz", a.frequency_hz);
  a.element_pattern_exponent = s.number("element_pattern_exponent", a.element_pattern_exponent);
  a.aperture_efficiency = s.number("aperture_efficiency", a.aperture_efficiency);
  a.per_chain_power_w = s.number("per_chain_power_w", a.per_chain_power_w);
  a.allow_non_tiling = s.boolean("allow_non_tiling", a.allow_non_tiling);
  checked("array", [&] { a.validate(); });
  return a;
}

ga::CostOptions read_cost(const json& j) {
  const Section s(j, "ga.cost", {"k1", "k2", "k3", "sll_penalty", "eirp_scale"});
  ga::CostOptions c;
  c.weights.k1 = s.number("k1", c.weights.k1);
  c.weights.k2 = s.number("k2", c.weights.k2);
  c.weights.k3 = s.number("k3", c.weights.k3);
  const std::string sll = s.string("sll_penalty", "one_sided");
  if (sll == "one_sided") {
    c.sll_penalty = ga::SllPenalty::one_sided;
  } else if (sll == "symmetric") {
    c.sll_penalty = ga::SllPenalty::symmetric;
  } else {
    s.fail("sll_penalty", "must be \"one_sided\" or \"symmetric\"");
  }
  const std::string eirp = s.string("eirp_scale", "dbw");
  if (eirp == "dbw") {
    c.eirp_scale = ga::EirpErrorScale::dbw;
  } else if (eirp == "linear") {
    c.eirp_scale = ga::EirpErrorScale::linear;
  } else {
    s.fail("eirp_scale", "must be \"dbw\" or \"linear\"");
  }
  return c;
}

ga::GaConfig read_ga(const json& j) {
  const Section s(j, "ga",
                  {"population_size", "max_generations", "crossover_rate", "mutation_rate",
                   "elitism_count", "tournament_size", "cost", "f_min", "rng_seed"});
  ga::GaConfig g;
  g.population_size = s.small_integer("population_size", g.population_size);
  g.max_generations = s.small_integer("max_generations", g.max_generations);
  g.crossover_rate = s.number("crossover_rate", g.crossover_rate);
  if (s.has("mutation_rate") && !s.raw("mutation_rate").is_null()) {
    g.mutation_rate = s.number("mutation_rate", 0.0);
  }
  g.elitism_count = s.small_integer("elitism_count", g.elitism_count);
  g.tournament_size = s.small_integer("tournament_size", g.tournament_size);
  if (s.has("cost")) g.cost = read_cost(s.raw("cost"));
  g.f_min = s.number("f_min", g.f_min);
  g.rng_seed = s.seed("rng_seed", g.rng_seed);
  checked("ga", [&] { g.validate(); });
  return g;
}

EvaluationSettings read_evaluation(const json& j) {
  const Section s(j, "evaluation",
                  {"cut_step_deg", "uv_step_deg", "samples_per_cycle", "min_intervals"});
  EvaluationSettings e;
  e.cut_step_deg = s.number("cut_step_deg", e.cut_step_deg);
  e.uv_step_deg = s.number("uv_step_deg", e.uv_step_deg);
  e.quadrature.samples_per_cycle = s.number("samples_per_cycle", e.quadrature.samples_per_cycle);
  e.quadrature.min_intervals = s.small_integer("min_intervals", e.quadrature.min_intervals);
  if (!(e.cut_step_deg > 0.0)) s.fail("cut_step_deg", "must be > 0");
  if (!(e.uv_step_deg > 0.0)) s.fail("uv_step_deg", "must be > 0");
  if (!(e.quadrature.samples_per_cycle >= 2.0)) s.fail("samples_per_cycle", "must be >= 2");
  if (e.quadrature.min_intervals < 2) s.fail("min_intervals", "must be >= 2");
  return e;
}

BeamEntry read_beam(const json& j, std::size_t index) {
  const Section s(j, fmt::format("beams[{}]", index),
                  {"id", "latitude_deg", "longitude_deg", "beamwidth_az_deg", "beamwidth_el_deg",
                   "sll_min_db", "eirp_dbw"});
  BeamEntry b;
  b.id = s.string("id", std::to_string(index + 1));
  if (!s.has("latitude_deg")) s.fail("latitude_deg", "is required");
  if (!s.has("longitude_deg")) s.fail("longitude_deg", "is required");
  if (!s.has("eirp_dbw")) s.fail("eirp_dbw", "is required");
  b.spec.target.latitude_deg = s.number("latitude_deg", 0.0);
  b.spec.target.longitude_deg = s.number("longitude_deg", 0.0);
  b.spec.beamwidth_az_deg = s.number("beamwidth_az_deg", b.spec.beamwidth_az_deg);
  b.spec.beamwidth_el_deg = s.number("beamwidth_el_deg", b.spec.beamwidth_el_deg);
  b.spec.sll_min_db = s.number("sll_min_db", b.spec.sll_min_db);
  b.spec.eirp_dbw = s.number("eirp_dbw", b.spec.eirp_dbw);
  return b;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
         }) &&
         id != "." && id != "..";
}

}  // namespace

void ScenarioFile::validate() const {
  checked("orbit", [&] { orbit.validate(); });
  checked("array", [&] { array.validate(); });
  checked("array", [&] { (void)ga::quadrant_shape(array); });
  checked("ga", [&] { ga.validate(); });
  if (beams.empty()) throw ValidationError("beams: at least one beam is required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < beams.size(); ++i) {
    const BeamEntry& b = beams[i];
    const std::string path = fmt::format("beams[{}]", i);
    if (!valid_id(b.id)) {
      throw ValidationError(
          fmt::format("{}.id: \"{}\" must be 1-64 characters from [A-Za-z0-9._-]", path, b.id));
    }
    if (!ids.insert(b.id).second) {
      throw ValidationError(fmt::format("{}.id: duplicate id \"{}\"", path, b.id));
    }
    checked(path, [&] { b.spec.validate(); });
    try {
      (void)geom::target_to_steering(b.spec.target, orbit);
    } catch (const VisibilityError& e) {
      throw VisibilityError(fmt::format("{}: {}", path, e.what()));
    }
  }
}

ScenarioFile parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(fmt::format("line {}, column {}: {}", line, column, e.what()));
  }

  const Section root(doc, "",
                     {"format_version", "name", "orbit", "sizing", "array", "ga", "evaluation",
                      "beams"});
  if (!root.has("format_version")) root.fail("format_version", "is required");
  const std::int64_t version = root.integer("format_version", 0);
  if (version != kScenarioFormatVersion) {
    root.fail("format_version",
              fmt::format("unsupported version {} (expected {})", version, kScenarioFormatVersion));
  }

  ScenarioFile s;
  s.name = root.string("name", "scenario");
  if (root.has("orbit")) s.orbit = read_orbit(root.raw("orbit"));
  if (root.has("array")) {
    if (root.has("sizing")) root.fail("sizing", "cannot be combined with an explicit array");
    s.array = read_array(root.raw("array"), ArrayConfig{});
  } else {
    s.sizing = root.has("sizing") ? read_sizing(root.raw("sizing")) : SizingInputs{};
    try {
      s.array = size_array(*s.sizing, s.orbit).array;
    } catch (const GeometryError& e) {
      throw ValidationError(fmt::format("sizing: {}", e.what()));
    } catch (const DomainError& e) {
      throw ValidationError(fmt::format("sizing: {}", e.what()));
    }
  }
  if (root.has("ga")) s.ga = read_ga(root.raw("ga"));
  if (root.has("evaluation")) s.evaluation = read_evaluation(root.raw("evaluation"));

  if (!root.has("beams")) root.fail("beams", "is required");
  const json& beams = root.raw("beams");
  if (!beams.is_array()) root.fail("beams", "must be an array");
  for (std::size_t i = 0; i < beams.size(); ++i) s.beams.push_back(read_beam(beams[i], i));

  s.validate();
  return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_scenario(text);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string to_json(const ScenarioFile& s) {
  json doc;
  doc["format_version"] = kScenarioFormatVersion;
  doc["name"] = s.name;
  doc["orbit"] = {{"earth_radius_km", s.orbit.earth_radius_km},
                  {"altitude_km", s.orbit.altitude_km},
                  {"satellite_longitude_deg", s.orbit.satellite_longitude_deg}};
  const ArrayConfig& a = s.array;
  doc["array"] = {{"subarray_count_x", a.subarray_count_x},
                  {"subarray_count_y", a.subarray_count_y},
                  {"elements_per_subarray_x", a.elements_per_subarray_x},
                  {"elements_per_subarray_y", a.elements_per_subarray_y},
                  {"element_pitch_wavelengths", a.element_pitch_wavelengths},
                  {"subarray_pitch_wavelengths", a.subarray_pitch_wavelengths},
                  {"frequency_hz", a.frequency_hz},
                  {"element_pattern_exponent", a.element_pattern_exponent},
                  {"aperture_efficiency", a.aperture_efficiency},
                  {"per_chain_power_w", a.per_chain_power_w},
                  {"allow_non_tiling", a.allow_non_tiling}};
  const ga::GaConfig& g = s.ga;
  json cost = {{"k1", g.cost.weights.k1},
               {"k2", g.cost.weights.k2},
               {"k3", g.cost.weights.k3},
               {"sll_penalty",
                g.cost.sll_penalty == ga::SllPenalty::one_sided ? "one_sided" : "symmetric"},
               {"eirp_scale", g.cost.eirp_scale == ga::EirpErrorScale::dbw ? "dbw" : "linear"}};
  doc["ga"] = {{"population_size", g.population_size},
               {"max_generations", g.max_generations},
               {"crossover_rate", g.crossover_rate},
               {"mutation_rate", g.mutation_rate ? json(*g.mutation_rate) : json(nullptr)},
               {"elitism_count", g.elitism_count},
               {"tournament_size", g.tournament_size},
               {"cost", cost},
               {"f_min", g.f_min},
               {"rng_seed", g.rng_seed}};
  doc["evaluation"] = {{"cut_step_deg", s.evaluation.cut_step_deg},
                       {"uv_step_deg", s.evaluation.uv_step_deg},
                       {"samples_per_cycle", s.evaluation.quadrature.samples_per_cycle},
                       {"min_intervals", s.evaluation.quadrature.min_intervals}};
  json beams = json::array();
  for (const BeamEntry& b : s.beams) {
    beams.push_back({{"id", b.id},
                     {"latitude_deg", b.spec.target.latitude_deg},
                     {"longitude_deg", b.spec.target.longitude_deg},
                     {"beamwidth_az_deg", b.spec.beamwidth_az_deg},
                     {"beamwidth_el_deg", b.spec.beamwidth_el_deg},
                     {"sll_min_db", b.spec.sll_min_db},
                     {"eirp_dbw", b.spec.eirp_dbw}});
  }
  doc["beams"] = std::move(beams);
  return doc.dump(2) + "\n";
}

std::uint64_t beam_seed(std::uint64_t base_seed, std::size_t index) {
  Rng rng(base_seed, {kBeamSeedStream, static_cast<std::uint64_t>(index)});
  return rng.next();
}

}  // namespace beamsynth::scenario
