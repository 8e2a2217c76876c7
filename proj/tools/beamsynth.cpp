// SPDX-License-Identifier: Apache-2.0
// Command-line front end: array sizing, power calibration, batch synthesis,
// result reporting and re-verification.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "beamsynth/array_config.hpp"
#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/errors.hpp"
#include "beamsynth/ga.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/pattern_io.hpp"
#include "beamsynth/results.hpp"
#include "beamsynth/runner.hpp"
#include "beamsynth/scenario.hpp"
#include "beamsynth/sizing.hpp"

namespace bs = beamsynth;
namespace sc = beamsynth::scenario;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitBeamsFailed = 1;  // run finished, some beam failed its requirements
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;  // unreadable or invalid input

void print_metrics(const bs::pattern::BeamMetrics& m) {
  fmt::print("beamwidth_az_deg  {:.6f}\n", m.beamwidth_az_deg);
  fmt::print("beamwidth_el_deg  {:.6f}\n", m.beamwidth_el_deg);
  fmt::print("sll_az_db         {:.6f}\n", m.sll_az_db);
  fmt::print("sll_el_db         {:.6f}\n", m.sll_el_db);
  fmt::print("eirp_dbw          {:.6f}\n", m.eirp_dbw);
  fmt::print("pointing_deg      theta {:.6f} phi {:.6f}\n", m.pointing.theta_deg,
             m.pointing.phi_deg);
  fmt::print("active_chains     {}\n", m.active_chains);
  fmt::print("active_elements   {}\n", m.active_elements);
}

int cmd_size(const sc::SizingInputs& inputs, const bs::geom::OrbitGeometry& orbit) {
  const sc::SizingReport r = sc::size_array(inputs, orbit);
  fmt::print("coverage_half_angle_deg        {:.6f}\n", r.coverage_half_angle_deg);
  fmt::print("required_beamwidth_deg         {:.6f}\n", r.exact_beamwidth_deg);
  fmt::print("design_beamwidth_deg           {:.6f}\n", r.design_beamwidth_deg);
  fmt::print("raw_elements_per_dimension     {:.3f}\n", r.raw_elements);
  fmt::print("elements_per_dimension         {}\n", r.elements_per_dimension);
  fmt::print("subarrays_per_dimension        {}\n", r.subarrays_per_dimension);
  fmt::print("field_of_view_deg              {:.6f}\n", r.field_of_view_deg);
  fmt::print("max_subarray_pitch_wavelengths {:.6f}\n", r.max_subarray_pitch_wavelengths);
  fmt::print("subarray_pitch_wavelengths     {:.6f}\n", r.subarray_pitch_wavelengths);
  fmt::print("grating_lobe_free              {}\n", r.grating_lobe_free);
  return kExitOk;
}

std::vector<std::string> split_ids(const std::string& list) {
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    std::string id = list.substr(start, comma - start);
    if (!id.empty()) ids.push_back(std::move(id));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subarray thinning beam synthesis for GEO direct radiating arrays"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "beamsynth 0.1.0");

  // size
  auto* size = app.add_subcommand("size", "Size the array from a coverage requirement");
  sc::SizingInputs sizing;
  bs::geom::OrbitGeometry size_orbit;
  size->add_option("--coverage-km2", sizing.coverage_area_km2, "Coverage area")
      ->capture_default_str();
  size->add_option("--efficiency", sizing.aperture_efficiency, "Aperture efficiency")
      ->capture_default_str();
  size->add_option("--element-pitch", sizing.element_pitch_wavelengths,
                   "Element pitch in wavelengths")
      ->capture_default_str();
  size->add_option("--subarray-dim", sizing.subarray_dim, "Elements per subarray side")
      ->capture_default_str();
  size->add_option("--beamwidth-resolution", sizing.beamwidth_resolution_deg,
                   "Truncate the design beamwidth to this step (0: exact)")
      ->capture_default_str();
  size->add_option("--earth-radius-km", size_orbit.earth_radius_km)->capture_default_str();
  size->add_option("--altitude-km", size_orbit.altitude_km)->capture_default_str();

  // calibrate
  auto* calibrate =
      app.add_subcommand("calibrate", "Derive the per-chain transmit power from the reference beam");
  sc::CalibrationReference reference;
  calibrate->add_option("--block", reference.block_x, "Side of the centred active block")
      ->capture_default_str();
  calibrate->add_option("--eirp", reference.eirp_dbw, "Reference EIRP (dBW)")->capture_default_str();

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "Run the GA for every beam of a scenario");
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string beam_list;
  int threads = 0;
  bool fine_report = false;
  bool wall_time = false;
  bool quiet = false;
  synth->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--seed", seed, "Base seed (overrides ga.rng_seed)");
  synth->add_option("--beams", beam_list, "Comma-separated beam ids to run");
  synth->add_option("--threads", threads, "Worker threads (default: $BEAMSYNTH_THREADS or all cores)");
  synth->add_flag("--fine-report", fine_report, "Report at 10x finer cuts and 4x finer quadrature");
  synth->add_flag("--wall-time", wall_time, "Record per-beam wall time in results.csv");
  synth->add_flag("-q,--quiet", quiet, "No progress output");

  // report
  auto* rep = app.add_subcommand("report", "Render results.csv of a run");
  std::string run_dir;
  std::string format = "markdown";
  rep->add_option("--run", run_dir, "Run directory")->required();
  rep->add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}))
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Re-measure every persisted mask of a run");
  std::string verify_dir;
  double tolerance = 1e-6;
  verify->add_option("--run", verify_dir, "Run directory")->required();
  verify->add_option("--tolerance", tolerance, "Allowed deviation (deg / dB)")->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Measure a mask against one beam of a scenario");
  std::string eval_scenario;
  std::string eval_beam;
  std::string mask_path;
  bool fine_eval = false;
  eval->add_option("--scenario", eval_scenario, "Scenario JSON file")->required();
  eval->add_option("--beam", eval_beam, "Beam id")->required();
  eval->add_option("--mask", mask_path, "Mask CSV")->required();
  eval->add_flag("--fine-report", fine_eval, "Use the fine report resolution");
  eval->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*size) return cmd_size(sizing, size_orbit);

    if (*calibrate) {
      reference.block_y = reference.block_x;
      const double power = sc::calibrate_per_chain_power_w(bs::ArrayConfig{}, reference);
      fmt::print("per_chain_power_w {:.9g}\n", power);
      return kExitOk;
    }

    if (*synth) {
      const sc::ScenarioFile scenario = sc::load_scenario(scenario_path);
      sc::RunOptions options;
      options.out_dir = out_dir;
      options.seed = seed;
      options.beam_ids = split_ids(beam_list);
      options.threads = threads;
      options.fine_report = fine_report;
      options.record_wall_time = wall_time;
      if (!quiet) options.log = [](const std::string& line) { fmt::print(stderr, "{}\n", line); };
      const sc::RunOutcome outcome = sc::run(scenario, options);
      if (!quiet) fmt::print("{}", sc::report(outcome.table, sc::ReportFormat::markdown));
      return outcome.all_ok ? kExitOk : kExitBeamsFailed;
    }

    if (*rep) {
      const auto table =
          sc::results_from_csv(bs::io::read_file(std::filesystem::path(run_dir) / "results.csv"));
      fmt::print("{}", sc::report(table, format == "csv" ? sc::ReportFormat::csv
                                                         : sc::ReportFormat::markdown));
      return kExitOk;
    }

    if (*verify) {
      bool ok = true;
      for (const auto& c : sc::verify_run(verify_dir, threads)) {
        const bool pass = c.counts_match && c.max_angle_error_deg <= tolerance &&
                          c.max_db_error <= tolerance;
        ok = ok && pass;
        fmt::print("{} {}: max angle error {:.3g} deg, max level error {:.3g} dB\n",
                   pass ? "PASS" : "FAIL", c.beam_id, c.max_angle_error_deg, c.max_db_error);
      }
      return ok ? kExitOk : kExitBeamsFailed;
    }

    if (*eval) {
      const sc::ScenarioFile scenario = sc::load_scenario(eval_scenario);
      const auto it = std::find_if(scenario.beams.begin(), scenario.beams.end(),
                                   [&](const sc::BeamEntry& b) { return b.id == eval_beam; });
      if (it == scenario.beams.end()) {
        fmt::print(stderr, "error: no beam with id \"{}\"\n", eval_beam);
        return kExitInput;
      }
      const auto mask = bs::pattern::mask_from_csv(bs::io::read_file(mask_path));
      const auto resolution = sc::run_resolution(scenario.evaluation, fine_eval);
      auto quadrature = resolution.report.quadrature;
      quadrature.threads = threads;
      const auto kernel = std::make_shared<const bs::pattern::CouplingKernel>(scenario.array, quadrature);
      const auto evaluator =
          bs::ga::make_evaluator(kernel, scenario.orbit, it->spec, resolution.report.cut_step_deg);
      const auto result = bs::ga::evaluate(mask, evaluator, it->spec, scenario.ga.cost);
      if (result.penalized) {
        fmt::print(stderr, "error: mask is empty or its beam cannot be measured\n");
        return kExitBeamsFailed;
      }
      print_metrics(result.metrics);
      fmt::print("cost              {:.9f}\n", result.cost);
      return kExitOk;
    }
  } catch (const bs::ParseError& e) {
    fmt::print(stderr, "parse error: {}\n", e.what());
    return kExitInput;
  } catch (const bs::ValidationError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kExitInput;
  } catch (const bs::VisibilityError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInput;
  }
  return kExitUsage;
}
