// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/runner.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <memory>

#include <fmt/format.h>

#include <json.hpp>

#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/errors.hpp"
#include "beamsynth/parallel.hpp"
#include "beamsynth/pattern_io.hpp"
#include "beamsynth/radiation.hpp"

namespace beamsynth::scenario {

namespace {

using nlohmann::json;

struct BeamOutcome {
  ResultRow row;
  std::uint64_t seed = 0;
  std::string message;
};

void log_line(const RunOptions& options, const std::string& message) {
  if (options.log) options.log(message);
}

std::string history_csv(const std::vector<double>& history) {
  std::string out = "generation,best_cost\n";
  for (std::size_t g = 0; g < history.size(); ++g) out += fmt::format("{},{:.9f}\n", g, history[g]);
  return out;
}

ResultRow row_from_metrics(const BeamEntry& beam, const pattern::BeamMetrics& m, double cost,
                           int generations) {
  ResultRow r;
  r.scenario = beam.id;
  r.lat_deg = beam.spec.target.latitude_deg;
  r.lon_deg = beam.spec.target.longitude_deg;
  r.bw_az_deg = m.beamwidth_az_deg;
  r.bw_el_deg = m.beamwidth_el_deg;
  r.sll_db = m.sll_min_db();
  r.eirp_dbw = m.eirp_dbw;
  r.active_chains = m.active_chains;
  r.active_elements = m.active_elements;
  r.cost = cost;
  r.generations = generations;
  r.status = m.sll_min_db() >= beam.spec.sll_min_db ? BeamStatus::ok : BeamStatus::sll_below_min;
  return r;
}

json resolution_json(const ga::Resolution& r) {
  return {{"cut_step_deg", r.cut_step_deg},
          {"samples_per_cycle", r.quadrature.samples_per_cycle},
          {"min_intervals", r.quadrature.min_intervals}};
}

}  // namespace

RunResolution run_resolution(const EvaluationSettings& evaluation, bool fine_report) {
  RunResolution r;
  r.search.cut_step_deg = evaluation.cut_step_deg;
  r.search.quadrature = evaluation.quadrature;
  r.report.cut_step_deg = fine_report ? evaluation.cut_step_deg / 10.0 : evaluation.cut_step_deg;
  r.report.quadrature = fine_report ? evaluation.quadrature.refined().refined()
                                    : evaluation.quadrature.refined();
  return r;
}

RunOutcome run(const ScenarioFile& scenario, const RunOptions& options) {
  scenario.validate();
  if (options.out_dir.empty()) throw ContractError("run: output directory is required");

  std::vector<std::size_t> selected;
  if (options.beam_ids.empty()) {
    for (std::size_t i = 0; i < scenario.beams.size(); ++i) selected.push_back(i);
  } else {
    for (const std::string& id : options.beam_ids) {
      const auto it = std::find_if(scenario.beams.begin(), scenario.beams.end(),
                                   [&](const BeamEntry& b) { return b.id == id; });
      if (it == scenario.beams.end()) {
        throw ValidationError(fmt::format("beams: no beam with id \"{}\"", id));
      }
      const auto index = static_cast<std::size_t>(it - scenario.beams.begin());
      if (std::find(selected.begin(), selected.end(), index) == selected.end()) {
        selected.push_back(index);
      }
    }
    std::sort(selected.begin(), selected.end());
  }

  const int threads = resolve_thread_count(options.threads);
  // Several beams: one beam per worker, each GA single-threaded. One beam:
  // the GA uses every worker. Results are the same either way.
  const bool beams_in_parallel = selected.size() > 1 && threads > 1;
  const int ga_threads = beams_in_parallel ? 1 : threads;

  const RunResolution resolution = run_resolution(scenario.evaluation, options.fine_report);
  auto search_quadrature = resolution.search.quadrature;
  auto report_quadrature = resolution.report.quadrature;
  search_quadrature.threads = threads;
  report_quadrature.threads = threads;
  log_line(options, "building coupling kernels");
  const auto search_kernel =
      std::make_shared<const pattern::CouplingKernel>(scenario.array, search_quadrature);
  const auto report_kernel =
      std::make_shared<const pattern::CouplingKernel>(scenario.array, report_quadrature);

  std::filesystem::create_directories(options.out_dir / "beams");
  const std::uint64_t base_seed = options.seed.value_or(scenario.ga.rng_seed);

  std::vector<BeamOutcome> outcomes(selected.size());
  parallel_for(selected.size(), beams_in_parallel ? threads : 1, [&](std::size_t k) {
    const std::size_t index = selected[k];
    const BeamEntry& beam = scenario.beams[index];
    BeamOutcome& out = outcomes[k];
    out.seed = beam_seed(base_seed, index);
    const auto started = std::chrono::steady_clock::now();
    try {
      ga::GaConfig ga = scenario.ga;
      ga.rng_seed = out.seed;
      ga::SynthesisOptions so;
      so.search = resolution.search;
      so.report = resolution.report;
      so.threads = ga_threads;
      so.search_kernel = search_kernel;
      so.report_kernel = report_kernel;
      const ga::SynthesisResult result =
          ga::synthesize(scenario.array, scenario.orbit, beam.spec, ga, so);

      const auto reporter = ga::make_evaluator(report_kernel, scenario.orbit, beam.spec,
                                               resolution.report.cut_step_deg);
      const auto [az, el] = reporter.cuts(result.weights.mask);
      const auto grid = reporter.uv_grid(result.weights.mask, scenario.evaluation.uv_step_deg);

      const auto dir = options.out_dir / "beams" / beam.id;
      std::filesystem::create_directories(dir);
      io::write_file_atomic(dir / "mask.csv", pattern::mask_to_csv(result.weights.mask));
      io::write_file_atomic(dir / "cut_az.csv", pattern::cut_to_csv(az));
      io::write_file_atomic(dir / "cut_el.csv", pattern::cut_to_csv(el));
      io::write_file_atomic(dir / "uv.csv", pattern::grid_to_csv(grid));
      io::write_file_atomic(dir / "history.csv", history_csv(result.cost_history));

      out.row = row_from_metrics(beam, result.metrics, result.cost, result.generations_used);
    } catch (const std::exception& e) {
      out.row = ResultRow{};
      out.row.scenario = beam.id;
      out.row.lat_deg = beam.spec.target.latitude_deg;
      out.row.lon_deg = beam.spec.target.longitude_deg;
      out.row.status = BeamStatus::error;
      out.message = e.what();
    }
    if (options.record_wall_time) {
      out.row.wall_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    log_line(options, out.row.status == BeamStatus::error
                          ? fmt::format("beam {}: error: {}", beam.id, out.message)
                          : fmt::format("beam {}: {} (cost {:.4f}, {} generations)", beam.id,
                                        to_string(out.row.status), out.row.cost,
                                        out.row.generations));
  });

  RunOutcome outcome;
  outcome.all_ok = true;
  json beams = json::array();
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const BeamOutcome& o = outcomes[k];
    outcome.table.push_back(o.row);
    outcome.all_ok = outcome.all_ok && o.row.status == BeamStatus::ok;
    json entry = {{"id", o.row.scenario},
                  {"index", selected[k]},
                  {"seed", o.seed},
                  {"status", std::string(to_string(o.row.status))}};
    if (!o.message.empty()) entry["message"] = o.message;
    beams.push_back(std::move(entry));
  }

  const json manifest = {{"format_version", kManifestFormatVersion},
                         {"scenario", scenario.name},
                         {"base_seed", base_seed},
                         {"fine_report", options.fine_report},
                         {"search", resolution_json(resolution.search)},
                         {"report", resolution_json(resolution.report)},
                         {"beams", beams}};
  io::write_file_atomic(options.out_dir / "scenario_resolved.json", to_json(scenario));
  io::write_file_atomic(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
  io::write_file_atomic(options.out_dir / "results.csv", results_to_csv(outcome.table));
  return outcome;
}

std::vector<RoundTripCheck> verify_run(const std::filesystem::path& run_dir, int threads) {
  const json manifest = [&] {
    try {
      return json::parse(io::read_file(run_dir / "manifest.json"));
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{}: {}", (run_dir / "manifest.json").string(), e.what()));
    }
  }();
  if (!manifest.contains("format_version") || manifest["format_version"] != kManifestFormatVersion) {
    throw ValidationError(fmt::format("{}: unsupported manifest format_version",
                                      (run_dir / "manifest.json").string()));
  }
  const ScenarioFile scenario = load_scenario(run_dir / "scenario_resolved.json");
  const bool fine = manifest.value("fine_report", false);
  const RunResolution resolution = run_resolution(scenario.evaluation, fine);
  auto quadrature = resolution.report.quadrature;
  quadrature.threads = threads;
  const auto kernel = std::make_shared<const pattern::CouplingKernel>(scenario.array, quadrature);
  const ResultsTable table = results_from_csv(io::read_file(run_dir / "results.csv"));

  std::vector<RoundTripCheck> checks;
  for (const ResultRow& row : table) {
    if (row.status == BeamStatus::error) continue;
    const auto it = std::find_if(scenario.beams.begin(), scenario.beams.end(),
                                 [&](const BeamEntry& b) { return b.id == row.scenario; });
    if (it == scenario.beams.end()) {
      throw ValidationError(fmt::format("results.csv: unknown beam \"{}\"", row.scenario));
    }
    const ActivationMask mask =
        pattern::mask_from_csv(io::read_file(run_dir / "beams" / row.scenario / "mask.csv"));
    const auto evaluator =
        ga::make_evaluator(kernel, scenario.orbit, it->spec, resolution.report.cut_step_deg);
    RoundTripCheck c;
    c.beam_id = row.scenario;
    c.stored.beamwidth_az_deg = row.bw_az_deg;
    c.stored.beamwidth_el_deg = row.bw_el_deg;
    c.stored.sll_az_db = row.sll_db;
    c.stored.sll_el_db = row.sll_db;
    c.stored.eirp_dbw = row.eirp_dbw;
    c.stored.active_chains = row.active_chains;
    c.stored.active_elements = row.active_elements;
    c.recomputed = evaluator.metrics(mask);
    c.max_angle_error_deg =
        std::max(std::abs(c.recomputed.beamwidth_az_deg - row.bw_az_deg),
                 std::abs(c.recomputed.beamwidth_el_deg - row.bw_el_deg));
    const double sll = c.recomputed.sll_min_db();
    const double sll_error = (std::isinf(sll) && std::isinf(row.sll_db) && sll == row.sll_db)
                                 ? 0.0
                                 : std::abs(sll - row.sll_db);
    c.max_db_error = std::max(sll_error, std::abs(c.recomputed.eirp_dbw - row.eirp_dbw));
    c.counts_match = c.recomputed.active_chains == row.active_chains &&
                     c.recomputed.active_elements == row.active_elements;
    checks.push_back(std::move(c));
  }
  return checks;
}

}  // namespace beamsynth::scenario
