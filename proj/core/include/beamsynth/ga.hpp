// SPDX-License-Identifier: Apache-2.0
#pragma once

// Genetic-algorithm thinning of the subarray activation mask.
//
// A chromosome holds one quadrant of the mask, (p/2) x (q/2) genes; the full
// mask mirrors it across both array axes, so every mask the search visits is
// quadrant-symmetric and its active count is a multiple of four.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "beamsynth/array_config.hpp"
#include "beamsynth/beam_evaluator.hpp"
#include "beamsynth/cost.hpp"
#include "beamsynth/cuts.hpp"
#include "beamsynth/geom.hpp"
#include "beamsynth/radiation.hpp"

namespace beamsynth::ga {

struct GaConfig {
  int population_size = 120;
  int max_generations = 500;
  double crossover_rate = 0.9;
  // Per-gene flip probability; 1 / chromosome length when unset.
  std::optional<double> mutation_rate;
  int elitism_count = 2;
  int tournament_size = 3;
  CostOptions cost;
  double f_min = 0.02;
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws ConfigError
  double mutation_rate_for(std::size_t genes) const;
};

struct Chromosome {
  std::vector<std::uint8_t> genes;

  int popcount() const;
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct QuadrantShape {
  int rows = 0;
  int cols = 0;
  std::size_t genes() const { return static_cast<std::size_t>(rows) * cols; }
};

// Throws ConfigError when p or q is odd.
QuadrantShape quadrant_shape(const ArrayConfig& config);

// Gene (i, j) of the quadrant, stored at i * cols + j, switches the four
// subarrays (i, j), (p-1-i, j), (i, q-1-j), (p-1-i, q-1-j).
ActivationMask expand_quadrant(const Chromosome& chromosome, const ArrayConfig& config);

struct Evaluation {
  pattern::BeamMetrics metrics;
  CostTerms terms;
  double cost = kPenaltyCost;
  bool penalized = true;  // mask was empty or unmeasurable
};

Evaluation evaluate(const ActivationMask& mask, const pattern::BeamEvaluator& evaluator,
                    const BeamSpec& spec, const CostOptions& options = {});
Evaluation evaluate(const Chromosome& chromosome, const pattern::BeamEvaluator& evaluator,
                    const BeamSpec& spec, const CostOptions& options = {});

// Sampling used to measure a beam.
struct Resolution {
  double cut_step_deg = 0.01;
  pattern::QuadratureSpec quadrature;
};

// Builds the evaluator for spec.target seen from `orbit` (cuts span the field
// of view). Throws VisibilityError for targets outside it.
pattern::BeamEvaluator make_evaluator(std::shared_ptr<const pattern::CouplingKernel> kernel,
                                      const geom::OrbitGeometry& orbit, const BeamSpec& spec,
                                      double cut_step_deg);

// Convenience overload that builds the coupling kernel itself.
Evaluation evaluate(const Chromosome& chromosome, const ArrayConfig& config,
                    const geom::OrbitGeometry& orbit, const BeamSpec& spec,
                    const CostOptions& options = {}, const Resolution& resolution = {});

struct SynthesisOptions {
  Resolution search;
  // Final re-evaluation of the winner; twice as fine a quadrature by default.
  Resolution report{0.01, pattern::QuadratureSpec{}.refined()};
  int threads = 0;
  // Optional prebuilt kernels matching search/report quadratures.
  std::shared_ptr<const pattern::CouplingKernel> search_kernel;
  std::shared_ptr<const pattern::CouplingKernel> report_kernel;
  // Called after every generation with (generation, best cost so far).
  std::function<void(int, double)> on_generation;
};

struct SynthesisResult {
  WeightMatrix weights;
  Chromosome chromosome;
  pattern::BeamMetrics metrics;  // at report resolution
  CostTerms terms;
  double cost = kPenaltyCost;    // of `metrics`
  int generations_used = 0;
  std::vector<double> cost_history;  // best search cost after each generation
  bool converged = false;            // search cost fell below f_min
};

// Runs the generational loop: random initial population, then until the best
// cost drops below f_min or max_generations is reached: elitism, tournament
// selection, uniform crossover, per-gene mutation. Returns the best individual
// ever seen, re-measured at the report resolution.
//
// Results depend only on the inputs and rng_seed, never on `threads`.
SynthesisResult synthesize(const ArrayConfig& config, const geom::OrbitGeometry& orbit,
                           const BeamSpec& spec, const GaConfig& ga,
                           const SynthesisOptions& options = {});

}  // namespace beamsynth::ga
