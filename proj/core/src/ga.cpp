// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beamsynth/errors.hpp"
#include "beamsynth/parallel.hpp"
#include "beamsynth/random.hpp"

namespace beamsynth::ga {

namespace {

// Substream tags.
constexpr std::uint64_t kInitStream = 0x494e4954;   // "INIT"
constexpr std::uint64_t kBreedStream = 0x42524544;  // "BRED"

struct Individual {
  Chromosome chromosome;
  Evaluation evaluation;
};

// Strict weak order on (cost, index): ties go to the earlier individual.
bool better(const std::vector<Individual>& pop, std::size_t a, std::size_t b) {
  const double ca = pop[a].evaluation.cost;
  const double cb = pop[b].evaluation.cost;
  return ca < cb || (ca == cb && a < b);
}

Chromosome random_chromosome(std::size_t genes, Rng& rng, double density) {
  Chromosome c;
  c.genes.resize(genes);
  for (auto& g : c.genes) g = rng.bernoulli(density) ? 1 : 0;
  return c;
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 2) throw ConfigError("ga.population_size must be >= 2");
  if (max_generations < 0) throw ConfigError("ga.max_generations must be >= 0");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ConfigError("ga.crossover_rate must be in [0, 1]");
  }
  if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
    throw ConfigError("ga.mutation_rate must be in [0, 1]");
  }
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw ConfigError("ga.elitism_count must be in [0, population_size)");
  }
  if (tournament_size < 1) throw ConfigError("ga.tournament_size must be >= 1");
  if (!(cost.weights.k1 > 0.0 && cost.weights.k2 > 0.0 && cost.weights.k3 > 0.0)) {
    throw ConfigError("ga cost weights k1, k2, k3 must be > 0");
  }
  if (!(f_min >= 0.0)) throw ConfigError("ga.f_min must be >= 0");
}

double GaConfig::mutation_rate_for(std::size_t genes) const {
  if (mutation_rate) return *mutation_rate;
  return genes == 0 ? 0.0 : 1.0 / static_cast<double>(genes);
}

int Chromosome::popcount() const {
  return static_cast<int>(std::count(genes.begin(), genes.end(), std::uint8_t{1}));
}

QuadrantShape quadrant_shape(const ArrayConfig& config) {
  if (config.subarray_count_x % 2 != 0 || config.subarray_count_y % 2 != 0) {
    throw ConfigError("quadrant symmetry needs even subarray counts, got " +
                      std::to_string(config.subarray_count_x) + "x" +
                      std::to_string(config.subarray_count_y));
  }
  return {config.subarray_count_x / 2, config.subarray_count_y / 2};
}

ActivationMask expand_quadrant(const Chromosome& chromosome, const ArrayConfig& config) {
  const QuadrantShape shape = quadrant_shape(config);
  if (chromosome.genes.size() != shape.genes()) {
    throw ContractError("chromosome has " + std::to_string(chromosome.genes.size()) +
                        " genes, expected " + std::to_string(shape.genes()));
  }
  const int p = config.subarray_count_x;
  const int q = config.subarray_count_y;
  ActivationMask mask(p, q);
  for (int i = 0; i < shape.rows; ++i) {
    for (int j = 0; j < shape.cols; ++j) {
      const bool on = chromosome.genes[static_cast<std::size_t>(i) * shape.cols + j] != 0;
      mask.set(i, j, on);
      mask.set(p - 1 - i, j, on);
      mask.set(i, q - 1 - j, on);
      mask.set(p - 1 - i, q - 1 - j, on);
    }
  }
  return mask;
}

Evaluation evaluate(const ActivationMask& mask, const pattern::BeamEvaluator& evaluator,
                    const BeamSpec& spec, const CostOptions& options) {
  Evaluation out;
  if (mask.active_count() == 0) return out;
  try {
    out.metrics = evaluator.metrics(mask);
  } catch (const MetricError&) {
    out.metrics.active_chains = mask.active_count();
    out.metrics.active_elements = out.metrics.active_chains * evaluator.config().elements_per_subarray();
    return out;
  }
  out.terms = cost_terms(out.metrics, spec, options);
  const double total = out.terms.total();
  if (std::isfinite(total)) {
    out.cost = total;
    out.penalized = false;
  }
  return out;
}

Evaluation evaluate(const Chromosome& chromosome, const pattern::BeamEvaluator& evaluator,
                    const BeamSpec& spec, const CostOptions& options) {
  return evaluate(expand_quadrant(chromosome, evaluator.config()), evaluator, spec, options);
}

pattern::BeamEvaluator make_evaluator(std::shared_ptr<const pattern::CouplingKernel> kernel,
                                      const geom::OrbitGeometry& orbit, const BeamSpec& spec,
                                      double cut_step_deg) {
  const auto steering = geom::target_to_steering(spec.target, orbit);
  return pattern::BeamEvaluator(std::move(kernel), steering, geom::field_of_view_deg(orbit),
                                cut_step_deg);
}

Evaluation evaluate(const Chromosome& chromosome, const ArrayConfig& config,
                    const geom::OrbitGeometry& orbit, const BeamSpec& spec,
                    const CostOptions& options, const Resolution& resolution) {
  auto kernel = std::make_shared<const pattern::CouplingKernel>(config, resolution.quadrature);
  const auto evaluator = make_evaluator(std::move(kernel), orbit, spec, resolution.cut_step_deg);
  return evaluate(chromosome, evaluator, spec, options);
}

SynthesisResult synthesize(const ArrayConfig& config, const geom::OrbitGeometry& orbit,
                           const BeamSpec& spec, const GaConfig& ga,
                           const SynthesisOptions& options) {
  config.validate();
  orbit.validate();
  spec.validate();
  ga.validate();
  const QuadrantShape shape = quadrant_shape(config);
  const std::size_t genes = shape.genes();
  const double mutation = ga.mutation_rate_for(genes);
  const int threads = resolve_thread_count(options.threads);

  auto search_kernel = options.search_kernel;
  if (!search_kernel || !(search_kernel->config() == config)) {
    search_kernel = std::make_shared<const pattern::CouplingKernel>(config, options.search.quadrature);
  }
  const auto evaluator = make_evaluator(search_kernel, orbit, spec, options.search.cut_step_deg);

  const auto pop_size = static_cast<std::size_t>(ga.population_size);
  std::vector<Individual> population(pop_size);

  // First half: fair coin per gene. Second half: a random fill density in
  // [0.1, 1.0] per individual, so sparse and dense masks are both present.
  for (std::size_t k = 0; k < pop_size; ++k) {
    Rng rng(ga.rng_seed, {kInitStream, k});
    const double density = k < pop_size / 2 ? 0.5 : rng.uniform(0.1, 1.0);
    population[k].chromosome = random_chromosome(genes, rng, density);
  }

  const auto evaluate_range = [&](std::vector<Individual>& pop, std::size_t first) {
    parallel_for(pop.size() - first, threads, [&](std::size_t offset) {
      auto& ind = pop[first + offset];
      ind.evaluation = evaluate(ind.chromosome, evaluator, spec, ga.cost);
    });
  };
  evaluate_range(population, 0);

  std::vector<std::size_t> order(pop_size);
  const auto rank = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return better(population, a, b); });
  };
  rank();

  Individual best = population[order.front()];
  SynthesisResult result;
  result.cost_history.push_back(best.evaluation.cost);

  int generation = 0;
  while (generation < ga.max_generations && !(best.evaluation.cost < ga.f_min)) {
    ++generation;
    std::vector<Individual> next(pop_size);
    const auto elites = static_cast<std::size_t>(ga.elitism_count);
    for (std::size_t e = 0; e < elites; ++e) next[e] = population[order[e]];

    for (std::size_t k = elites; k < pop_size; ++k) {
      Rng rng(ga.rng_seed, {kBreedStream, static_cast<std::uint64_t>(generation), k});
      const auto tournament = [&] {
        std::size_t winner = rng.below(pop_size);
        for (int t = 1; t < ga.tournament_size; ++t) {
          const std::size_t challenger = rng.below(pop_size);
          if (better(population, challenger, winner)) winner = challenger;
        }
        return winner;
      };
      const std::size_t a = tournament();
      const std::size_t b = tournament();
      Chromosome child = population[a].chromosome;
      if (rng.bernoulli(ga.crossover_rate)) {
        for (std::size_t g = 0; g < genes; ++g) {
          if (rng.bernoulli(0.5)) child.genes[g] = population[b].chromosome.genes[g];
        }
      }
      for (auto& g : child.genes) {
        if (rng.bernoulli(mutation)) g ^= 1;
      }
      next[k].chromosome = std::move(child);
    }
    evaluate_range(next, elites);
    population = std::move(next);
    rank();

    const Individual& leader = population[order.front()];
    if (leader.evaluation.cost < best.evaluation.cost) best = leader;
    result.cost_history.push_back(best.evaluation.cost);
    if (options.on_generation) options.on_generation(generation, best.evaluation.cost);
  }

  result.generations_used = generation;
  result.converged = best.evaluation.cost < ga.f_min;
  result.chromosome = best.chromosome;
  result.weights = WeightMatrix{expand_quadrant(best.chromosome, config), evaluator.steering()};

  auto report_kernel = options.report_kernel;
  if (!report_kernel || !(report_kernel->config() == config)) {
    report_kernel = std::make_shared<const pattern::CouplingKernel>(config, options.report.quadrature);
  }
  const auto reporter = make_evaluator(report_kernel, orbit, spec, options.report.cut_step_deg);
  const Evaluation final_eval = evaluate(result.weights.mask, reporter, spec, ga.cost);
  result.metrics = final_eval.metrics;
  result.terms = final_eval.terms;
  result.cost = final_eval.cost;
  return result;
}

}  // namespace beamsynth::ga
