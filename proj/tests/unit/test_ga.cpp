// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <memory>

#include "beamsynth/errors.hpp"
#include "beamsynth/ga.hpp"
#include "test_support.hpp"

using namespace beamsynth;
using namespace beamsynth::ga;

namespace {

geom::OrbitGeometry sat13() {
  geom::OrbitGeometry g;
  g.satellite_longitude_deg = 13.0;
  return g;
}

Chromosome filled(std::size_t genes, bool on) {
  return Chromosome{std::vector<std::uint8_t>(genes, on ? 1 : 0)};
}

// Spec whose targets are the measured metrics of `mask`.
BeamSpec self_target(const ArrayConfig& c, const ActivationMask& mask, const geom::GroundTarget& t) {
  const auto kernel = std::make_shared<const pattern::CouplingKernel>(c);
  BeamSpec probe;
  probe.target = t;
  const auto evaluator = make_evaluator(kernel, sat13(), probe, 0.01);
  const auto m = evaluator.metrics(mask);
  BeamSpec s = probe;
  s.beamwidth_az_deg = m.beamwidth_az_deg;
  s.beamwidth_el_deg = m.beamwidth_el_deg;
  s.sll_min_db = m.sll_min_db();
  s.eirp_dbw = m.eirp_dbw;
  return s;
}

}  // namespace

TEST_CASE("quadrant expansion") {
  const ArrayConfig c = test::small_array(6, 8);
  const QuadrantShape shape = quadrant_shape(c);
  CHECK(shape.rows == 3);
  CHECK(shape.cols == 4);
  CHECK(expand_quadrant(filled(12, true), c) == ActivationMask(6, 8, true));

  Chromosome corner = filled(12, false);
  corner.genes[0] = 1;
  const ActivationMask m = expand_quadrant(corner, c);
  CHECK(m.active_count() == 4);
  CHECK(m(0, 0));
  CHECK(m(5, 0));
  CHECK(m(0, 7));
  CHECK(m(5, 7));

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Chromosome ch = filled(12, false);
    for (auto& g : ch.genes) g = rng.bernoulli(0.4) ? 1 : 0;
    const ActivationMask e = expand_quadrant(ch, c);
    CHECK(e.active_count() == 4 * ch.popcount());
    CHECK(e.is_quadrant_symmetric());
  }
  CHECK_THROWS_AS(expand_quadrant(filled(11, true), c), ContractError);
}

TEST_CASE("odd arrays have no quadrant") {
  CHECK_THROWS_AS(quadrant_shape(test::small_array(5, 6)), ConfigError);
  CHECK_THROWS_AS(quadrant_shape(test::small_array(6, 7)), ConfigError);
}

TEST_CASE("self-targeted evaluation costs nothing and is repeatable") {
  const ArrayConfig c = test::small_array(12, 12);
  const geom::GroundTarget t{20.0, 5.0};
  const BeamSpec spec = self_target(c, ActivationMask(12, 12, true), t);
  const auto a = evaluate(filled(36, true), c, sat13(), spec);
  const auto b = evaluate(filled(36, true), c, sat13(), spec);
  CHECK_FALSE(a.penalized);
  CHECK(a.cost < 1e-12);
  CHECK(a.cost == b.cost);
  CHECK(a.metrics.eirp_dbw == b.metrics.eirp_dbw);
  CHECK(a.metrics.beamwidth_az_deg == b.metrics.beamwidth_az_deg);
}

TEST_CASE("an empty chromosome gets the penalty cost") {
  const ArrayConfig c = test::small_array(12, 12);
  BeamSpec spec;
  spec.target = {20.0, 5.0};
  const auto e = evaluate(filled(36, false), c, sat13(), spec);
  CHECK(e.penalized);
  CHECK(e.cost == kPenaltyCost);
}

TEST_CASE("invisible targets are rejected") {
  const ArrayConfig c = test::small_array(8, 8);
  BeamSpec spec;
  spec.target = {85.0, 13.0};
  GaConfig ga;
  ga.population_size = 4;
  ga.max_generations = 1;
  CHECK_THROWS_AS(synthesize(c, sat13(), spec, ga), VisibilityError);
}

TEST_CASE("GA configuration validation") {
  GaConfig ga;
  CHECK_NOTHROW(ga.validate());
  CHECK(ga.mutation_rate_for(324) == doctest::Approx(1.0 / 324.0));
  ga.mutation_rate = 0.05;
  CHECK(ga.mutation_rate_for(324) == 0.05);
  const auto invalid = [](auto&& change) {
    GaConfig g;
    change(g);
    CHECK_THROWS_AS(g.validate(), ConfigError);
  };
  invalid([](GaConfig& g) { g.population_size = 1; });
  invalid([](GaConfig& g) { g.crossover_rate = 1.5; });
  invalid([](GaConfig& g) { g.mutation_rate = -0.1; });
  invalid([](GaConfig& g) { g.elitism_count = g.population_size; });
  invalid([](GaConfig& g) { g.tournament_size = 0; });
  invalid([](GaConfig& g) { g.cost.weights.k2 = 0.0; });
  invalid([](GaConfig& g) { g.f_min = -1.0; });
}

TEST_CASE("self-targeted synthesis converges to the target mask") {
  const ArrayConfig c = test::small_array(8, 8);
  const BeamSpec spec = self_target(c, ActivationMask(8, 8, true), {30.0, 0.0});
  GaConfig ga;
  ga.population_size = 30;
  ga.max_generations = 60;
  ga.rng_seed = 5;
  const SynthesisResult r = synthesize(c, sat13(), spec, ga);
  CHECK(r.converged);
  CHECK(r.generations_used < 60);
  CHECK(r.cost_history.back() < ga.f_min);
  CHECK(r.weights.mask.active_count() >= 56);
}

TEST_CASE("synthesis is deterministic and independent of the worker count") {
  const ArrayConfig c = test::small_array(12, 12);
  BeamSpec spec;
  spec.target = {39.3, -5.3};
  spec.beamwidth_az_deg = 2.0;
  spec.beamwidth_el_deg = 2.0;
  spec.eirp_dbw = 45.0;
  GaConfig ga;
  ga.population_size = 16;
  ga.max_generations = 12;
  ga.rng_seed = 99;
  SynthesisOptions one;
  one.threads = 1;
  SynthesisOptions three;
  three.threads = 3;
  const SynthesisResult a = synthesize(c, sat13(), spec, ga, one);
  const SynthesisResult b = synthesize(c, sat13(), spec, ga, three);
  const SynthesisResult a2 = synthesize(c, sat13(), spec, ga, one);
  CHECK(a.chromosome == b.chromosome);
  CHECK(a.cost_history == b.cost_history);
  CHECK(a.cost == b.cost);
  CHECK(a.chromosome == a2.chromosome);
  CHECK(a.metrics.eirp_dbw == a2.metrics.eirp_dbw);

  ga.rng_seed = 100;
  const SynthesisResult other = synthesize(c, sat13(), spec, ga, one);
  CHECK(other.cost_history != a.cost_history);
}

TEST_CASE("synthesis invariants") {
  const ArrayConfig c = test::small_array(12, 12);
  BeamSpec spec;
  spec.target = {49.0, 17.4};
  spec.beamwidth_az_deg = 2.2;
  spec.beamwidth_el_deg = 2.2;
  spec.eirp_dbw = 40.0;
  GaConfig ga;
  ga.population_size = 20;
  ga.max_generations = 25;
  int callbacks = 0;
  SynthesisOptions options;
  options.on_generation = [&](int generation, double) { callbacks = generation; };
  const SynthesisResult r = synthesize(c, sat13(), spec, ga, options);
  REQUIRE(r.cost_history.size() == static_cast<std::size_t>(r.generations_used) + 1);
  CHECK(callbacks == r.generations_used);
  for (std::size_t g = 1; g < r.cost_history.size(); ++g) {
    CHECK(r.cost_history[g] <= r.cost_history[g - 1]);
  }
  CHECK(r.weights.mask.is_quadrant_symmetric());
  CHECK(r.metrics.active_chains == r.weights.mask.active_count());
  CHECK(r.metrics.active_elements % 4 == 0);
  CHECK(r.metrics.active_elements == 16 * r.metrics.active_chains);
  // Reported metrics re-derive from the weights at the report resolution.
  const auto kernel =
      std::make_shared<const pattern::CouplingKernel>(c, pattern::QuadratureSpec{}.refined());
  const auto again = evaluate(r.weights.mask, make_evaluator(kernel, sat13(), spec, 0.01), spec);
  CHECK(again.metrics.eirp_dbw == r.metrics.eirp_dbw);
  CHECK(again.metrics.beamwidth_az_deg == r.metrics.beamwidth_az_deg);
  CHECK(again.cost == r.cost);
}
