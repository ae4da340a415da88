#include <doctest.h>

#include <numeric>
#include <vector>

#include "dimsp/engine.hpp"
#include "dimsp/errors.hpp"
#include "dimsp/problems/generate.hpp"
#include "helpers.hpp"

using namespace dimsp;

namespace {

bool monotone(const RunTrace& trace) {
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const double prev = trace.records[i - 1].best_score;
    const double cur = trace.records[i].best_score;
    if (trace.direction == Direction::minimize ? cur > prev : cur < prev) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("topology neighbor sets") {
  CHECK(topology_neighbors({TopologyKind::ring, 3}, 0) == std::vector<int>{1, 2});
  CHECK(topology_neighbors({TopologyKind::ring, 5}, 2) == std::vector<int>{1, 3});
  CHECK(topology_neighbors({TopologyKind::ring, 2}, 0) == std::vector<int>{1});
  CHECK(topology_neighbors({TopologyKind::star_shape, 4}, 2) == std::vector<int>{0});
  CHECK(topology_neighbors({TopologyKind::star_shape, 4}, 0) == std::vector<int>{1, 2, 3});
  CHECK(topology_neighbors({TopologyKind::fully_connected, 4}, 1) ==
        std::vector<int>{0, 2, 3});
  CHECK(topology_neighbors({TopologyKind::fully_connected, 1}, 0).empty());
}

TEST_CASE("update_elite keeps the incumbent on ties") {
  Archipelago arch;
  arch.elite = test::individual_of({0}, 100.0);
  arch.elite.birth_generation = 1;

  Individual challenger = test::individual_of({1}, 90.0);
  update_elite(arch, std::vector<Individual>{challenger}, Direction::minimize);
  CHECK(arch.elite.fitness == 90.0);
  CHECK(arch.elite.genome == test::genome_of({1}));

  Individual tie = test::individual_of({2}, 90.0);
  update_elite(arch, std::vector<Individual>{tie}, Direction::minimize);
  CHECK(arch.elite.genome == test::genome_of({1}));  // incumbent retained

  update_elite(arch, std::vector<Individual>{}, Direction::minimize);
  CHECK(arch.elite.genome == test::genome_of({1}));
}

TEST_CASE("invalid run configurations are rejected") {
  const TspProblem problem(generate_tsp(10, 1));
  BaselineParams params;
  params.max_generations = 5;

  BaselineParams bad = params;
  bad.topology = {TopologyKind::star_shape, 1};
  CHECK_THROWS_AS(run_baseline(problem, bad), ConfigError);

  bad = params;
  bad.island_capacity = 1;
  CHECK_THROWS_AS(run_baseline(problem, bad), ConfigError);

  bad = params;
  bad.migration.fraction = 1.5;
  CHECK_THROWS_AS(run_baseline(problem, bad), ConfigError);

  bad = params;
  bad.operators.crossover = CrossoverKind::uniform;  // permutation problem
  CHECK_THROWS_AS(run_baseline(problem, bad), ConfigError);

  DimspParams dbad;
  dbad.operator_pool = {};
  CHECK_THROWS_AS(run_dimsp(problem, dbad), EmptyPool);
}

TEST_CASE("baseline total population is constant across generations") {
  const TspProblem problem(generate_tsp(15, 2));
  for (TopologyKind kind :
       {TopologyKind::fully_connected, TopologyKind::star_shape, TopologyKind::ring}) {
    BaselineParams params;
    params.topology = {kind, 4};
    params.island_capacity = 10;
    params.max_generations = 25;  // crosses the migration interval at 10 and 20
    params.migration.interval = 10;
    params.seed = 3;
    const RunTrace trace = run_baseline(problem, params);
    REQUIRE(trace.records.size() == 26);
    for (const GenerationRecord& rec : trace.records) {
      CHECK(rec.num_islands == 4);
      const int total = std::accumulate(rec.island_sizes.begin(), rec.island_sizes.end(), 0);
      CHECK(total == 40);
    }
    CHECK(monotone(trace));
  }
}

TEST_CASE("dimsp starts from one island and respects k_max") {
  const TspProblem problem(generate_tsp(15, 4));
  DimspParams params;
  params.operator_pool = {OperatorSet{}};
  params.island_capacity = 20;
  params.k_max = 5;
  params.epoch_interval = 10;
  params.max_generations = 60;
  params.seed = 9;
  const RunTrace trace = run_dimsp(problem, params);

  REQUIRE(trace.records.size() == 61);
  CHECK(trace.records[0].num_islands == 1);
  CHECK(trace.records[0].island_sizes == std::vector<int>{20});
  for (const GenerationRecord& rec : trace.records) {
    CHECK(rec.num_islands >= 1);
    CHECK(rec.num_islands <= params.k_max);
    for (int size : rec.island_sizes) {
      CHECK(size >= 2);
      CHECK(size <= params.island_capacity);
    }
    const int total = std::accumulate(rec.island_sizes.begin(), rec.island_sizes.end(), 0);
    CHECK(total <= params.k_max * params.island_capacity);
  }
  // islands split at an epoch breed back to capacity over following steps
  bool grew = false;
  for (const GenerationRecord& rec : trace.records) {
    const int total = std::accumulate(rec.island_sizes.begin(), rec.island_sizes.end(), 0);
    grew = grew || total > params.island_capacity;
  }
  CHECK(grew);
  CHECK(monotone(trace));
  REQUIRE_FALSE(trace.top_solutions.empty());
  CHECK(trace.top_solutions.front().fitness == trace.records.back().best_score);
}

TEST_CASE("an all-clones population collapses to one island at the epoch") {
  // a single-city instance admits exactly one genome, so every individual is
  // a clone and every epoch must merge everything into one island
  const TspProblem problem(generate_tsp(1, 0));
  DimspParams params;
  params.operator_pool = {OperatorSet{}};
  params.operator_pool[0].crossover_rate = 0.0;  // single gene, no crossover needed
  params.island_capacity = 8;
  params.k_max = 4;
  params.epoch_interval = 5;
  params.max_generations = 10;
  params.seed = 1;
  const RunTrace trace = run_dimsp(problem, params);
  CHECK(trace.records[5].num_islands == 1);
  CHECK(trace.records[10].num_islands == 1);
}

TEST_CASE("identical seeds replay bit-identical traces") {
  const TspProblem problem(generate_tsp(12, 6));

  DimspParams dparams;
  dparams.operator_pool = {OperatorSet{}};
  dparams.island_capacity = 12;
  dparams.k_max = 3;
  dparams.epoch_interval = 5;
  dparams.max_generations = 20;
  dparams.seed = 11;
  const RunTrace d1 = run_dimsp(problem, dparams);
  const RunTrace d2 = run_dimsp(problem, dparams);
  REQUIRE(d1.records.size() == d2.records.size());
  for (std::size_t i = 0; i < d1.records.size(); ++i) {
    CHECK(d1.records[i].best_score == d2.records[i].best_score);
    CHECK(d1.records[i].avg_score == d2.records[i].avg_score);
    CHECK(d1.records[i].diversity == d2.records[i].diversity);
    CHECK(d1.records[i].num_islands == d2.records[i].num_islands);
  }

  BaselineParams bparams;
  bparams.topology = {TopologyKind::ring, 3};
  bparams.island_capacity = 8;
  bparams.max_generations = 20;
  bparams.migration.interval = 5;
  bparams.seed = 11;
  const RunTrace b1 = run_baseline(problem, bparams);
  const RunTrace b2 = run_baseline(problem, bparams);
  for (std::size_t i = 0; i < b1.records.size(); ++i) {
    CHECK(b1.records[i].avg_score == b2.records[i].avg_score);
    CHECK(b1.records[i].diversity == b2.records[i].diversity);
  }

  BaselineParams other = bparams;
  other.seed = 12;
  const RunTrace b3 = run_baseline(problem, other);
  bool all_equal = true;
  for (std::size_t i = 0; i < b1.records.size(); ++i) {
    all_equal = all_equal && b1.records[i].avg_score == b3.records[i].avg_score;
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("elite trace is monotone on a maximization problem") {
  const QmkpProblem problem(generate_qkp(20, 0.4, 5, 2));
  DimspParams params;
  params.operator_pool = {OperatorSet{}};
  params.operator_pool[0].crossover = CrossoverKind::uniform;
  params.operator_pool[0].mutation = MutationKind::reassign;
  params.island_capacity = 16;
  params.k_max = 4;
  params.epoch_interval = 10;
  params.max_generations = 40;
  params.seed = 2;
  const RunTrace trace = run_dimsp(problem, params);
  CHECK(monotone(trace));
  CHECK(trace.records.back().best_score >= trace.records.front().best_score);
}
