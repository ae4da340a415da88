#include <doctest.h>

#include <string>

#include "dimsp/errors.hpp"
#include "dimsp/experiment.hpp"
#include "dimsp/problems/generate.hpp"

using namespace dimsp;

namespace {

std::string contains_key(const ConfigError& e, const std::string& key) {
  return std::string(e.what()).find(key) != std::string::npos ? "" : e.what();
}

RunConfig minimal_tsp_config(const std::string& model) {
  RunConfig cfg = parse_config(R"({
    "problem": {"kind": "tsp", "generate": {"size": 10, "seed": 1}},
    "model": ")" + model + R"(",
    "island_capacity": 10,
    "max_generations": 5,
    "seeds": [1]
  })");
  return cfg;
}

}  // namespace

TEST_CASE("defaults mirror the standard experiment setup") {
  const RunConfig cfg = parse_config(R"({
    "problem": {"kind": "tsp", "generate": {"size": 10, "seed": 1}},
    "model": "dimsp"
  })");
  CHECK(cfg.num_islands == 10);
  CHECK(cfg.k_max == 10);
  CHECK(cfg.island_capacity == 200);
  CHECK(cfg.max_generations == 2000);
  CHECK(cfg.migration_interval == 50);
  CHECK(cfg.migration_fraction == 0.05);
  CHECK(cfg.epoch_interval == 50);
  CHECK(cfg.operators.tournament_k == 3);
  CHECK(cfg.operators.crossover_rate == 0.8);
  CHECK(cfg.operators.mutation_rate == 0.2);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(cfg.jobs == 1);
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    parse_config(R"({"problem": {"kind": "tsp"}, "model": "dimsp", "migration_freq": 9})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_key(e, "migration_freq") == "");
  }
}

TEST_CASE("out-of-range migration fraction names the key") {
  RunConfig cfg = minimal_tsp_config("ring");
  cfg.migration_fraction = 1.5;
  try {
    validate_config(cfg, false);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_key(e, "migration_fraction") == "");
  }
}

TEST_CASE("model-specific keys must not cross models") {
  RunConfig dimsp_with_islands = minimal_tsp_config("dimsp");
  dimsp_with_islands.num_islands = 4;
  dimsp_with_islands.num_islands_set = true;
  CHECK_THROWS_AS(validate_config(dimsp_with_islands, false), ConfigError);

  RunConfig ring_with_kmax = minimal_tsp_config("ring");
  ring_with_kmax.k_max = 4;
  ring_with_kmax.k_max_set = true;
  CHECK_THROWS_AS(validate_config(ring_with_kmax, false), ConfigError);

  // a comparison spanning both families may set both
  RunConfig both = minimal_tsp_config("dimsp");
  both.models = {"dimsp", "ring"};
  both.num_islands_set = true;
  both.k_max_set = true;
  CHECK_NOTHROW(validate_config(both, true));
}

TEST_CASE("compare requires at least two distinct models") {
  RunConfig one = minimal_tsp_config("dimsp");
  CHECK_THROWS_AS(validate_config(one, true), ConfigError);
  RunConfig dup = minimal_tsp_config("dimsp");
  dup.models = {"ring", "ring"};
  CHECK_THROWS_AS(validate_config(dup, false), ConfigError);
}

TEST_CASE("unknown model and kernel are rejected") {
  RunConfig cfg = minimal_tsp_config("mesh");
  CHECK_THROWS_AS(validate_config(cfg, false), ConfigError);
  RunConfig cfg2 = minimal_tsp_config("ring");
  cfg2.similarity_kernel = "cosine";
  CHECK_THROWS_AS(validate_config(cfg2, false), ConfigError);
}

TEST_CASE("operator defaults resolve per encoding") {
  EncodingSpec perm;
  perm.kind = EncodingKind::permutation;
  perm.num_symbols = 5;
  perm.repeats = 1;
  perm.length = 5;
  RunConfig::RawOperators raw;
  const OperatorSet for_perm = resolve_operators(raw, perm);
  CHECK(for_perm.crossover == CrossoverKind::order);
  CHECK(for_perm.mutation == MutationKind::inversion);

  EncodingSpec assign;
  assign.kind = EncodingKind::assignment;
  assign.length = 5;
  assign.max_label = 2;
  const OperatorSet for_assign = resolve_operators(raw, assign);
  CHECK(for_assign.crossover == CrossoverKind::uniform);
  CHECK(for_assign.mutation == MutationKind::reassign);

  RunConfig::RawOperators bad;
  bad.crossover = "uniform";
  try {
    resolve_operators(bad, perm);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_key(e, "operators") == "");
  }

  RunConfig::RawOperators pmx;
  pmx.crossover = "partially_mapped";
  CHECK_NOTHROW(resolve_operators(pmx, perm));
  EncodingSpec repeated = perm;
  repeated.repeats = 2;
  repeated.length = 10;
  CHECK_THROWS_AS(resolve_operators(pmx, repeated), ConfigError);
}

TEST_CASE("config digest is shared across models but tracks the problem") {
  RunConfig cfg = minimal_tsp_config("ring");
  const auto problem = make_problem(cfg);
  const std::string digest = config_digest(cfg, *problem);
  RunConfig other = cfg;
  other.models = {"dimsp"};
  CHECK(config_digest(other, *problem) == digest);

  RunConfig bigger = cfg;
  bigger.island_capacity = 99;
  CHECK(config_digest(bigger, *problem) != digest);
}

TEST_CASE("generator and instance are mutually exclusive") {
  RunConfig cfg = minimal_tsp_config("ring");
  cfg.instance_path = "also_a_file.tsp";
  CHECK_THROWS_AS(validate_config(cfg, false), ConfigError);
  RunConfig neither = minimal_tsp_config("ring");
  neither.use_generator = false;
  CHECK_THROWS_AS(validate_config(neither, false), ConfigError);
}

TEST_CASE("operator pool entries parse from config") {
  const RunConfig cfg = parse_config(R"({
    "problem": {"kind": "tsp", "generate": {"size": 8, "seed": 2}},
    "model": "dimsp",
    "operator_pool": [
      {"mutation": "swap"},
      {"mutation": "insertion", "crossover_rate": 0.6}
    ]
  })");
  REQUIRE(cfg.operator_pool.size() == 2);
  const auto problem = make_problem(cfg);
  const std::vector<OperatorSet> pool = resolve_pool(cfg, problem->encoding());
  CHECK(pool[0].mutation == MutationKind::swap);
  CHECK(pool[1].mutation == MutationKind::insertion);
  CHECK(pool[1].crossover_rate == 0.6);
}
