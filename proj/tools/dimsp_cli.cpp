#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dimsp/errors.hpp"
#include "dimsp/experiment.hpp"
#include "dimsp/format.hpp"
#include "dimsp/problems/brute_force.hpp"
#include "dimsp/problems/generate.hpp"
#include "dimsp/problems/io.hpp"

namespace {

struct Overrides {
  std::string output_dir;
  int jobs = 0;
  std::string seeds;
  std::int64_t max_generations = 0;
  int island_capacity = 0;
  std::int64_t migration_interval = 0;
  double migration_fraction = 0.0;
  std::int64_t epoch_interval = 0;
  int num_islands = 0;
  int k_max = 0;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      seeds.push_back(std::stoull(token));
    } catch (const std::exception&) {
      throw dimsp::ConfigError("seeds: '" + token + "' is not an integer");
    }
  }
  if (seeds.empty()) throw dimsp::ConfigError("seeds: empty seed list");
  return seeds;
}

void add_override_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--out", ov.output_dir, "Output directory (overrides output_dir)");
  cmd->add_option("--jobs", ov.jobs, "Max parallel runs (overrides jobs)");
  cmd->add_option("--seeds", ov.seeds, "Comma-separated master seeds (overrides seeds)");
  cmd->add_option("--max-generations", ov.max_generations, "Overrides max_generations");
  cmd->add_option("--island-capacity", ov.island_capacity, "Overrides island_capacity");
  cmd->add_option("--migration-interval", ov.migration_interval,
                  "Overrides migration_interval");
  cmd->add_option("--migration-fraction", ov.migration_fraction,
                  "Overrides migration_fraction");
  cmd->add_option("--epoch-interval", ov.epoch_interval, "Overrides epoch_interval");
  cmd->add_option("--num-islands", ov.num_islands, "Overrides num_islands");
  cmd->add_option("--k-max", ov.k_max, "Overrides k_max");
}

void apply_overrides(dimsp::RunConfig& cfg, const Overrides& ov) {
  if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
  if (ov.jobs > 0) cfg.jobs = ov.jobs;
  if (!ov.seeds.empty()) cfg.seeds = parse_seed_list(ov.seeds);
  if (ov.max_generations > 0) cfg.max_generations = ov.max_generations;
  if (ov.island_capacity > 0) cfg.island_capacity = ov.island_capacity;
  if (ov.migration_interval > 0) cfg.migration_interval = ov.migration_interval;
  if (ov.migration_fraction > 0.0) cfg.migration_fraction = ov.migration_fraction;
  if (ov.epoch_interval > 0) cfg.epoch_interval = ov.epoch_interval;
  if (ov.num_islands > 0) {
    cfg.num_islands = ov.num_islands;
    cfg.num_islands_set = true;
  }
  if (ov.k_max > 0) {
    cfg.k_max = ov.k_max;
    cfg.k_max_set = true;
  }
}

int run_oracle(const std::string& kind, const std::string& instance, int knapsacks) {
  const std::unique_ptr<dimsp::Problem> problem =
      dimsp::load_problem(kind, instance, knapsacks);
  const dimsp::OptimumResult best = dimsp::brute_force_optimum(*problem);
  std::cout << dimsp::format_number(best.fitness) << '\n';
  for (std::size_t i = 0; i < best.genome.genes.size(); ++i) {
    if (i > 0) std::cout << ' ';
    std::cout << best.genome.genes[i];
  }
  std::cout << '\n';
  return 0;
}

int run_gen_instance(const std::string& kind, int size, std::uint64_t seed,
                     double density, int machines, const std::string& out) {
  if (out.empty()) throw dimsp::ConfigError("--out: output file is required");
  if (kind == "tsp") {
    dimsp::write_tsplib_file(out, dimsp::generate_tsp(size, seed));
  } else if (kind == "qkp") {
    dimsp::write_qkp_file(out, dimsp::generate_qkp(size, density, seed, 1));
  } else if (kind == "jssp") {
    dimsp::write_jssp_file(out, dimsp::generate_jssp(size, machines, seed));
  } else {
    throw dimsp::ConfigError("--kind: unknown instance kind '" + kind +
                             "' (tsp, qkp, jssp)");
  }
  std::cout << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Island-model genetic algorithm runner with a spectral-clustering "
               "migration policy and fixed-topology baselines"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  CLI::App* run = app.add_subcommand("run", "Run one model, one trace CSV per seed");
  run->add_option("--config", config_path, "JSON config file")->required();
  add_override_options(run, overrides);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run several models on the same problem and seeds");
  compare->add_option("--config", config_path, "JSON config file")->required();
  add_override_options(compare, overrides);

  std::string oracle_kind, oracle_instance;
  int oracle_knapsacks = 3;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Print the exhaustive-search optimum of a small instance");
  oracle->add_option("--kind", oracle_kind, "jssp | tsp | qmkp")->required();
  oracle->add_option("--instance", oracle_instance, "Instance file")->required();
  oracle->add_option("--knapsacks", oracle_knapsacks, "Knapsack count (qmkp)");

  std::string gen_kind, gen_out;
  int gen_size = 0, gen_machines = 5;
  std::uint64_t gen_seed = 0;
  double gen_density = 0.5;
  CLI::App* gen = app.add_subcommand("gen-instance", "Write a seeded synthetic instance");
  gen->add_option("--kind", gen_kind, "tsp | qkp | jssp")->required();
  gen->add_option("--size", gen_size, "Cities / objects / jobs")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--density", gen_density, "Quadratic profit density (qkp)");
  gen->add_option("--machines", gen_machines, "Machine count (jssp)");
  gen->add_option("--out", gen_out, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed() || compare->parsed()) {
      dimsp::RunConfig cfg = dimsp::load_config(config_path);
      apply_overrides(cfg, overrides);
      dimsp::run_experiment(cfg, compare->parsed());
      return 0;
    }
    if (oracle->parsed()) {
      return run_oracle(oracle_kind, oracle_instance, oracle_knapsacks);
    }
    if (gen->parsed()) {
      return run_gen_instance(gen_kind, gen_size, gen_seed, gen_density, gen_machines,
                              gen_out);
    }
  } catch (const dimsp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dimsp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dimsp::UnsupportedEdgeWeightType& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dimsp::SpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dimsp::EmptyPool& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
