#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimsp/engine.hpp"
#include "dimsp/metrics.hpp"
#include "dimsp/problems/problem.hpp"

namespace dimsp {

/// Declarative description of an experiment, loaded from a JSON config file
/// (key set documented in docs/file_formats.md) plus CLI flag overrides.
/// Defaults: 10 islands / k_max 10, island capacity 200, 2000 generations,
/// crossover 0.8, mutation 0.2, migration every 50 generations at fraction
/// 0.05, seeds 1..10.
struct RunConfig {
  struct RawOperators {
    int tournament_k = 3;
    std::string crossover;  // empty: encoding default (order / uniform)
    std::string mutation;   // empty: encoding default (inversion / reassign)
    double crossover_rate = 0.8;
    double mutation_rate = 0.2;
  };

  // problem
  std::string problem_kind;
  std::string instance_path;
  bool use_generator = false;
  int generate_size = 0;
  int generate_machines = 5;  // jssp generator only
  double generate_density = 0.5;
  std::uint64_t generate_seed = 0;
  int knapsacks = 3;

  // models
  std::vector<std::string> models;  // dimsp | ring | star | fully_connected
  int num_islands = 10;
  bool num_islands_set = false;  // baseline-only key; setting it for dimsp is an error
  int k_max = 10;
  bool k_max_set = false;        // dimsp-only key

  // evolution
  int island_capacity = 200;
  std::int64_t max_generations = 2000;
  std::int64_t migration_interval = 50;
  double migration_fraction = 0.05;
  std::int64_t epoch_interval = 50;
  RawOperators operators;
  std::vector<RawOperators> operator_pool;  // empty: {operators}
  std::string similarity_kernel = "hamming";

  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string output_dir = ".";
  int jobs = 1;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Structural validation; `compare_mode` additionally requires >= 2 models.
/// Violations raise ConfigError naming the offending key.
void validate_config(const RunConfig& config, bool compare_mode);

std::unique_ptr<Problem> make_problem(const RunConfig& config);

/// Resolves encoding-dependent defaults and checks operator/encoding
/// compatibility.
OperatorSet resolve_operators(const RunConfig::RawOperators& raw,
                              const EncodingSpec& spec);
std::vector<OperatorSet> resolve_pool(const RunConfig& config, const EncodingSpec& spec);

SimilarityKernel parse_kernel(const std::string& name);

/// Fingerprint of everything shared across models and seeds; traces with
/// different digests refuse to be summarized together.
std::string config_digest(const RunConfig& config, const Problem& problem);

/// Runs every configured (model, seed) pair; up to config.jobs run in
/// parallel. Traces are ordered model-major then seed-minor and are
/// bit-identical regardless of the jobs setting.
std::vector<RunTrace> execute_runs(const RunConfig& config, const Problem& problem);

RunTrace execute_single(const RunConfig& config, const Problem& problem,
                        const std::string& model, std::uint64_t seed,
                        const std::string& digest);

// CSV outputs. Files are written to a temp name and renamed into place.
// Trace schema: generation,num_islands,best_score,avg_score,diversity
// Summary schema: model,problem,avg_score,best_score,diversity
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);
void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SummaryRow> rows);
std::string render_trace_csv(const RunTrace& trace);
std::string render_summary_csv(std::span<const SummaryRow> rows);

std::string trace_filename(const std::string& model, std::uint64_t seed,
                           bool include_model);

/// Full run/compare pipeline: validate, run, write per-seed traces, write
/// summary.csv and manifest.json under config.output_dir.
void run_experiment(const RunConfig& config, bool compare_mode);

}  // namespace dimsp
