#include "dimsp/experiment.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dimsp/errors.hpp"
#include "dimsp/format.hpp"
#include "dimsp/problems/generate.hpp"
#include "dimsp/problems/io.hpp"

namespace dimsp {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& scope,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(scope.empty() ? "unknown config key '" + key + "'"
                                      : scope + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T get_number(const json& object, const std::string& key, T fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  return v.get<T>();
}

std::string get_string(const json& object, const std::string& key,
                       const std::string& fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

RunConfig::RawOperators parse_operator_set(const json& object, const std::string& scope) {
  reject_unknown_keys(object, scope,
                      {"tournament_k", "crossover", "mutation", "crossover_rate",
                       "mutation_rate"});
  RunConfig::RawOperators ops;
  ops.tournament_k = get_number<int>(object, "tournament_k", ops.tournament_k);
  ops.crossover = get_string(object, "crossover", "");
  ops.mutation = get_string(object, "mutation", "");
  ops.crossover_rate = get_number<double>(object, "crossover_rate", ops.crossover_rate);
  ops.mutation_rate = get_number<double>(object, "mutation_rate", ops.mutation_rate);
  return ops;
}

CrossoverKind parse_crossover(const std::string& name, const std::string& key) {
  if (name == "order") return CrossoverKind::order;
  if (name == "partially_mapped") return CrossoverKind::partially_mapped;
  if (name == "uniform") return CrossoverKind::uniform;
  throw ConfigError(key + ": unknown crossover '" + name + "'");
}

MutationKind parse_mutation(const std::string& name, const std::string& key) {
  if (name == "swap") return MutationKind::swap;
  if (name == "insertion") return MutationKind::insertion;
  if (name == "inversion") return MutationKind::inversion;
  if (name == "reassign") return MutationKind::reassign;
  throw ConfigError(key + ": unknown mutation '" + name + "'");
}

bool is_known_model(const std::string& model) {
  return model == "dimsp" || model == "ring" || model == "star" ||
         model == "fully_connected";
}

TopologyKind topology_kind(const std::string& model) {
  if (model == "ring") return TopologyKind::ring;
  if (model == "star") return TopologyKind::star_shape;
  if (model == "fully_connected") return TopologyKind::fully_connected;
  throw ConfigError("model: '" + model + "' is not a topology model");
}

std::string describe(const OperatorSet& ops) {
  std::ostringstream ss;
  ss << "k" << ops.tournament_k << "," << to_string(ops.crossover) << "@"
     << format_number(ops.crossover_rate) << "," << to_string(ops.mutation) << "@"
     << format_number(ops.mutation_rate);
  return ss.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(root, "",
                      {"problem", "model", "models", "num_islands", "k_max",
                       "island_capacity", "max_generations", "migration_interval",
                       "migration_fraction", "epoch_interval", "operators",
                       "operator_pool", "similarity_kernel", "seeds", "output_dir",
                       "jobs"});

  RunConfig cfg;

  if (!root.contains("problem")) throw ConfigError("problem: key is required");
  const json& problem = root.at("problem");
  if (!problem.is_object()) throw ConfigError("problem: expected an object");
  reject_unknown_keys(problem, "problem", {"kind", "instance", "generate", "knapsacks"});
  cfg.problem_kind = get_string(problem, "kind", "");
  cfg.instance_path = get_string(problem, "instance", "");
  cfg.knapsacks = get_number<int>(problem, "knapsacks", cfg.knapsacks);
  if (problem.contains("generate")) {
    const json& gen = problem.at("generate");
    if (!gen.is_object()) throw ConfigError("problem.generate: expected an object");
    reject_unknown_keys(gen, "problem.generate", {"size", "seed", "density", "machines"});
    cfg.use_generator = true;
    cfg.generate_size = get_number<int>(gen, "size", 0);
    cfg.generate_seed = get_number<std::uint64_t>(gen, "seed", 0);
    cfg.generate_density = get_number<double>(gen, "density", cfg.generate_density);
    cfg.generate_machines = get_number<int>(gen, "machines", cfg.generate_machines);
  }

  if (root.contains("model") && root.contains("models")) {
    throw ConfigError("model: give either 'model' or 'models', not both");
  }
  if (root.contains("model")) {
    cfg.models.push_back(get_string(root, "model", ""));
  } else if (root.contains("models")) {
    const json& models = root.at("models");
    if (!models.is_array()) throw ConfigError("models: expected an array of strings");
    for (const json& m : models) {
      if (!m.is_string()) throw ConfigError("models: expected an array of strings");
      cfg.models.push_back(m.get<std::string>());
    }
  }

  cfg.num_islands_set = root.contains("num_islands");
  cfg.num_islands = get_number<int>(root, "num_islands", cfg.num_islands);
  cfg.k_max_set = root.contains("k_max");
  cfg.k_max = get_number<int>(root, "k_max", cfg.k_max);
  cfg.island_capacity = get_number<int>(root, "island_capacity", cfg.island_capacity);
  cfg.max_generations =
      get_number<std::int64_t>(root, "max_generations", cfg.max_generations);
  cfg.migration_interval =
      get_number<std::int64_t>(root, "migration_interval", cfg.migration_interval);
  cfg.migration_fraction =
      get_number<double>(root, "migration_fraction", cfg.migration_fraction);
  cfg.epoch_interval = get_number<std::int64_t>(root, "epoch_interval", cfg.epoch_interval);

  if (root.contains("operators")) {
    cfg.operators = parse_operator_set(root.at("operators"), "operators");
  }
  if (root.contains("operator_pool")) {
    const json& pool = root.at("operator_pool");
    if (!pool.is_array() || pool.empty()) {
      throw ConfigError("operator_pool: expected a non-empty array");
    }
    for (const json& entry : pool) {
      cfg.operator_pool.push_back(parse_operator_set(entry, "operator_pool"));
    }
  }
  cfg.similarity_kernel = get_string(root, "similarity_kernel", cfg.similarity_kernel);

  if (root.contains("seeds")) {
    const json& seeds = root.at("seeds");
    if (!seeds.is_array() || seeds.empty()) {
      throw ConfigError("seeds: expected a non-empty array of integers");
    }
    cfg.seeds.clear();
    for (const json& s : seeds) {
      if (!s.is_number_integer() && !s.is_number_unsigned()) {
        throw ConfigError("seeds: expected integers");
      }
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  cfg.output_dir = get_string(root, "output_dir", cfg.output_dir);
  cfg.jobs = get_number<int>(root, "jobs", cfg.jobs);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate_config(const RunConfig& cfg, bool compare_mode) {
  if (cfg.problem_kind != "jssp" && cfg.problem_kind != "tsp" &&
      cfg.problem_kind != "qmkp") {
    throw ConfigError("problem.kind: must be jssp, tsp or qmkp, got '" +
                      cfg.problem_kind + "'");
  }
  if (cfg.use_generator == !cfg.instance_path.empty()) {
    throw ConfigError(
        "problem: give exactly one of 'instance' and 'generate'");
  }
  if (cfg.use_generator) {
    if (cfg.problem_kind == "jssp" && cfg.generate_machines < 1) {
      throw ConfigError("problem.generate.machines: must be >= 1");
    }
    if (cfg.generate_size < 1) throw ConfigError("problem.generate.size: must be >= 1");
    if (cfg.generate_density < 0.0 || cfg.generate_density > 1.0) {
      throw ConfigError("problem.generate.density: must be in [0, 1]");
    }
  }
  if (cfg.knapsacks < 1) throw ConfigError("problem.knapsacks: must be >= 1");

  if (compare_mode) {
    if (cfg.models.size() < 2) {
      throw ConfigError("models: compare needs at least 2 models");
    }
  } else if (cfg.models.size() != 1) {
    throw ConfigError("model: run needs exactly one model");
  }
  bool any_dimsp = false, any_baseline = false;
  for (const std::string& m : cfg.models) {
    if (!is_known_model(m)) {
      throw ConfigError("model: unknown model '" + m +
                        "' (dimsp, ring, star, fully_connected)");
    }
    (m == "dimsp" ? any_dimsp : any_baseline) = true;
  }
  for (std::size_t i = 0; i < cfg.models.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.models.size(); ++j) {
      if (cfg.models[i] == cfg.models[j]) {
        throw ConfigError("models: duplicate model '" + cfg.models[i] + "'");
      }
    }
  }
  // Model-specific keys must not cross over; a baseline run silently driven
  // by k_max (or dimsp by num_islands) would be a misconfigured comparison.
  if (cfg.num_islands_set && !any_baseline) {
    throw ConfigError("num_islands: only applies to topology models; use k_max for dimsp");
  }
  if (cfg.k_max_set && !any_dimsp) {
    throw ConfigError("k_max: only applies to dimsp; use num_islands for topology models");
  }

  if (cfg.num_islands < 1) throw ConfigError("num_islands: must be >= 1");
  if (cfg.k_max < 1) throw ConfigError("k_max: must be >= 1");
  if (cfg.island_capacity < 2) throw ConfigError("island_capacity: must be >= 2");
  if (cfg.max_generations < 1) throw ConfigError("max_generations: must be >= 1");
  if (cfg.migration_interval < 1) throw ConfigError("migration_interval: must be >= 1");
  if (!(cfg.migration_fraction > 0.0) || cfg.migration_fraction > 1.0) {
    throw ConfigError("migration_fraction: must be in (0, 1], got " +
                      format_number(cfg.migration_fraction));
  }
  if (cfg.epoch_interval < 1) throw ConfigError("epoch_interval: must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("seeds: must not be empty");
  if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");
  parse_kernel(cfg.similarity_kernel);
}

SimilarityKernel parse_kernel(const std::string& name) {
  if (name == "hamming") return SimilarityKernel::hamming;
  if (name == "fitness_gap") return SimilarityKernel::fitness_gap;
  throw ConfigError("similarity_kernel: unknown kernel '" + name +
                    "' (hamming, fitness_gap)");
}

std::unique_ptr<Problem> make_problem(const RunConfig& cfg) {
  if (!cfg.use_generator) {
    return load_problem(cfg.problem_kind, cfg.instance_path, cfg.knapsacks);
  }
  if (cfg.problem_kind == "tsp") {
    return std::make_unique<TspProblem>(generate_tsp(cfg.generate_size, cfg.generate_seed));
  }
  if (cfg.problem_kind == "jssp") {
    return std::make_unique<JsspProblem>(
        generate_jssp(cfg.generate_size, cfg.generate_machines, cfg.generate_seed));
  }
  return std::make_unique<QmkpProblem>(generate_qkp(
      cfg.generate_size, cfg.generate_density, cfg.generate_seed, cfg.knapsacks));
}

OperatorSet resolve_operators(const RunConfig::RawOperators& raw,
                              const EncodingSpec& spec) {
  OperatorSet ops;
  ops.tournament_k = raw.tournament_k;
  ops.crossover_rate = raw.crossover_rate;
  ops.mutation_rate = raw.mutation_rate;
  const bool permutation = spec.kind == EncodingKind::permutation;
  ops.crossover = raw.crossover.empty()
                      ? (permutation ? CrossoverKind::order : CrossoverKind::uniform)
                      : parse_crossover(raw.crossover, "operators.crossover");
  ops.mutation = raw.mutation.empty()
                     ? (permutation ? MutationKind::inversion : MutationKind::reassign)
                     : parse_mutation(raw.mutation, "operators.mutation");
  if (ops.tournament_k < 2 || ops.tournament_k > 7) {
    throw ConfigError("operators.tournament_k: must be in [2, 7]");
  }
  if (ops.crossover_rate < 0.0 || ops.crossover_rate > 1.0) {
    throw ConfigError("operators.crossover_rate: must be in [0, 1]");
  }
  if (ops.mutation_rate < 0.0 || ops.mutation_rate > 1.0) {
    throw ConfigError("operators.mutation_rate: must be in [0, 1]");
  }
  if (!compatible(ops, spec)) {
    throw ConfigError("operators: crossover '" + to_string(ops.crossover) +
                      "' / mutation '" + to_string(ops.mutation) +
                      "' are incompatible with this problem's encoding");
  }
  return ops;
}

std::vector<OperatorSet> resolve_pool(const RunConfig& cfg, const EncodingSpec& spec) {
  std::vector<OperatorSet> pool;
  if (cfg.operator_pool.empty()) {
    pool.push_back(resolve_operators(cfg.operators, spec));
  } else {
    for (const auto& raw : cfg.operator_pool) {
      pool.push_back(resolve_operators(raw, spec));
    }
  }
  return pool;
}

std::string config_digest(const RunConfig& cfg, const Problem& problem) {
  const std::vector<OperatorSet> pool = resolve_pool(cfg, problem.encoding());
  std::ostringstream ss;
  ss << problem.kind() << '|' << problem.name() << "|cap=" << cfg.island_capacity
     << "|gens=" << cfg.max_generations << "|kernel=" << cfg.similarity_kernel
     << "|ops=";
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i > 0) ss << '+';
    ss << describe(pool[i]);
  }
  return ss.str();
}

RunTrace execute_single(const RunConfig& cfg, const Problem& problem,
                        const std::string& model, std::uint64_t seed,
                        const std::string& digest) {
  const SimilarityKernel kernel = parse_kernel(cfg.similarity_kernel);
  const std::vector<OperatorSet> pool = resolve_pool(cfg, problem.encoding());
  if (model == "dimsp") {
    DimspParams params;
    params.operator_pool = pool;
    params.island_capacity = cfg.island_capacity;
    params.k_max = cfg.k_max;
    params.epoch_interval = cfg.epoch_interval;
    params.max_generations = cfg.max_generations;
    params.seed = seed;
    params.kernel = kernel;
    params.config_digest = digest;
    return run_dimsp(problem, params);
  }
  BaselineParams params;
  params.topology = Topology{topology_kind(model), cfg.num_islands};
  params.migration = MigrationPolicy{cfg.migration_interval, cfg.migration_fraction};
  params.operators = pool.front();
  params.island_capacity = cfg.island_capacity;
  params.max_generations = cfg.max_generations;
  params.seed = seed;
  params.kernel = kernel;
  params.config_digest = digest;
  return run_baseline(problem, params);
}

std::vector<RunTrace> execute_runs(const RunConfig& cfg, const Problem& problem) {
  const std::string digest = config_digest(cfg, problem);
  struct Job {
    std::string model;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const std::string& model : cfg.models) {
    for (std::uint64_t seed : cfg.seeds) jobs.push_back({model, seed});
  }

  std::vector<RunTrace> traces(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const int worker_count =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), jobs.size()));
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        traces[i] = execute_single(cfg, problem, jobs[i].model, jobs[i].seed, digest);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return traces;
}

std::string render_trace_csv(const RunTrace& trace) {
  std::string out = "generation,num_islands,best_score,avg_score,diversity\n";
  for (const GenerationRecord& r : trace.records) {
    out += format_number(r.generation);
    out += ',';
    out += format_number(static_cast<std::int64_t>(r.num_islands));
    out += ',';
    out += format_number(r.best_score);
    out += ',';
    out += format_number(r.avg_score);
    out += ',';
    out += format_number(r.diversity);
    out += '\n';
  }
  return out;
}

std::string render_summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "model,problem,avg_score,best_score,diversity\n";
  for (const SummaryRow& row : rows) {
    out += row.model;
    out += ',';
    out += row.problem;
    out += ',';
    out += format_number(row.avg_score);
    out += ',';
    out += format_number(row.best_score);
    out += ',';
    out += format_number(row.diversity);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  atomic_write(path, render_trace_csv(trace));
}

void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SummaryRow> rows) {
  atomic_write(path, render_summary_csv(rows));
}

std::string trace_filename(const std::string& model, std::uint64_t seed,
                           bool include_model) {
  if (include_model) return "trace_" + model + "_seed" + std::to_string(seed) + ".csv";
  return "trace_seed" + std::to_string(seed) + ".csv";
}

void run_experiment(const RunConfig& cfg, bool compare_mode) {
  validate_config(cfg, compare_mode);
  const std::unique_ptr<Problem> problem = make_problem(cfg);
  const std::filesystem::path out_dir(cfg.output_dir);
  std::filesystem::create_directories(out_dir);

  const std::vector<RunTrace> traces = execute_runs(cfg, *problem);

  json manifest;
  manifest["problem"] = {{"kind", problem->kind()}, {"name", problem->name()}};
  manifest["models"] = cfg.models;
  manifest["island_capacity"] = cfg.island_capacity;
  manifest["max_generations"] = cfg.max_generations;
  manifest["similarity_kernel"] = cfg.similarity_kernel;
  manifest["rng"] = "per-run master seed; streams split by (purpose, generation, island)";
  json runs = json::array();

  const bool include_model = compare_mode || cfg.models.size() > 1;
  for (const RunTrace& trace : traces) {
    const std::string filename = trace_filename(trace.model, trace.seed, include_model);
    write_trace_csv(out_dir / filename, trace);
    json run;
    run["model"] = trace.model;
    run["master_seed"] = trace.seed;
    run["trace"] = filename;
    run["config_digest"] = trace.config_digest;
    if (!trace.top_solutions.empty()) {
      run["best_fitness"] = trace.top_solutions.front().fitness;
    }
    runs.push_back(std::move(run));
  }
  manifest["runs"] = std::move(runs);

  const std::vector<SummaryRow> rows = summarize(traces);
  write_summary_csv(out_dir / "summary.csv", rows);
  atomic_write(out_dir / "manifest.json", manifest.dump(2) + "\n");

  std::cout << render_summary_csv(rows);
}

}  // namespace dimsp
