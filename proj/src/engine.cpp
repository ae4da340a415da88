#include "dimsp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "dimsp/errors.hpp"
#include "dimsp/spectral.hpp"

namespace dimsp {

namespace {

// Purpose tags for index-addressed RNG streams. Every random decision in a
// run draws from root.split(purpose).split(generation)[.split(island)], so
// island evolution order can never reorder draws.
constexpr std::uint64_t kStreamInit = 0;
constexpr std::uint64_t kStreamEvolve = 1;
constexpr std::uint64_t kStreamMigrate = 2;
constexpr std::uint64_t kStreamCluster = 3;
constexpr std::uint64_t kStreamAssign = 4;

void validate_operator_set(const OperatorSet& ops, const EncodingSpec& spec) {
  if (ops.tournament_k < 2 || ops.tournament_k > 7) {
    throw ConfigError("tournament_k must be in [2, 7], got " +
                      std::to_string(ops.tournament_k));
  }
  if (ops.crossover_rate < 0.0 || ops.crossover_rate > 1.0) {
    throw ConfigError("crossover_rate must be in [0, 1]");
  }
  if (ops.mutation_rate < 0.0 || ops.mutation_rate > 1.0) {
    throw ConfigError("mutation_rate must be in [0, 1]");
  }
  if (!compatible(ops, spec)) {
    throw ConfigError("operator set (crossover " + to_string(ops.crossover) +
                      ", mutation " + to_string(ops.mutation) +
                      ") is incompatible with the problem encoding");
  }
}

Population random_population(const Problem& problem, int capacity, RngStream rng) {
  Population pop;
  pop.capacity = capacity;
  pop.members.reserve(static_cast<std::size_t>(capacity));
  for (int i = 0; i < capacity; ++i) {
    pop.members.push_back(make_individual(random_genome(problem, rng), problem, 0));
  }
  return pop;
}

void flatten(const Archipelago& arch, std::vector<Individual>& out) {
  out.clear();
  for (const Island& island : arch.islands) {
    out.insert(out.end(), island.pop.members.begin(), island.pop.members.end());
  }
}

void record_generation(RunTrace& trace, const Archipelago& arch,
                       std::span<const Individual> all, Direction direction,
                       SimilarityKernel kernel) {
  GenerationRecord rec;
  rec.generation = arch.generation;
  rec.num_islands = static_cast<int>(arch.islands.size());
  rec.best_score = arch.elite.fitness;
  rec.avg_score = avg_score(all);
  rec.diversity = diversity(all, best_index(all, direction), kernel);
  rec.island_sizes.reserve(arch.islands.size());
  for (const Island& island : arch.islands) {
    rec.island_sizes.push_back(island.pop.size());
  }
  trace.records.push_back(std::move(rec));
}

void finalize_trace(RunTrace& trace, const Archipelago& arch, Direction direction) {
  std::vector<Individual> merged;
  flatten(arch, merged);
  std::vector<std::size_t> order(merged.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return better(merged[a].fitness, merged[b].fitness, direction);
  });
  const std::size_t take = std::min<std::size_t>(10, merged.size());
  trace.top_solutions.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    trace.top_solutions.push_back(merged[order[i]]);
  }
}

int migrants_per_island(double fraction, int capacity) {
  const int m = static_cast<int>(std::ceil(fraction * capacity - 1e-9));
  return std::clamp(m, 1, capacity);
}

void migrate(Archipelago& arch, const Topology& topology,
             const MigrationPolicy& policy, Direction direction,
             const RngStream& gen_stream) {
  const int n = static_cast<int>(arch.islands.size());
  std::vector<std::vector<Individual>> incoming(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const std::vector<int> neighbors = topology_neighbors(topology, i);
    if (neighbors.empty()) continue;
    const Population& pop = arch.islands[static_cast<std::size_t>(i)].pop;
    const int size = pop.size();
    const int take = std::min(migrants_per_island(policy.fraction, pop.capacity), size);
    if (take == 0) continue;

    RngStream rng = gen_stream.split(static_cast<std::uint64_t>(i));
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < take; ++j) {  // partial Fisher-Yates: distinct migrants
      const int swap_with =
          j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size - j)));
      std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(swap_with)]);
    }

    const int degree = static_cast<int>(neighbors.size());
    const int base = take / degree;
    const int remainder = take % degree;
    int cursor = 0;
    for (int t = 0; t < degree; ++t) {
      const int count = base + (t < remainder ? 1 : 0);
      for (int c = 0; c < count; ++c) {
        incoming[static_cast<std::size_t>(neighbors[static_cast<std::size_t>(t)])]
            .push_back(pop.members[static_cast<std::size_t>(idx[static_cast<std::size_t>(cursor++)])]);
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    auto& inc = incoming[static_cast<std::size_t>(i)];
    if (inc.empty()) continue;
    Population& pop = arch.islands[static_cast<std::size_t>(i)].pop;
    const int size = pop.size();
    if (static_cast<int>(inc.size()) > size) {
      // more incomers than capacity: keep the fittest
      std::stable_sort(inc.begin(), inc.end(), [&](const Individual& a, const Individual& b) {
        return better(a.fitness, b.fitness, direction);
      });
      inc.resize(static_cast<std::size_t>(size));
    }
    std::vector<int> pos(static_cast<std::size_t>(size));
    std::iota(pos.begin(), pos.end(), 0);
    std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) {
      // worst first; stable keeps lowest index first among equals
      return better(pop.members[static_cast<std::size_t>(b)].fitness,
                    pop.members[static_cast<std::size_t>(a)].fitness, direction);
    });
    for (std::size_t j = 0; j < inc.size(); ++j) {
      pop.members[static_cast<std::size_t>(pos[j])] = std::move(inc[j]);
    }
  }
}

void recluster(Archipelago& arch, const Problem& problem, const DimspParams& params,
               std::int64_t generation, const RngStream& root) {
  std::vector<Individual> merged;
  for (Island& island : arch.islands) {
    for (Individual& ind : island.pop.members) merged.push_back(std::move(ind));
  }

  const Matrix w = build_similarity_matrix(merged, params.kernel);
  RngStream cluster_rng =
      root.split(kStreamCluster).split(static_cast<std::uint64_t>(generation));
  const Clustering clustering = cluster(w, params.k_max, cluster_rng);

  std::vector<std::vector<Individual>> groups(static_cast<std::size_t>(clustering.k));
  for (std::size_t i = 0; i < merged.size(); ++i) {
    groups[static_cast<std::size_t>(clustering.labels[i])].push_back(std::move(merged[i]));
  }

  const Direction direction = problem.direction();
  RngStream assign_rng =
      root.split(kStreamAssign).split(static_cast<std::uint64_t>(generation));
  const std::vector<OperatorSet> ops =
      assign_operators(clustering.k, params.operator_pool, assign_rng);

  std::vector<Island> islands;
  islands.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& group = groups[g];
    if (static_cast<int>(group.size()) > params.island_capacity) {
      // oversized cluster: keep the best-fitness members, original order
      std::vector<std::size_t> order(group.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return better(group[a].fitness, group[b].fitness, direction);
      });
      order.resize(static_cast<std::size_t>(params.island_capacity));
      std::sort(order.begin(), order.end());
      std::vector<Individual> kept;
      kept.reserve(order.size());
      for (std::size_t idx : order) kept.push_back(std::move(group[idx]));
      group = std::move(kept);
    }
    Island island;
    island.pop.capacity = params.island_capacity;
    island.pop.members = std::move(group);
    island.ops = ops[g];
    islands.push_back(std::move(island));
  }
  arch.islands = std::move(islands);
}

}  // namespace

std::vector<int> topology_neighbors(const Topology& topology, int island) {
  const int n = topology.num_islands;
  std::vector<int> out;
  switch (topology.kind) {
    case TopologyKind::fully_connected:
      for (int j = 0; j < n; ++j) {
        if (j != island) out.push_back(j);
      }
      break;
    case TopologyKind::star_shape:
      if (island == 0) {
        for (int j = 1; j < n; ++j) out.push_back(j);
      } else {
        out.push_back(0);
      }
      break;
    case TopologyKind::ring: {
      const int prev = (island - 1 + n) % n;
      const int next = (island + 1) % n;
      if (prev != island) out.push_back(prev);
      if (next != island && next != prev) out.push_back(next);
      std::sort(out.begin(), out.end());
      break;
    }
  }
  return out;
}

const Individual& update_elite(Archipelago& archipelago,
                               std::span<const Individual> candidates,
                               Direction direction) {
  for (const Individual& candidate : candidates) {
    if (better(candidate.fitness, archipelago.elite.fitness, direction)) {
      archipelago.elite = candidate;
    }
  }
  return archipelago.elite;
}

std::string model_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::fully_connected: return "fully_connected";
    case TopologyKind::star_shape: return "star";
    case TopologyKind::ring: return "ring";
  }
  return "?";
}

RunTrace run_baseline(const Problem& problem, const BaselineParams& params) {
  if (params.island_capacity < 2) {
    throw ConfigError("island_capacity must be >= 2, got " +
                      std::to_string(params.island_capacity));
  }
  if (params.topology.num_islands < 1) {
    throw ConfigError("num_islands must be >= 1");
  }
  if (params.topology.kind != TopologyKind::fully_connected &&
      params.topology.num_islands < 2) {
    throw ConfigError("num_islands must be >= 2 for star and ring topologies");
  }
  if (params.max_generations < 1) {
    throw ConfigError("max_generations must be >= 1");
  }
  if (params.migration.interval < 1) {
    throw ConfigError("migration_interval must be >= 1");
  }
  if (!(params.migration.fraction > 0.0) || params.migration.fraction > 1.0) {
    throw ConfigError("migration_fraction must be in (0, 1]");
  }
  validate_operator_set(params.operators, problem.encoding());

  const Direction direction = problem.direction();
  const RngStream root(params.seed);

  Archipelago arch;
  for (int i = 0; i < params.topology.num_islands; ++i) {
    Island island;
    island.pop = random_population(
        problem, params.island_capacity,
        root.split(kStreamInit).split(static_cast<std::uint64_t>(i)));
    island.ops = params.operators;
    arch.islands.push_back(std::move(island));
  }

  RunTrace trace;
  trace.model = model_name(params.topology.kind);
  trace.problem = problem.kind();
  trace.config_digest = params.config_digest;
  trace.seed = params.seed;
  trace.direction = direction;

  std::vector<Individual> all;
  flatten(arch, all);
  arch.elite = all[best_index(all, direction)];
  record_generation(trace, arch, all, direction, params.kernel);

  for (std::int64_t g = 1; g <= params.max_generations; ++g) {
    arch.generation = g;
    const RngStream evolve_base =
        root.split(kStreamEvolve).split(static_cast<std::uint64_t>(g));
    for (std::size_t i = 0; i < arch.islands.size(); ++i) {
      Island& island = arch.islands[i];
      RngStream rng = evolve_base.split(static_cast<std::uint64_t>(i));
      island.pop = evolve_one_generation(island.pop, island.ops, problem, g, rng);
    }
    // Elite folds in evolved members before migration can overwrite any.
    flatten(arch, all);
    update_elite(arch, all, direction);
    if (g % params.migration.interval == 0) {
      migrate(arch, params.topology, params.migration, direction,
              root.split(kStreamMigrate).split(static_cast<std::uint64_t>(g)));
      flatten(arch, all);
    }
    record_generation(trace, arch, all, direction, params.kernel);
  }

  finalize_trace(trace, arch, direction);
  return trace;
}

RunTrace run_dimsp(const Problem& problem, const DimspParams& params) {
  if (params.island_capacity < 2) {
    throw ConfigError("island_capacity must be >= 2, got " +
                      std::to_string(params.island_capacity));
  }
  if (params.k_max < 1) throw ConfigError("k_max must be >= 1");
  if (params.epoch_interval < 1) throw ConfigError("epoch_interval must be >= 1");
  if (params.max_generations < 1) throw ConfigError("max_generations must be >= 1");
  if (params.operator_pool.empty()) {
    throw EmptyPool("run_dimsp: operator pool is empty");
  }
  for (const OperatorSet& ops : params.operator_pool) {
    validate_operator_set(ops, problem.encoding());
  }

  const Direction direction = problem.direction();
  const RngStream root(params.seed);

  // One island at generation 0.
  Archipelago arch;
  {
    Island island;
    island.pop = random_population(problem, params.island_capacity,
                                   root.split(kStreamInit).split(0));
    RngStream assign_rng = root.split(kStreamAssign).split(0);
    island.ops = assign_operators(1, params.operator_pool, assign_rng)[0];
    arch.islands.push_back(std::move(island));
  }

  RunTrace trace;
  trace.model = "dimsp";
  trace.problem = problem.kind();
  trace.config_digest = params.config_digest;
  trace.seed = params.seed;
  trace.direction = direction;

  std::vector<Individual> all;
  flatten(arch, all);
  arch.elite = all[best_index(all, direction)];
  record_generation(trace, arch, all, direction, params.kernel);

  for (std::int64_t g = 1; g <= params.max_generations; ++g) {
    arch.generation = g;
    const RngStream evolve_base =
        root.split(kStreamEvolve).split(static_cast<std::uint64_t>(g));
    for (std::size_t i = 0; i < arch.islands.size(); ++i) {
      Island& island = arch.islands[i];
      RngStream rng = evolve_base.split(static_cast<std::uint64_t>(i));
      island.pop = evolve_one_generation(island.pop, island.ops, problem, g, rng);
    }
    flatten(arch, all);
    update_elite(arch, all, direction);
    if (g % params.epoch_interval == 0) {
      recluster(arch, problem, params, g, root);
      flatten(arch, all);
    }
    record_generation(trace, arch, all, direction, params.kernel);
  }

  finalize_trace(trace, arch, direction);
  return trace;
}

}  // namespace dimsp
