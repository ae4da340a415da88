#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimsp/genome.hpp"
#include "dimsp/metrics.hpp"
#include "dimsp/operators.hpp"
#include "dimsp/problems/problem.hpp"
#include "dimsp/rng.hpp"
#include "dimsp/similarity.hpp"

namespace dimsp {

enum class TopologyKind { fully_connected, star_shape, ring };

struct Topology {
  TopologyKind kind = TopologyKind::fully_connected;
  int num_islands = 10;
};

/// Neighbor islands of `island`, ascending. Star designates island 0 as the
/// hub; ring connects i to (i +- 1) mod n.
std::vector<int> topology_neighbors(const Topology& topology, int island);

/// Periodic copy-based migration: every `interval` generations each island
/// sends ceil(fraction * capacity) uniformly chosen individuals, split as
/// evenly as possible across its neighbors (remainder to the lowest-index
/// neighbors); recipients replace their worst members.
struct MigrationPolicy {
  std::int64_t interval = 50;
  double fraction = 0.05;
};

struct Island {
  Population pop;
  OperatorSet ops;
};

struct Archipelago {
  std::vector<Island> islands;
  Individual elite;  // best individual ever evaluated this run
  std::int64_t generation = 0;
};

/// Folds candidates into the elite archive; ties keep the incumbent.
const Individual& update_elite(Archipelago& archipelago,
                               std::span<const Individual> candidates,
                               Direction direction);

struct BaselineParams {
  Topology topology;
  MigrationPolicy migration;
  OperatorSet operators;
  int island_capacity = 200;
  std::int64_t max_generations = 2000;
  std::uint64_t seed = 0;
  SimilarityKernel kernel = SimilarityKernel::hamming;
  std::string config_digest;  // identity fingerprint copied into the trace
};

/// Fixed-topology island model: islands evolve independently and exchange
/// individuals along the topology at every migration interval.
RunTrace run_baseline(const Problem& problem, const BaselineParams& params);

struct DimspParams {
  std::vector<OperatorSet> operator_pool;
  int island_capacity = 200;
  int k_max = 10;
  std::int64_t epoch_interval = 50;
  std::int64_t max_generations = 2000;
  std::uint64_t seed = 0;
  SimilarityKernel kernel = SimilarityKernel::hamming;
  std::string config_digest;
};

/// Dynamic island model: starts from a single island; at every epoch all
/// sub-populations merge and are re-partitioned by spectral clustering of
/// their pairwise similarities, with operators re-drawn from the pool. The
/// cluster count (capped at k_max) becomes the new island count.
RunTrace run_dimsp(const Problem& problem, const DimspParams& params);

std::string model_name(TopologyKind kind);

}  // namespace dimsp
