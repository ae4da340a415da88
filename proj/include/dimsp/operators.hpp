#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimsp/genome.hpp"
#include "dimsp/problems/problem.hpp"
#include "dimsp/rng.hpp"

namespace dimsp {

enum class CrossoverKind { order, partially_mapped, uniform };
enum class MutationKind { swap, insertion, inversion, reassign };

/// Operator bundle an island evolves with. Crossover/mutation kinds must be
/// compatible with the run's encoding (see compatible()).
struct OperatorSet {
  int tournament_k = 3;  // 2..7
  CrossoverKind crossover = CrossoverKind::order;
  MutationKind mutation = MutationKind::inversion;
  double crossover_rate = 0.8;
  double mutation_rate = 0.2;
};

/// Whether every operator in the set is applicable to the encoding.
/// partially_mapped requires distinct genes (repeats == 1); uniform/reassign
/// are assignment-only; the rest are permutation-only.
bool compatible(const OperatorSet& ops, const EncodingSpec& spec);

Genome crossover(const Genome& a, const Genome& b, CrossoverKind kind, RngStream& rng);
void mutate(Genome& genome, MutationKind kind, const EncodingSpec& spec, RngStream& rng);

/// One generational step: keep the single best member, fill the rest with
/// evaluated offspring from tournament selection, probabilistic crossover and
/// probabilistic mutation. Output size equals input size once the population
/// is at capacity; an under-capacity population (a freshly split island)
/// breeds back up to capacity.
Population evolve_one_generation(const Population& pop, const OperatorSet& ops,
                                 const Problem& problem, std::int64_t generation,
                                 RngStream& rng);

/// One operator set per island, drawn uniformly with replacement from the
/// pool in island-index order.
std::vector<OperatorSet> assign_operators(int num_islands,
                                          const std::vector<OperatorSet>& pool,
                                          RngStream& rng);

std::string to_string(CrossoverKind kind);
std::string to_string(MutationKind kind);

}  // namespace dimsp
