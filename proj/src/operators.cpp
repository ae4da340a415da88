#include "dimsp/operators.hpp"

#include <algorithm>
#include <utility>

#include "dimsp/errors.hpp"

namespace dimsp {

namespace {

// Two distinct positions in [0, n), first draw uniform, second uniform over
// the rest.
std::pair<int, int> two_distinct(int n, RngStream& rng) {
  const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n) - 1));
  if (j >= i) ++j;
  return {i, j};
}

Genome order_crossover(const Genome& a, const Genome& b, RngStream& rng) {
  const int n = a.length();
  int lo = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  int hi = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  if (lo > hi) std::swap(lo, hi);

  // Copy a's segment, then fill the remaining positions with b's genes in
  // b-order starting after the segment. Bookkeeping is by gene multiplicity
  // so repeated symbols are handled.
  std::vector<int> remaining;
  for (Gene g : a.genes) {
    if (static_cast<std::size_t>(g) >= remaining.size()) {
      remaining.resize(static_cast<std::size_t>(g) + 1, 0);
    }
    ++remaining[static_cast<std::size_t>(g)];
  }
  Genome child;
  child.genes.assign(static_cast<std::size_t>(n), Gene{-1});
  for (int i = lo; i <= hi; ++i) {
    child.genes[static_cast<std::size_t>(i)] = a[i];
    --remaining[static_cast<std::size_t>(a[i])];
  }
  int write = (hi + 1) % n;
  for (int step = 0; step < n && write != lo; ++step) {
    const Gene g = b[(hi + 1 + step) % n];
    if (remaining[static_cast<std::size_t>(g)] > 0) {
      --remaining[static_cast<std::size_t>(g)];
      child.genes[static_cast<std::size_t>(write)] = g;
      write = (write + 1) % n;
      if (write == lo) break;
    }
  }
  return child;
}

Genome partially_mapped_crossover(const Genome& a, const Genome& b, RngStream& rng) {
  const int n = a.length();
  int lo = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  int hi = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  if (lo > hi) std::swap(lo, hi);

  Genome child;
  child.genes.assign(static_cast<std::size_t>(n), Gene{-1});
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = lo; i <= hi; ++i) {
    child.genes[static_cast<std::size_t>(i)] = a[i];
    used[static_cast<std::size_t>(a[i])] = true;
  }
  // Position of each gene value in a, valid because genes are distinct.
  std::vector<int> pos_in_a(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) pos_in_a[static_cast<std::size_t>(a[i])] = i;

  for (int i = 0; i < n; ++i) {
    if (i >= lo && i <= hi) continue;
    Gene g = b[i];
    while (used[static_cast<std::size_t>(g)]) {
      g = b[pos_in_a[static_cast<std::size_t>(g)]];
    }
    child.genes[static_cast<std::size_t>(i)] = g;
    used[static_cast<std::size_t>(g)] = true;
  }
  return child;
}

Genome uniform_crossover(const Genome& a, const Genome& b, RngStream& rng) {
  const int n = a.length();
  Genome child;
  child.genes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    child.genes.push_back((rng.next_u64() & 1u) ? b[i] : a[i]);
  }
  return child;
}

int tournament_select(const Population& pop, int k, Direction direction,
                      RngStream& rng) {
  const std::uint64_t n = static_cast<std::uint64_t>(pop.size());
  int best = static_cast<int>(rng.next_below(n));
  for (int round = 1; round < k; ++round) {
    const int challenger = static_cast<int>(rng.next_below(n));
    if (better(pop.members[static_cast<std::size_t>(challenger)].fitness,
               pop.members[static_cast<std::size_t>(best)].fitness, direction)) {
      best = challenger;
    }
  }
  return best;
}

}  // namespace

bool compatible(const OperatorSet& ops, const EncodingSpec& spec) {
  if (spec.kind == EncodingKind::permutation) {
    if (ops.crossover == CrossoverKind::uniform) return false;
    if (ops.crossover == CrossoverKind::partially_mapped && spec.repeats != 1) return false;
    return ops.mutation != MutationKind::reassign;
  }
  return ops.crossover == CrossoverKind::uniform && ops.mutation == MutationKind::reassign;
}

Genome crossover(const Genome& a, const Genome& b, CrossoverKind kind, RngStream& rng) {
  if (a.length() != b.length()) {
    throw LengthMismatch("crossover: parent lengths differ");
  }
  switch (kind) {
    case CrossoverKind::order:
      return order_crossover(a, b, rng);
    case CrossoverKind::partially_mapped:
      return partially_mapped_crossover(a, b, rng);
    case CrossoverKind::uniform:
      return uniform_crossover(a, b, rng);
  }
  throw Error("crossover: unknown kind");
}

void mutate(Genome& genome, MutationKind kind, const EncodingSpec& spec, RngStream& rng) {
  const int n = genome.length();
  if (n < 2 && kind != MutationKind::reassign) return;
  switch (kind) {
    case MutationKind::swap: {
      const auto [i, j] = two_distinct(n, rng);
      std::swap(genome.genes[static_cast<std::size_t>(i)],
                genome.genes[static_cast<std::size_t>(j)]);
      return;
    }
    case MutationKind::insertion: {
      const auto [from, to] = two_distinct(n, rng);
      const Gene g = genome.genes[static_cast<std::size_t>(from)];
      genome.genes.erase(genome.genes.begin() + from);
      genome.genes.insert(genome.genes.begin() + to, g);
      return;
    }
    case MutationKind::inversion: {
      auto [lo, hi] = two_distinct(n, rng);
      if (lo > hi) std::swap(lo, hi);
      std::reverse(genome.genes.begin() + lo, genome.genes.begin() + hi + 1);
      return;
    }
    case MutationKind::reassign: {
      const int slot = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      genome.genes[static_cast<std::size_t>(slot)] = static_cast<Gene>(
          rng.next_below(static_cast<std::uint64_t>(spec.max_label) + 1));
      return;
    }
  }
}

Population evolve_one_generation(const Population& pop, const OperatorSet& ops,
                                 const Problem& problem, std::int64_t generation,
                                 RngStream& rng) {
  if (pop.size() < 2 && ops.crossover_rate > 0.0) {
    throw PopulationTooSmall("evolve_one_generation: population of " +
                             std::to_string(pop.size()) +
                             " cannot perform crossover");
  }
  const Direction direction = problem.direction();
  const EncodingSpec& spec = problem.encoding();

  int elite = 0;
  for (int i = 1; i < pop.size(); ++i) {
    if (better(pop.members[static_cast<std::size_t>(i)].fitness,
               pop.members[static_cast<std::size_t>(elite)].fitness, direction)) {
      elite = i;
    }
  }

  Population out;
  out.capacity = pop.capacity;
  const int target = std::max(pop.size(), pop.capacity);
  out.members.reserve(static_cast<std::size_t>(target));
  out.members.push_back(pop.members[static_cast<std::size_t>(elite)]);
  while (out.size() < target) {
    const int p1 = tournament_select(pop, ops.tournament_k, direction, rng);
    const int p2 = tournament_select(pop, ops.tournament_k, direction, rng);
    Genome child;
    if (rng.next_double() < ops.crossover_rate) {
      child = crossover(pop.members[static_cast<std::size_t>(p1)].genome,
                        pop.members[static_cast<std::size_t>(p2)].genome,
                        ops.crossover, rng);
    } else {
      child = pop.members[static_cast<std::size_t>(p1)].genome;
    }
    if (rng.next_double() < ops.mutation_rate) {
      mutate(child, ops.mutation, spec, rng);
    }
    out.members.push_back(make_individual(std::move(child), problem, generation));
  }
  return out;
}

std::vector<OperatorSet> assign_operators(int num_islands,
                                          const std::vector<OperatorSet>& pool,
                                          RngStream& rng) {
  if (pool.empty()) throw EmptyPool("assign_operators: empty operator pool");
  std::vector<OperatorSet> out;
  out.reserve(static_cast<std::size_t>(num_islands));
  for (int i = 0; i < num_islands; ++i) {
    out.push_back(pool[rng.next_below(pool.size())]);
  }
  return out;
}

std::string to_string(CrossoverKind kind) {
  switch (kind) {
    case CrossoverKind::order: return "order";
    case CrossoverKind::partially_mapped: return "partially_mapped";
    case CrossoverKind::uniform: return "uniform";
  }
  return "?";
}

std::string to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::swap: return "swap";
    case MutationKind::insertion: return "insertion";
    case MutationKind::inversion: return "inversion";
    case MutationKind::reassign: return "reassign";
  }
  return "?";
}

}  // namespace dimsp
