#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "dimsp/rng.hpp"

namespace dimsp {

using Gene = std::int32_t;

/// A candidate solution: a flat gene sequence. Whether the sequence is read
/// as a permutation (possibly with repeated symbols) or an assignment vector
/// is decided by the problem's EncodingSpec, not by the genome itself.
struct Genome {
  std::vector<Gene> genes;

  int length() const { return static_cast<int>(genes.size()); }
  Gene operator[](int i) const { return genes[static_cast<std::size_t>(i)]; }
  bool operator==(const Genome&) const = default;
};

enum class EncodingKind { permutation, assignment };

/// Shape of a valid genome for one run. `length` is fixed across all genomes.
struct EncodingSpec {
  EncodingKind kind = EncodingKind::permutation;
  int length = 0;
  // permutation: symbol values are [0, num_symbols), each appearing exactly
  // `repeats` times (length == num_symbols * repeats).
  int num_symbols = 0;
  int repeats = 1;
  // assignment: slot labels are [0, max_label], 0 meaning unassigned.
  int max_label = 0;
};

struct Individual {
  Genome genome;
  double fitness = 0.0;
  std::int64_t birth_generation = 0;
};

struct Population {
  std::vector<Individual> members;
  int capacity = 0;

  int size() const { return static_cast<int>(members.size()); }
};

/// Uniform random valid genome: Fisher-Yates over the symbol multiset for
/// permutations, independent uniform labels for assignments.
Genome random_genome(const EncodingSpec& spec, RngStream& rng);

/// True iff the genome satisfies the encoding invariant.
bool validate(const Genome& genome, const EncodingSpec& spec);

}  // namespace dimsp
