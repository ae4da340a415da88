#include "dimsp/genome.hpp"

#include <algorithm>

namespace dimsp {

Genome random_genome(const EncodingSpec& spec, RngStream& rng) {
  Genome g;
  g.genes.reserve(static_cast<std::size_t>(spec.length));
  if (spec.kind == EncodingKind::permutation) {
    for (int s = 0; s < spec.num_symbols; ++s) {
      for (int r = 0; r < spec.repeats; ++r) g.genes.push_back(static_cast<Gene>(s));
    }
    fisher_yates_shuffle(g.genes, rng);
  } else {
    for (int i = 0; i < spec.length; ++i) {
      g.genes.push_back(static_cast<Gene>(rng.next_below(static_cast<std::uint64_t>(spec.max_label) + 1)));
    }
  }
  return g;
}

bool validate(const Genome& genome, const EncodingSpec& spec) {
  if (genome.length() != spec.length) return false;
  if (spec.kind == EncodingKind::permutation) {
    std::vector<int> counts(static_cast<std::size_t>(spec.num_symbols), 0);
    for (Gene v : genome.genes) {
      if (v < 0 || v >= spec.num_symbols) return false;
      ++counts[static_cast<std::size_t>(v)];
    }
    return std::all_of(counts.begin(), counts.end(),
                       [&](int c) { return c == spec.repeats; });
  }
  return std::all_of(genome.genes.begin(), genome.genes.end(), [&](Gene v) {
    return v >= 0 && v <= spec.max_label;
  });
}

}  // namespace dimsp
