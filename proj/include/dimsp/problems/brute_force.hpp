#pragma once

#include "dimsp/problems/problem.hpp"

namespace dimsp {

struct OptimumResult {
  double fitness = 0.0;
  Genome genome;
};

/// Number of genomes exhaustive search would visit for this problem.
/// Saturates at 2^63-1.
std::uint64_t search_space_size(const Problem& problem);

/// Exhaustive search over all valid genomes. Test/diagnostic oracle only;
/// throws SpaceTooLarge when the space exceeds 10^7 genomes.
OptimumResult brute_force_optimum(const Problem& problem);

}  // namespace dimsp
