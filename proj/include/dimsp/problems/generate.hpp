#pragma once

#include <cstdint>

#include "dimsp/problems/jssp.hpp"
#include "dimsp/problems/qmkp.hpp"
#include "dimsp/problems/tsp.hpp"

namespace dimsp {

// Seeded synthetic instances for experiments at configurable scale. The same
// (size, seed) always yields the same instance.

/// Cities on integer coordinates in [0, 1000]^2, TSPLIB EUC_2D rounding.
TspInstance generate_tsp(int num_cities, std::uint64_t seed);

/// Quadratic knapsack with the given density of non-zero pairwise profits.
/// Weights in [1, 50], profits in [1, 100], capacity at ~40% of total weight.
QmkpInstance generate_qkp(int num_objects, double density, std::uint64_t seed,
                          int num_knapsacks);

/// Random machine orders, processing times in [1, 99].
JsspInstance generate_jssp(int num_jobs, int num_machines, std::uint64_t seed);

}  // namespace dimsp
