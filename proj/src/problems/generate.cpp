#include "dimsp/problems/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dimsp/errors.hpp"
#include "dimsp/rng.hpp"

namespace dimsp {

TspInstance generate_tsp(int num_cities, std::uint64_t seed) {
  if (num_cities < 1) throw ConfigError("generate_tsp: size must be >= 1");
  RngStream rng(seed);
  std::vector<std::array<double, 2>> coords;
  coords.reserve(static_cast<std::size_t>(num_cities));
  for (int i = 0; i < num_cities; ++i) {
    coords.push_back({static_cast<double>(rng.next_below(1001)),
                      static_cast<double>(rng.next_below(1001))});
  }
  const std::string name =
      "gen_tsp_" + std::to_string(num_cities) + "_s" + std::to_string(seed);
  return TspInstance::from_coords(name, std::move(coords), /*euc2d_rounded=*/true);
}

QmkpInstance generate_qkp(int num_objects, double density, std::uint64_t seed,
                          int num_knapsacks) {
  if (num_objects < 1) throw ConfigError("generate_qkp: size must be >= 1");
  if (density < 0.0 || density > 1.0) {
    throw ConfigError("generate_qkp: density must be in [0, 1]");
  }
  RngStream rng(seed);
  QmkpInstance inst;
  inst.num_objects = num_objects;
  inst.name = "gen_qkp_" + std::to_string(num_objects) + "_d" +
              std::to_string(static_cast<int>(std::lround(density * 100))) + "_s" +
              std::to_string(seed);
  inst.weights.reserve(static_cast<std::size_t>(num_objects));
  inst.linear_profit.reserve(static_cast<std::size_t>(num_objects));
  for (int i = 0; i < num_objects; ++i) {
    inst.weights.push_back(1 + static_cast<long long>(rng.next_below(50)));
    inst.linear_profit.push_back(1 + static_cast<long long>(rng.next_below(100)));
  }
  inst.pair_profit.assign(
      static_cast<std::size_t>(num_objects) * (num_objects - 1) / 2, 0);
  for (int i = 0; i < num_objects - 1; ++i) {
    for (int j = i + 1; j < num_objects; ++j) {
      if (rng.next_double() < density) {
        inst.set_pair(i, j, 1 + static_cast<long long>(rng.next_below(100)));
      }
    }
  }
  const long long total_weight =
      std::accumulate(inst.weights.begin(), inst.weights.end(), 0LL);
  const long long max_weight = *std::max_element(inst.weights.begin(), inst.weights.end());
  inst.declared_capacity = std::max(max_weight, (total_weight * 2) / 5);
  inst.constraint_type = 0;
  inst.split_capacity(num_knapsacks);
  return inst;
}

JsspInstance generate_jssp(int num_jobs, int num_machines, std::uint64_t seed) {
  if (num_jobs < 1 || num_machines < 1) {
    throw ConfigError("generate_jssp: jobs and machines must be >= 1");
  }
  RngStream rng(seed);
  JsspInstance inst;
  inst.num_jobs = num_jobs;
  inst.num_machines = num_machines;
  inst.name = "gen_jssp_" + std::to_string(num_jobs) + "x" +
              std::to_string(num_machines) + "_s" + std::to_string(seed);
  for (int j = 0; j < num_jobs; ++j) {
    std::vector<int> order(static_cast<std::size_t>(num_machines));
    std::iota(order.begin(), order.end(), 0);
    fisher_yates_shuffle(order, rng);
    std::vector<JsspOperation> ops;
    ops.reserve(static_cast<std::size_t>(num_machines));
    for (int m : order) {
      ops.push_back(JsspOperation{m, 1 + static_cast<int>(rng.next_below(99))});
    }
    inst.jobs.push_back(std::move(ops));
  }
  return inst;
}

}  // namespace dimsp
