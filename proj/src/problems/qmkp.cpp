#include "dimsp/problems/qmkp.hpp"

#include <utility>

#include "dimsp/errors.hpp"

namespace dimsp {

namespace {

std::size_t triangle_index(int i, int j, int n) {
  // i < j; row-major strict upper triangle
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
         static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

}  // namespace

long long QmkpInstance::pair(int i, int j) const {
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  return pair_profit[triangle_index(i, j, num_objects)];
}

void QmkpInstance::set_pair(int i, int j, long long value) {
  if (i > j) std::swap(i, j);
  pair_profit[triangle_index(i, j, num_objects)] = value;
}

void QmkpInstance::split_capacity(int k) {
  num_knapsacks = k;
  capacities.assign(static_cast<std::size_t>(k), declared_capacity / k);
  const long long remainder = declared_capacity % k;
  for (long long i = 0; i < remainder; ++i) ++capacities[static_cast<std::size_t>(i)];
}

double QmkpInstance::density() const {
  if (num_objects < 2) return 0.0;
  std::size_t nonzero = 0;
  for (long long p : pair_profit) {
    if (p != 0) ++nonzero;
  }
  return static_cast<double>(nonzero) / static_cast<double>(pair_profit.size());
}

double qmkp_profit(const QmkpInstance& instance, Genome& genome) {
  const int n = instance.num_objects;
  const int num_knapsacks = instance.num_knapsacks;
  if (genome.length() != n) {
    throw InvalidGenome("qmkp_profit: genome length " +
                        std::to_string(genome.length()) + ", expected " +
                        std::to_string(n));
  }
  for (Gene label : genome.genes) {
    if (label < 0 || label > num_knapsacks) {
      throw InvalidGenome("qmkp_profit: slot label " + std::to_string(label) +
                          " outside [0, " + std::to_string(num_knapsacks) + "]");
    }
  }

  std::vector<std::vector<int>> contents(static_cast<std::size_t>(num_knapsacks));
  std::vector<long long> load(static_cast<std::size_t>(num_knapsacks), 0);
  for (int i = 0; i < n; ++i) {
    const int label = genome[i];
    if (label == 0) continue;
    contents[static_cast<std::size_t>(label - 1)].push_back(i);
    load[static_cast<std::size_t>(label - 1)] += instance.weights[static_cast<std::size_t>(i)];
  }

  // Greedy repair, knapsacks in ascending index order. Contribution of object
  // i is its linear profit plus pairwise profits with its current knapsack
  // mates; the lowest contribution/weight ratio leaves first.
  for (int k = 0; k < num_knapsacks; ++k) {
    auto& objs = contents[static_cast<std::size_t>(k)];
    while (load[static_cast<std::size_t>(k)] > instance.capacities[static_cast<std::size_t>(k)]) {
      int victim_pos = 0;
      double victim_ratio = 0.0;
      for (std::size_t pos = 0; pos < objs.size(); ++pos) {
        const int i = objs[pos];
        long long contribution = instance.linear_profit[static_cast<std::size_t>(i)];
        for (int other : objs) {
          if (other != i) contribution += instance.pair(i, other);
        }
        const double ratio = static_cast<double>(contribution) /
                             static_cast<double>(instance.weights[static_cast<std::size_t>(i)]);
        if (pos == 0 || ratio < victim_ratio) {
          victim_ratio = ratio;
          victim_pos = static_cast<int>(pos);
        }
      }
      const int victim = objs[static_cast<std::size_t>(victim_pos)];
      genome.genes[static_cast<std::size_t>(victim)] = 0;
      load[static_cast<std::size_t>(k)] -= instance.weights[static_cast<std::size_t>(victim)];
      objs.erase(objs.begin() + victim_pos);
    }
  }

  long long profit = 0;
  for (int k = 0; k < num_knapsacks; ++k) {
    const auto& objs = contents[static_cast<std::size_t>(k)];
    for (std::size_t a = 0; a < objs.size(); ++a) {
      profit += instance.linear_profit[static_cast<std::size_t>(objs[a])];
      for (std::size_t b = a + 1; b < objs.size(); ++b) {
        profit += instance.pair(objs[a], objs[b]);
      }
    }
  }
  return static_cast<double>(profit);
}

QmkpProblem::QmkpProblem(QmkpInstance instance) : instance_(std::move(instance)) {
  encoding_.kind = EncodingKind::assignment;
  encoding_.length = instance_.num_objects;
  encoding_.max_label = instance_.num_knapsacks;
}

}  // namespace dimsp
