#pragma once

#include <numeric>
#include <vector>

#include "dimsp/genome.hpp"
#include "dimsp/problems/jssp.hpp"
#include "dimsp/problems/qmkp.hpp"
#include "dimsp/problems/tsp.hpp"
#include "dimsp/types.hpp"

namespace dimsp::test {

inline Genome genome_of(std::vector<Gene> genes) { return Genome{std::move(genes)}; }

inline Individual individual_of(std::vector<Gene> genes, double fitness = 0.0) {
  return Individual{genome_of(std::move(genes)), fitness, 0};
}

inline TspInstance square_tsp(bool rounded = false) {
  // unit square corners; optimum tour length 4
  return TspInstance::from_coords(
      "square4", {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, rounded);
}

inline JsspInstance tiny_jssp_1x1(int time = 7) {
  JsspInstance inst;
  inst.name = "tiny1x1";
  inst.num_jobs = 1;
  inst.num_machines = 1;
  inst.jobs = {{JsspOperation{0, time}}};
  return inst;
}

inline QmkpInstance tiny_qmkp(int num_objects, int num_knapsacks,
                              std::vector<long long> weights,
                              std::vector<long long> profits, long long capacity) {
  QmkpInstance inst;
  inst.name = "tiny_qmkp";
  inst.num_objects = num_objects;
  inst.weights = std::move(weights);
  inst.linear_profit = std::move(profits);
  inst.pair_profit.assign(
      static_cast<std::size_t>(num_objects) * (num_objects - 1) / 2, 0);
  inst.declared_capacity = capacity * num_knapsacks;
  inst.split_capacity(num_knapsacks);
  return inst;
}

/// Connected components of the graph with an edge wherever w(i,j) > 0.
/// Union-find; intentionally independent of the spectral pipeline.
inline std::vector<int> connected_components(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w(i, j) > 0.0) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::vector<int> remap;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    int id = -1;
    for (std::size_t r = 0; r < remap.size(); ++r) {
      if (remap[r] == root) {
        id = static_cast<int>(r);
        break;
      }
    }
    if (id < 0) {
      id = static_cast<int>(remap.size());
      remap.push_back(root);
    }
    labels[static_cast<std::size_t>(i)] = id;
  }
  return labels;
}

/// True iff two labelings induce the same partition (invariant to label
/// permutation).
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace dimsp::test
