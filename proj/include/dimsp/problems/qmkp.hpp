#pragma once

#include <string>
#include <vector>

#include "dimsp/problems/problem.hpp"

namespace dimsp {

/// Quadratic multiple-knapsack instance. Pairwise profits are stored as the
/// strict upper triangle (i < j) of a symmetric profit matrix. Instances
/// loaded from single-knapsack files keep the declared capacity and split it
/// evenly across `num_knapsacks` (remainder to the lowest-index knapsacks).
struct QmkpInstance {
  std::string name;
  int num_objects = 0;
  int num_knapsacks = 1;
  long long declared_capacity = 0;      // single-knapsack capacity as in the file
  int constraint_type = 0;              // file field, re-emitted on serialization
  std::vector<long long> capacities;    // per knapsack, derived from declared_capacity
  std::vector<long long> weights;       // > 0
  std::vector<long long> linear_profit;
  std::vector<long long> pair_profit;   // flat upper triangle, i < j

  long long pair(int i, int j) const;
  void set_pair(int i, int j, long long value);
  void split_capacity(int num_knapsacks);
  double density() const;  // fraction of non-zero quadratic coefficients
};

/// Total profit of an assignment after greedy repair. While a knapsack is
/// over capacity, the assigned object with the lowest profit-contribution to
/// weight ratio is unassigned (ties to the lower object index). Repair is
/// Lamarckian: the genome is updated in place.
double qmkp_profit(const QmkpInstance& instance, Genome& genome);

class QmkpProblem : public Problem {
 public:
  explicit QmkpProblem(QmkpInstance instance);

  std::string kind() const override { return "qmkp"; }
  std::string name() const override { return instance_.name; }
  Direction direction() const override { return Direction::maximize; }
  const EncodingSpec& encoding() const override { return encoding_; }
  double evaluate(Genome& genome) const override {
    return qmkp_profit(instance_, genome);
  }

  const QmkpInstance& instance() const { return instance_; }

 private:
  QmkpInstance instance_;
  EncodingSpec encoding_;
};

}  // namespace dimsp
