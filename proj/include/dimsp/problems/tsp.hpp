#pragma once

#include <array>
#include <string>
#include <vector>

#include "dimsp/problems/problem.hpp"
#include "dimsp/types.hpp"

namespace dimsp {

/// Symmetric TSP instance from planar coordinates or an explicit distance
/// matrix. When `euc2d_rounded` is set (TSPLIB EUC_2D convention) each edge
/// is nint(euclidean distance); otherwise exact distances are used.
struct TspInstance {
  std::string name;
  int num_cities = 0;
  std::vector<std::array<double, 2>> coords;  // empty for explicit-matrix instances
  Matrix dist;
  bool euc2d_rounded = false;

  static TspInstance from_coords(std::string name,
                                 std::vector<std::array<double, 2>> coords,
                                 bool euc2d_rounded);
  static TspInstance from_matrix(std::string name, Matrix dist);
};

/// Closed-tour length of a full permutation of the cities.
double tsp_tour_length(const TspInstance& instance, const Genome& genome);

class TspProblem : public Problem {
 public:
  explicit TspProblem(TspInstance instance);

  std::string kind() const override { return "tsp"; }
  std::string name() const override { return instance_.name; }
  Direction direction() const override { return Direction::minimize; }
  const EncodingSpec& encoding() const override { return encoding_; }
  double evaluate(Genome& genome) const override {
    return tsp_tour_length(instance_, genome);
  }

  const TspInstance& instance() const { return instance_; }

 private:
  TspInstance instance_;
  EncodingSpec encoding_;
};

}  // namespace dimsp
