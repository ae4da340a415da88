#include "dimsp/problems/tsp.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "dimsp/errors.hpp"

namespace dimsp {

namespace {

// TSPLIB nearest-integer rounding.
double nint(double x) { return std::floor(x + 0.5); }

}  // namespace

TspInstance TspInstance::from_coords(std::string name,
                                     std::vector<std::array<double, 2>> coords,
                                     bool euc2d_rounded) {
  TspInstance inst;
  inst.name = std::move(name);
  inst.num_cities = static_cast<int>(coords.size());
  inst.coords = std::move(coords);
  inst.euc2d_rounded = euc2d_rounded;
  const Eigen::Index n = inst.num_cities;
  inst.dist = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dx = inst.coords[static_cast<std::size_t>(i)][0] -
                        inst.coords[static_cast<std::size_t>(j)][0];
      const double dy = inst.coords[static_cast<std::size_t>(i)][1] -
                        inst.coords[static_cast<std::size_t>(j)][1];
      double d = std::sqrt(dx * dx + dy * dy);
      if (euc2d_rounded) d = nint(d);
      inst.dist(i, j) = d;
      inst.dist(j, i) = d;
    }
  }
  return inst;
}

TspInstance TspInstance::from_matrix(std::string name, Matrix dist) {
  TspInstance inst;
  inst.name = std::move(name);
  inst.num_cities = static_cast<int>(dist.rows());
  inst.dist = std::move(dist);
  return inst;
}

double tsp_tour_length(const TspInstance& instance, const Genome& genome) {
  const int n = instance.num_cities;
  if (genome.length() != n) {
    throw InvalidGenome("tsp_tour_length: genome length " +
                        std::to_string(genome.length()) + ", expected " +
                        std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Gene c : genome.genes) {
    if (c < 0 || c >= n || seen[static_cast<std::size_t>(c)]) {
      throw InvalidGenome("tsp_tour_length: not a permutation of the cities");
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += instance.dist(genome[i], genome[(i + 1) % n]);
  }
  return total;
}

TspProblem::TspProblem(TspInstance instance) : instance_(std::move(instance)) {
  encoding_.kind = EncodingKind::permutation;
  encoding_.num_symbols = instance_.num_cities;
  encoding_.repeats = 1;
  encoding_.length = instance_.num_cities;
}

}  // namespace dimsp
