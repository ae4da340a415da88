#include "dimsp/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "dimsp/errors.hpp"

namespace dimsp {

int gene_match(const Genome& x, const Genome& y, int i) {
  if (x.length() != y.length()) {
    throw LengthMismatch("gene_match: genome lengths differ (" +
                         std::to_string(x.length()) + " vs " +
                         std::to_string(y.length()) + ")");
  }
  return x[i] == y[i] ? 1 : 0;
}

double similarity(const Genome& x, const Genome& y) {
  if (x.length() != y.length()) {
    throw LengthMismatch("similarity: genome lengths differ (" +
                         std::to_string(x.length()) + " vs " +
                         std::to_string(y.length()) + ")");
  }
  const int n = x.length();
  int matches = 0;
  for (int i = 0; i < n; ++i) matches += (x[i] == y[i]) ? 1 : 0;
  return static_cast<double>(matches) / static_cast<double>(n);
}

Matrix build_similarity_matrix(std::span<const Individual> pop,
                               SimilarityKernel kernel) {
  if (pop.empty()) throw EmptyPopulation("build_similarity_matrix: empty population");
  const Eigen::Index n = static_cast<Eigen::Index>(pop.size());
  Matrix w(n, n);

  if (kernel == SimilarityKernel::hamming) {
    for (Eigen::Index i = 0; i < n; ++i) {
      w(i, i) = 1.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double s = similarity(pop[static_cast<std::size_t>(i)].genome,
                                    pop[static_cast<std::size_t>(j)].genome);
        w(i, j) = s;
        w(j, i) = s;
      }
    }
    return w;
  }

  // fitness_gap: 1 - |f_i - f_j| / range, with a degenerate range mapping to
  // all-ones (indistinguishable individuals).
  double lo = pop[0].fitness, hi = pop[0].fitness;
  for (const Individual& ind : pop) {
    lo = std::min(lo, ind.fitness);
    hi = std::max(hi, ind.fitness);
  }
  const double range = hi - lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double s = 1.0;
      if (range > 0.0) {
        s = 1.0 - std::abs(pop[static_cast<std::size_t>(i)].fitness -
                           pop[static_cast<std::size_t>(j)].fitness) /
                      range;
      }
      w(i, j) = s;
      w(j, i) = s;
    }
  }
  return w;
}

}  // namespace dimsp
