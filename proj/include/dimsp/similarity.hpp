#pragma once

#include <span>

#include "dimsp/genome.hpp"
#include "dimsp/types.hpp"

namespace dimsp {

/// Pairwise similarity notion used for clustering and diversity. `hamming`
/// counts matching gene positions; `fitness_gap` compares fitness values
/// normalized by the population's fitness range.
enum class SimilarityKernel { hamming, fitness_gap };

/// 1 if x and y agree at position i, 0 otherwise.
int gene_match(const Genome& x, const Genome& y, int i);

/// Normalized Hamming similarity: mean of gene_match over all positions.
/// 1 iff the genomes are equal, 0 iff they differ everywhere.
double similarity(const Genome& x, const Genome& y);

/// Dense symmetric matrix of pairwise similarities, unit diagonal, entries in
/// [0,1]. Computes the upper triangle and mirrors it.
Matrix build_similarity_matrix(std::span<const Individual> pop,
                               SimilarityKernel kernel = SimilarityKernel::hamming);

}  // namespace dimsp
