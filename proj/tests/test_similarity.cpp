#include <doctest.h>

#include <vector>

#include "dimsp/errors.hpp"
#include "dimsp/similarity.hpp"
#include "helpers.hpp"

using namespace dimsp;
using test::genome_of;
using test::individual_of;

TEST_CASE("gene_match follows the per-position indicator") {
  const Genome x = genome_of({1, 2, 3});
  const Genome y = genome_of({1, 9, 3});
  CHECK(gene_match(x, y, 0) == 1);
  CHECK(gene_match(x, y, 1) == 0);
  CHECK(gene_match(x, y, 2) == 1);
  CHECK(gene_match(x, x, 1) == 1);
  CHECK_THROWS_AS(gene_match(x, genome_of({1, 2}), 0), LengthMismatch);
}

TEST_CASE("similarity is the mean match fraction") {
  CHECK(similarity(genome_of({1, 2, 3}), genome_of({1, 2, 3})) == 1.0);
  CHECK(similarity(genome_of({1, 2, 3}), genome_of({3, 2, 1})) == doctest::Approx(1.0 / 3.0));
  CHECK(similarity(genome_of({0, 1}), genome_of({1, 0})) == 0.0);
  CHECK_THROWS_AS(similarity(genome_of({0, 1}), genome_of({0, 1, 2})), LengthMismatch);
}

TEST_CASE("similarity matrix matches the naive full computation") {
  RngStream rng(42);
  EncodingSpec spec;
  spec.kind = EncodingKind::permutation;
  spec.num_symbols = 6;
  spec.repeats = 2;
  spec.length = 12;
  std::vector<Individual> pop;
  for (int i = 0; i < 25; ++i) {
    pop.push_back(Individual{random_genome(spec, rng), 0.0, 0});
  }
  const Matrix w = build_similarity_matrix(pop);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 25; ++j) {  // full N^2, no symmetry shortcut
      CHECK(w(i, j) == similarity(pop[static_cast<std::size_t>(i)].genome,
                                  pop[static_cast<std::size_t>(j)].genome));
    }
  }
}

TEST_CASE("similarity matrix basics") {
  const std::vector<Individual> one = {individual_of({0, 1, 2})};
  const Matrix w1 = build_similarity_matrix(one);
  REQUIRE(w1.rows() == 1);
  CHECK(w1(0, 0) == 1.0);

  const std::vector<Individual> twins = {individual_of({0, 1}), individual_of({0, 1})};
  const Matrix w2 = build_similarity_matrix(twins);
  CHECK(w2(0, 1) == 1.0);
  CHECK(w2(1, 0) == 1.0);

  CHECK_THROWS_AS(build_similarity_matrix(std::vector<Individual>{}), EmptyPopulation);
}

TEST_CASE("similarity axioms over random pairs and triples") {
  RngStream rng(7);
  EncodingSpec spec;
  spec.kind = EncodingKind::assignment;
  spec.length = 9;
  spec.max_label = 3;
  for (int trial = 0; trial < 1000; ++trial) {
    const Genome a = random_genome(spec, rng);
    const Genome b = random_genome(spec, rng);
    const Genome c = random_genome(spec, rng);
    const double ab = similarity(a, b);
    CHECK(ab == similarity(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(similarity(a, a) == 1.0);
    // 1 - similarity is the normalized Hamming distance, a metric
    const double dab = 1.0 - ab;
    const double dbc = 1.0 - similarity(b, c);
    const double dac = 1.0 - similarity(a, c);
    CHECK(dac <= dab + dbc + 1e-12);
  }
}

TEST_CASE("fitness kernel keeps matrix invariants") {
  std::vector<Individual> pop = {individual_of({0, 0}, 10.0), individual_of({1, 1}, 20.0),
                                 individual_of({2, 2}, 15.0)};
  const Matrix w = build_similarity_matrix(pop, SimilarityKernel::fitness_gap);
  for (int i = 0; i < 3; ++i) {
    CHECK(w(i, i) == 1.0);
    for (int j = 0; j < 3; ++j) {
      CHECK(w(i, j) == w(j, i));
      CHECK(w(i, j) >= 0.0);
      CHECK(w(i, j) <= 1.0);
    }
  }
  CHECK(w(0, 1) == 0.0);                    // extremes of the range
  CHECK(w(0, 2) == doctest::Approx(0.5));   // half the range apart

  // degenerate range: everything equally fit
  std::vector<Individual> flat = {individual_of({0}, 4.0), individual_of({1}, 4.0)};
  const Matrix wf = build_similarity_matrix(flat, SimilarityKernel::fitness_gap);
  CHECK(wf(0, 1) == 1.0);
}
