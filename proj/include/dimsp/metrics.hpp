#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dimsp/genome.hpp"
#include "dimsp/problems/problem.hpp"
#include "dimsp/similarity.hpp"

namespace dimsp {

struct GenerationRecord {
  std::int64_t generation = 0;
  int num_islands = 1;
  double best_score = 0.0;  // best ever seen (elite archive)
  double avg_score = 0.0;   // mean fitness over all current individuals
  double diversity = 0.0;   // in [0, 1]
  std::vector<int> island_sizes;  // diagnostic; not serialized to CSV
};

/// Full history of one run plus the final top-ranked individuals.
struct RunTrace {
  std::string model;
  std::string problem;
  std::string config_digest;  // run parameters except model and seed
  std::uint64_t seed = 0;
  Direction direction = Direction::minimize;
  std::vector<GenerationRecord> records;
  std::vector<Individual> top_solutions;

  const GenerationRecord& final_record() const { return records.back(); }
};

/// Index of the best individual: lowest index wins ties, so with islands
/// flattened in island order this is "lowest island index, lowest member
/// index".
std::size_t best_index(std::span<const Individual> individuals, Direction direction);

/// Mean distance between the best individual and every other individual,
/// using 1 - similarity under the given kernel. 0 for a single individual or
/// an all-clones population.
double diversity(std::span<const Individual> individuals, std::size_t best,
                 SimilarityKernel kernel = SimilarityKernel::hamming);

/// Arithmetic mean fitness over all individuals.
double avg_score(std::span<const Individual> individuals);

struct SummaryRow {
  std::string model;
  std::string problem;
  double avg_score = 0.0;   // mean of final-generation avg_score over seeds
  double best_score = 0.0;  // best final best_score across seeds
  double diversity = 0.0;   // mean of final-generation diversity over seeds
};

/// One row per model, in first-appearance order. All traces must share the
/// same problem and config digest (seeds may differ); otherwise
/// MismatchedConfigs.
std::vector<SummaryRow> summarize(std::span<const RunTrace> traces);

}  // namespace dimsp
