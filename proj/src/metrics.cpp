#include "dimsp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dimsp/errors.hpp"

namespace dimsp {

std::size_t best_index(std::span<const Individual> individuals, Direction direction) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < individuals.size(); ++i) {
    if (better(individuals[i].fitness, individuals[best].fitness, direction)) {
      best = i;
    }
  }
  return best;
}

double diversity(std::span<const Individual> individuals, std::size_t best,
                 SimilarityKernel kernel) {
  if (individuals.size() <= 1) return 0.0;

  if (kernel == SimilarityKernel::hamming) {
    double total = 0.0;
    for (std::size_t i = 0; i < individuals.size(); ++i) {
      if (i == best) continue;
      total += 1.0 - similarity(individuals[best].genome, individuals[i].genome);
    }
    return total / static_cast<double>(individuals.size() - 1);
  }

  double lo = individuals[0].fitness, hi = individuals[0].fitness;
  for (const Individual& ind : individuals) {
    lo = std::min(lo, ind.fitness);
    hi = std::max(hi, ind.fitness);
  }
  const double range = hi - lo;
  if (range <= 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < individuals.size(); ++i) {
    if (i == best) continue;
    total += std::abs(individuals[best].fitness - individuals[i].fitness) / range;
  }
  return total / static_cast<double>(individuals.size() - 1);
}

double avg_score(std::span<const Individual> individuals) {
  if (individuals.empty()) throw EmptyPopulation("avg_score: empty population");
  double total = 0.0;
  for (const Individual& ind : individuals) total += ind.fitness;
  return total / static_cast<double>(individuals.size());
}

std::vector<SummaryRow> summarize(std::span<const RunTrace> traces) {
  if (traces.empty()) throw MismatchedConfigs("summarize: no traces");
  for (const RunTrace& t : traces) {
    if (t.problem != traces[0].problem || t.config_digest != traces[0].config_digest) {
      throw MismatchedConfigs(
          "summarize: traces mix different problems or run configurations");
    }
    if (t.records.empty()) throw MismatchedConfigs("summarize: trace without records");
  }

  std::vector<std::string> order;
  for (const RunTrace& t : traces) {
    if (std::find(order.begin(), order.end(), t.model) == order.end()) {
      order.push_back(t.model);
    }
  }

  std::vector<SummaryRow> rows;
  for (const std::string& model : order) {
    SummaryRow row;
    row.model = model;
    row.problem = traces[0].problem;
    double sum_avg = 0.0, sum_div = 0.0;
    int count = 0;
    bool have_best = false;
    Direction direction = Direction::minimize;
    for (const RunTrace& t : traces) {
      if (t.model != model) continue;
      const GenerationRecord& last = t.final_record();
      sum_avg += last.avg_score;
      sum_div += last.diversity;
      direction = t.direction;
      if (!have_best || better(last.best_score, row.best_score, t.direction)) {
        row.best_score = last.best_score;
        have_best = true;
      }
      ++count;
    }
    (void)direction;
    row.avg_score = sum_avg / count;
    row.diversity = sum_div / count;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dimsp
