#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "dimsp/genome.hpp"

namespace dimsp {

enum class Direction { minimize, maximize };

inline bool better(double a, double b, Direction d) {
  return d == Direction::minimize ? a < b : a > b;
}

/// A benchmark problem: an encoding, an optimization direction and a
/// deterministic fitness function. evaluate() may canonicalize the genome in
/// place (Lamarckian repair); the repaired genome is what the caller stores.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string kind() const = 0;  // "jssp" | "tsp" | "qmkp"
  virtual std::string name() const = 0;
  virtual Direction direction() const = 0;
  virtual const EncodingSpec& encoding() const = 0;
  virtual double evaluate(Genome& genome) const = 0;
};

inline Genome random_genome(const Problem& problem, RngStream& rng) {
  return random_genome(problem.encoding(), rng);
}

inline bool validate(const Genome& genome, const Problem& problem) {
  return validate(genome, problem.encoding());
}

/// Evaluates and wraps a genome. The stored genome reflects any repair done
/// by the fitness function.
inline Individual make_individual(Genome genome, const Problem& problem,
                                  std::int64_t generation) {
  const double fitness = problem.evaluate(genome);
  return Individual{std::move(genome), fitness, generation};
}

}  // namespace dimsp
