#include "dimsp/problems/brute_force.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dimsp/errors.hpp"
#include "dimsp/problems/jssp.hpp"
#include "dimsp/problems/qmkp.hpp"
#include "dimsp/problems/tsp.hpp"

namespace dimsp {

namespace {

constexpr std::uint64_t kGuardRail = 10'000'000;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t sat_factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r = sat_mul(r, i);
  return r;
}

// C(n, k) with saturation; exact whenever intermediates fit.
std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (c > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    c = c * factor / i;  // stepwise exact: C(n-k+i, i) = C(n-k+i-1, i-1)*(n-k+i)/i
  }
  return c;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

void guard(std::uint64_t space) {
  if (space > kGuardRail) {
    throw SpaceTooLarge("brute_force_optimum: search space of " +
                        (space == std::numeric_limits<std::uint64_t>::max()
                             ? std::string(">10^19")
                             : std::to_string(space)) +
                        " genomes exceeds the 10^7 guard rail");
  }
}

void consider(const Problem& problem, const Genome& genome, OptimumResult& best,
              bool& have_best) {
  Genome copy = genome;
  const double f = problem.evaluate(copy);
  if (!have_best || better(f, best.fitness, problem.direction())) {
    best.fitness = f;
    best.genome = std::move(copy);
    have_best = true;
  }
}

OptimumResult brute_force_tsp(const TspProblem& problem) {
  const int n = problem.instance().num_cities;
  // First city fixed at 0: tour length is rotation invariant.
  guard(sat_factorial(static_cast<std::uint64_t>(n) - 1));
  std::vector<Gene> rest(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  std::iota(rest.begin(), rest.end(), Gene{1});
  OptimumResult best;
  bool have_best = false;
  Genome genome;
  do {
    genome.genes.clear();
    genome.genes.push_back(0);
    genome.genes.insert(genome.genes.end(), rest.begin(), rest.end());
    consider(problem, genome, best, have_best);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

OptimumResult brute_force_jssp(const JsspProblem& problem) {
  const int jobs = problem.instance().num_jobs;
  const int machines = problem.instance().num_machines;
  // Distinct multiset permutations: product of C(remaining, machines).
  std::uint64_t space = 1;
  for (int j = 0; j < jobs; ++j) {
    space = sat_mul(space, sat_binomial(static_cast<std::uint64_t>(jobs - j) * machines,
                                        static_cast<std::uint64_t>(machines)));
  }
  guard(space);
  Genome genome;
  for (int j = 0; j < jobs; ++j) {
    for (int m = 0; m < machines; ++m) genome.genes.push_back(static_cast<Gene>(j));
  }
  OptimumResult best;
  bool have_best = false;
  do {
    consider(problem, genome, best, have_best);
  } while (std::next_permutation(genome.genes.begin(), genome.genes.end()));
  return best;
}

OptimumResult brute_force_qmkp(const QmkpProblem& problem) {
  const QmkpInstance& inst = problem.instance();
  const int n = inst.num_objects;
  const int k = inst.num_knapsacks;
  guard(sat_pow(static_cast<std::uint64_t>(k) + 1, static_cast<std::uint64_t>(n)));

  Genome genome;
  genome.genes.assign(static_cast<std::size_t>(n), 0);
  OptimumResult best;
  bool have_best = false;
  std::vector<long long> load(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::fill(load.begin(), load.end(), 0);
    bool feasible = true;
    for (int i = 0; i < n && feasible; ++i) {
      const int label = genome[i];
      if (label == 0) continue;
      auto& l = load[static_cast<std::size_t>(label - 1)];
      l += inst.weights[static_cast<std::size_t>(i)];
      feasible = l <= inst.capacities[static_cast<std::size_t>(label - 1)];
    }
    if (feasible) consider(problem, genome, best, have_best);

    // next assignment in mixed radix base k+1
    int pos = 0;
    while (pos < n) {
      if (++genome.genes[static_cast<std::size_t>(pos)] <= k) break;
      genome.genes[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return best;
}

}  // namespace

std::uint64_t search_space_size(const Problem& problem) {
  if (const auto* tsp = dynamic_cast<const TspProblem*>(&problem)) {
    return sat_factorial(static_cast<std::uint64_t>(tsp->instance().num_cities) - 1);
  }
  if (const auto* jssp = dynamic_cast<const JsspProblem*>(&problem)) {
    const int jobs = jssp->instance().num_jobs;
    const int machines = jssp->instance().num_machines;
    std::uint64_t space = 1;
    for (int j = 0; j < jobs; ++j) {
      space = sat_mul(space, sat_binomial(static_cast<std::uint64_t>(jobs - j) * machines,
                                          static_cast<std::uint64_t>(machines)));
    }
    return space;
  }
  if (const auto* qmkp = dynamic_cast<const QmkpProblem*>(&problem)) {
    return sat_pow(static_cast<std::uint64_t>(qmkp->instance().num_knapsacks) + 1,
                   static_cast<std::uint64_t>(qmkp->instance().num_objects));
  }
  throw Error("search_space_size: unknown problem type");
}

OptimumResult brute_force_optimum(const Problem& problem) {
  if (const auto* tsp = dynamic_cast<const TspProblem*>(&problem)) {
    return brute_force_tsp(*tsp);
  }
  if (const auto* jssp = dynamic_cast<const JsspProblem*>(&problem)) {
    return brute_force_jssp(*jssp);
  }
  if (const auto* qmkp = dynamic_cast<const QmkpProblem*>(&problem)) {
    return brute_force_qmkp(*qmkp);
  }
  throw Error("brute_force_optimum: unknown problem type");
}

}  // namespace dimsp
