#include "dimsp/problems/jssp.hpp"

#include <algorithm>

#include "dimsp/errors.hpp"

namespace dimsp {

long long jssp_makespan(const JsspInstance& instance, const Genome& genome) {
  const int num_jobs = instance.num_jobs;
  const int num_machines = instance.num_machines;
  if (genome.length() != num_jobs * num_machines) {
    throw InvalidGenome("jssp_makespan: genome length " +
                        std::to_string(genome.length()) + ", expected " +
                        std::to_string(num_jobs * num_machines));
  }

  std::vector<int> next_op(static_cast<std::size_t>(num_jobs), 0);
  std::vector<long long> job_free(static_cast<std::size_t>(num_jobs), 0);
  std::vector<long long> machine_free(static_cast<std::size_t>(num_machines), 0);

  long long makespan = 0;
  for (Gene job : genome.genes) {
    if (job < 0 || job >= num_jobs) {
      throw InvalidGenome("jssp_makespan: job index " + std::to_string(job) +
                          " out of range");
    }
    const std::size_t j = static_cast<std::size_t>(job);
    if (next_op[j] >= num_machines) {
      throw InvalidGenome("jssp_makespan: job " + std::to_string(job) +
                          " dispatched more than " + std::to_string(num_machines) +
                          " times");
    }
    const JsspOperation& op = instance.jobs[j][static_cast<std::size_t>(next_op[j]++)];
    const std::size_t m = static_cast<std::size_t>(op.machine);
    const long long start = std::max(job_free[j], machine_free[m]);
    const long long end = start + op.time;
    job_free[j] = end;
    machine_free[m] = end;
    makespan = std::max(makespan, end);
  }
  return makespan;
}

JsspProblem::JsspProblem(JsspInstance instance) : instance_(std::move(instance)) {
  encoding_.kind = EncodingKind::permutation;
  encoding_.num_symbols = instance_.num_jobs;
  encoding_.repeats = instance_.num_machines;
  encoding_.length = instance_.num_jobs * instance_.num_machines;
}

}  // namespace dimsp
