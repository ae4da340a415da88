#pragma once

#include <string>
#include <vector>

#include "dimsp/problems/problem.hpp"

namespace dimsp {

struct JsspOperation {
  int machine = 0;
  int time = 0;
};

/// Classic job-shop instance: each job visits every machine exactly once in
/// its own machine order.
struct JsspInstance {
  std::string name;
  int num_jobs = 0;
  int num_machines = 0;
  std::vector<std::vector<JsspOperation>> jobs;  // jobs[j][o]
};

/// Decodes an operation-based genome (job index repeated num_machines times)
/// into a semi-active schedule and returns its makespan. The t-th occurrence
/// of job j dispatches job j's t-th operation at the earliest time allowed by
/// the job's previous operation and the machine's availability.
long long jssp_makespan(const JsspInstance& instance, const Genome& genome);

class JsspProblem : public Problem {
 public:
  explicit JsspProblem(JsspInstance instance);

  std::string kind() const override { return "jssp"; }
  std::string name() const override { return instance_.name; }
  Direction direction() const override { return Direction::minimize; }
  const EncodingSpec& encoding() const override { return encoding_; }
  double evaluate(Genome& genome) const override {
    return static_cast<double>(jssp_makespan(instance_, genome));
  }

  const JsspInstance& instance() const { return instance_; }

 private:
  JsspInstance instance_;
  EncodingSpec encoding_;
};

}  // namespace dimsp
