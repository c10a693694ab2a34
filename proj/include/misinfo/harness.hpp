#ifndef MISINFO_HARNESS_HPP
#define MISINFO_HARNESS_HPP

#include <string>
#include <vector>

namespace misinfo::harness {

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Standard binary metrics with fake (+1) as the positive class.
Metrics evaluate(const std::vector<int>& predictions, const std::vector<int>& labels);

// Executes one task described by a JSON config ({"task": ..., "out": dir,
// "seed": N, ...}); writes artifacts under the output directory and returns
// the report JSON. Throws ValidationError / ConvergenceError for the caller
// to map onto exit codes.
std::string run(const std::string& config_json);

// Parallelism cap from MISINFO_NETKIT_THREADS (>= 1).
int thread_cap();

std::string version();

}  // namespace misinfo::harness

#endif
