#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

namespace vqe {

/// Derivative-free linear-approximation trust-region minimizer in the COBYLA
/// family (no constraint handling; the objectives here are unconstrained).
struct OptimizerConfig {
  int max_iterations = 100;  // objective-evaluation budget
  double rhobeg = 0.1;       // initial trust-region radius
  double rhoend = 1e-4;      // final radius; reaching it means convergence
};

struct OptimizerResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int iterations = 0;  // objective evaluations consumed
  bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Maintains a simplex of dim+1 points, steps along the linear interpolant
/// within the trust radius, repairs degenerate geometry by re-spanning, and
/// shrinks the radius from rhobeg toward rhoend on failure to improve.
/// Deterministic: identical inputs give identical evaluation sequences.
/// Non-finite objective values abort with a diagnostic.
///
/// `trace`, when set, receives one line per evaluation:
///   <eval index> <param 0> ... <param dim-1> <value>
OptimizerResult minimize(const Objective& objective, const std::vector<double>& x0,
                         const OptimizerConfig& cfg, std::ostream* trace = nullptr);

}  // namespace vqe
