#pragma once

#include <vector>

#include "tlb/design.hpp"
#include "tlb/env.hpp"

namespace tlb {

struct StaticRunResult {
  int recommended = -1;
  long long total_samples = 0;
  int phases_evaluated = 0;
  bool correct = false;  // filled by the harness
};

// Non-adaptive comparator: one design on Y(Z), cumulative budgets ceil(v^t),
// refit on all samples so far, stop when some item beats every other by the
// union-bounded least squares width sqrt(2 ||.||^2_{A^-1} log(|Z|^2 t^2 / delta)).
StaticRunResult xy_static_run(const std::vector<Vector>& arms,
                              const std::vector<Vector>& items, double delta,
                              double v, RewardOracle& oracle,
                              const SolverConfig& solver = {});

// Same protocol, but the fixed design is the gap-weighted oracle allocation
// computed from theta_star. theta_star informs only the allocation, never the
// stopping test.
StaticRunResult xy_oracle_run(const std::vector<Vector>& arms,
                              const std::vector<Vector>& items,
                              const Vector& theta_star, double delta, double v,
                              RewardOracle& oracle,
                              const SolverConfig& solver = {});

}  // namespace tlb
