#pragma once

#include <vector>

#include "tlb/design.hpp"
#include "tlb/env.hpp"
#include "tlb/rounding.hpp"

namespace tlb {

// Everything one elimination round produced.
struct PhaseRecord {
  int t = 0;                       // round index, from 1
  double delta_t = 0.0;            // delta / t^2
  Design design;                   // min-max design over Y(active)
  double rho_t = 0.0;              // achieved design value
  long long n_t = 0;               // round budget
  Allocation allocation;
  Vector theta_hat;                // least squares on this round's pulls only
  std::vector<int> active_before;
  std::vector<int> active_after;
};

struct RunResult {
  int recommended = -1;
  long long total_samples = 0;
  std::vector<PhaseRecord> phases;
  bool correct = false;  // filled by the harness, which knows theta_star
};

// Round budget max{ceil(8 (2^{t+1})^2 rho (1+eps) log(n_items^2 t^2 / delta)),
// r_eps}. Natural log.
long long phase_budget(int t, double rho, std::size_t n_items, double delta,
                       double eps, long long r_eps);

// Drop every active item z with some active z' satisfying
// (z' - z)^T theta_hat >= 2^-(t+2). The empirical argmax always survives.
std::vector<int> eliminate(const Vector& theta_hat,
                           const std::vector<int>& active,
                           const std::vector<Vector>& items, int t);

// Phased elimination with a fresh optimal design, rounding, and least squares
// estimate per round. Samples from earlier rounds are discarded.
RunResult rage_run(const std::vector<Vector>& arms,
                   const std::vector<Vector>& items, double delta, double eps,
                   RewardOracle& oracle, const SolverConfig& solver = {});

}  // namespace tlb
