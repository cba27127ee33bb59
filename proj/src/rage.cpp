#include "tlb/rage.hpp"

#include <algorithm>
#include <cmath>

namespace tlb {

namespace {

// Budgets beyond this cannot be simulated in reasonable time and signal a
// runaway instance rather than a legitimate experiment.
constexpr double kBudgetCeiling = 4e15;

std::vector<Vector> take(const std::vector<Vector>& items,
                         const std::vector<int>& idx) {
  std::vector<Vector> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(items[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

long long phase_budget(int t, double rho, std::size_t n_items, double delta,
                       double eps, long long r_eps) {
  if (t < 1) throw structural_error("phase_budget: t must be >= 1");
  const double nz = static_cast<double>(n_items);
  const double log_term =
      std::log(nz * nz * static_cast<double>(t) * static_cast<double>(t) /
               delta);
  const double raw = 8.0 * std::pow(2.0, 2.0 * (t + 1)) * rho * (1.0 + eps) *
                     log_term;
  if (!(raw < kBudgetCeiling)) {
    throw nonterminating_error("phase_budget: budget exceeds simulation ceiling");
  }
  return std::max(static_cast<long long>(std::ceil(raw)), r_eps);
}

std::vector<int> eliminate(const Vector& theta_hat,
                           const std::vector<int>& active,
                           const std::vector<Vector>& items, int t) {
  if (active.empty()) throw structural_error("eliminate: empty active set");
  double best = -kInfinity;
  for (int i : active) {
    best = std::max(best, items[static_cast<std::size_t>(i)].dot(theta_hat));
  }
  // exists z': (z' - z)^T theta_hat >= 2^-(t+2)  <=>  max score - score(z)
  // reaches the threshold.
  const double threshold = std::pow(2.0, -(t + 2));
  std::vector<int> out;
  for (int i : active) {
    if (best - items[static_cast<std::size_t>(i)].dot(theta_hat) < threshold) {
      out.push_back(i);
    }
  }
  return out;
}

RunResult rage_run(const std::vector<Vector>& arms,
                   const std::vector<Vector>& items, double delta, double eps,
                   RewardOracle& oracle, const SolverConfig& solver) {
  if (items.empty()) throw structural_error("rage_run: no items");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw structural_error("rage_run: delta must be in (0, 1)");
  }
  if (!(eps > 0.0)) throw structural_error("rage_run: eps must be > 0");

  RunResult result;
  if (items.size() == 1) {
    result.recommended = 0;
    return result;
  }

  const int d = static_cast<int>(arms.front().size());
  const long long r_eps = min_samples(d, std::min(eps, 1.0));
  const std::size_t n_items = items.size();

  std::vector<int> active(n_items);
  for (std::size_t i = 0; i < n_items; ++i) active[i] = static_cast<int>(i);

  // Updated each round from the smallest positive empirical gap; a run that
  // outlives log2(1/gap) by 20 extra rounds is stuck.
  int phase_cap = 64;

  for (int t = 1; active.size() > 1; ++t) {
    if (t > phase_cap) {
      throw nonterminating_error("rage_run: phase safety cap exceeded");
    }
    PhaseRecord rec;
    rec.t = t;
    rec.delta_t = delta / (static_cast<double>(t) * static_cast<double>(t));
    rec.active_before = active;

    const DirectionSet dirs = directions(take(items, active));
    rec.design = min_max_design(arms, dirs, solver);
    rec.rho_t = rec.design.value;

    rec.n_t = phase_budget(t, rec.rho_t, n_items, delta, eps, r_eps);
    // apportion needs at least one pull per support arm; optimal designs have
    // support <= d(d+1)/2 < r_eps, but a Frank-Wolfe iterate may exceed it.
    rec.n_t = std::max(rec.n_t,
                       static_cast<long long>(rec.design.support().size()));
    rec.allocation = apportion(rec.design, rec.n_t);

    Matrix a = Matrix::Zero(d, d);
    Vector b = Vector::Zero(d);
    for (std::size_t i = 0; i < arms.size(); ++i) {
      const long long c = rec.allocation.counts[i];
      if (c == 0) continue;
      a.noalias() += static_cast<double>(c) * arms[i] * arms[i].transpose();
      b.noalias() += oracle.pull_sum(i, c) * arms[i];
    }
    const DesignMatrix a_t(std::move(a));
    rec.theta_hat = least_squares(a_t, b);

    // Confidence chain backing the elimination threshold: the rounded
    // allocation keeps every active direction's variance below
    // (1+eps) rho_t / N_t, which the budget keeps below
    // [8 (2^{t+1})^2 log(|Z|^2/delta_t)]^-1.
    {
      PinvSolver a_solver(a_t);
      double worst = 0.0;
      for (const Vector& y : dirs.directions) {
        worst = std::max(worst, a_solver.quad(y));
      }
      const double rounding_bound =
          (1.0 + eps) * rec.rho_t / static_cast<double>(rec.n_t);
      const double width_bound =
          1.0 / (8.0 * std::pow(2.0, 2.0 * (t + 1)) *
                 std::log(static_cast<double>(n_items * n_items) / rec.delta_t));
      if (worst > rounding_bound * (1.0 + 1e-6) ||
          rounding_bound > width_bound * (1.0 + 1e-6)) {
        throw nonterminating_error(
            "rage_run: round confidence construction violated");
      }
    }

    active = eliminate(rec.theta_hat, active, items, t);
    rec.active_after = active;
    result.total_samples += rec.n_t;

    double min_gap = kInfinity;
    double best_score = -kInfinity;
    for (int i : rec.active_before) {
      best_score = std::max(best_score,
                            items[static_cast<std::size_t>(i)].dot(rec.theta_hat));
    }
    for (int i : rec.active_before) {
      const double g =
          best_score - items[static_cast<std::size_t>(i)].dot(rec.theta_hat);
      if (g > 0.0 && g < min_gap) min_gap = g;
    }
    if (std::isfinite(min_gap) && min_gap > 0.0) {
      phase_cap = static_cast<int>(std::ceil(std::log2(1.0 / min_gap))) + 20;
      phase_cap = std::max(phase_cap, t + 1);
    }

    result.phases.push_back(std::move(rec));
  }

  result.recommended = active.front();
  return result;
}

}  // namespace tlb
