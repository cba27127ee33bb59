#include "tlb/baselines.hpp"

#include <cmath>

#include "tlb/rounding.hpp"

namespace tlb {

namespace {

constexpr int kMaxPhases = 2000;
constexpr double kBudgetCeiling = 4e15;

StaticRunResult doubling_run(const std::vector<Vector>& arms,
                             const std::vector<Vector>& items,
                             const Design& design, double delta, double v,
                             RewardOracle& oracle) {
  if (!(v > 1.0 && v < 2.0)) {
    throw structural_error("baseline: v must be in (1, 2)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw structural_error("baseline: delta must be in (0, 1)");
  }

  StaticRunResult result;
  if (items.size() == 1) {
    result.recommended = 0;
    return result;
  }

  const int d = static_cast<int>(arms.front().size());
  const long long p = static_cast<long long>(design.support().size());
  const long long start =
      std::max({static_cast<long long>(std::ceil(v)), min_samples(d, 0.2), p});
  const double nz = static_cast<double>(items.size());

  std::vector<long long> taken(arms.size(), 0);
  std::vector<double> reward_sum(arms.size(), 0.0);
  long long cumulative = 0;

  for (int t = 1; t <= kMaxPhases; ++t) {
    const double target = std::pow(v, t);
    if (target > kBudgetCeiling) {
      throw nonterminating_error("baseline: budget exceeds simulation ceiling");
    }
    long long budget =
        std::max(start, static_cast<long long>(std::ceil(target)));
    budget = std::max(budget, cumulative);

    // Re-apportion the cumulative budget; new pulls are the per-arm
    // difference from what was already taken.
    const Allocation alloc = apportion(design, budget);
    for (std::size_t i = 0; i < arms.size(); ++i) {
      const long long extra = alloc.counts[i] - taken[i];
      if (extra > 0) {
        reward_sum[i] += oracle.pull_sum(i, extra);
        taken[i] += extra;
        cumulative += extra;
      }
    }

    Matrix a = Matrix::Zero(d, d);
    Vector b = Vector::Zero(d);
    for (std::size_t i = 0; i < arms.size(); ++i) {
      if (taken[i] == 0) continue;
      a.noalias() +=
          static_cast<double>(taken[i]) * arms[i] * arms[i].transpose();
      b.noalias() += reward_sum[i] * arms[i];
    }
    const PinvSolver solver(DesignMatrix(std::move(a)));
    const Vector theta = solver.solve(b);

    int zhat = 0;
    double best = items[0].dot(theta);
    for (std::size_t i = 1; i < items.size(); ++i) {
      const double s = items[i].dot(theta);
      if (s > best) {
        best = s;
        zhat = static_cast<int>(i);
      }
    }

    // Only the empirical argmax can pass; at most one item dominates all
    // others beyond the widths.
    const double log_term =
        std::log(nz * nz * static_cast<double>(t) * static_cast<double>(t) /
                 delta);
    bool separated = true;
    for (std::size_t i = 0; i < items.size() && separated; ++i) {
      if (static_cast<int>(i) == zhat) continue;
      const Vector y = items[static_cast<std::size_t>(zhat)] - items[i];
      const double var = solver.quad(y);
      separated = std::isfinite(var) &&
                  y.dot(theta) >= std::sqrt(2.0 * var * log_term);
    }
    if (separated) {
      result.recommended = zhat;
      result.total_samples = cumulative;
      result.phases_evaluated = t;
      return result;
    }
  }
  throw nonterminating_error("baseline: phase cap exceeded without stopping");
}

}  // namespace

StaticRunResult xy_static_run(const std::vector<Vector>& arms,
                              const std::vector<Vector>& items, double delta,
                              double v, RewardOracle& oracle,
                              const SolverConfig& solver) {
  if (items.empty()) throw structural_error("xy_static_run: no items");
  if (items.size() == 1) {
    StaticRunResult r;
    r.recommended = 0;
    return r;
  }
  const Design design = min_max_design(arms, directions(items), solver);
  return doubling_run(arms, items, design, delta, v, oracle);
}

StaticRunResult xy_oracle_run(const std::vector<Vector>& arms,
                              const std::vector<Vector>& items,
                              const Vector& theta_star, double delta, double v,
                              RewardOracle& oracle,
                              const SolverConfig& solver) {
  if (items.empty()) throw structural_error("xy_oracle_run: no items");
  if (items.size() == 1) {
    StaticRunResult r;
    r.recommended = 0;
    return r;
  }
  std::size_t best = 0;
  double best_value = items[0].dot(theta_star);
  for (std::size_t i = 1; i < items.size(); ++i) {
    const double s = items[i].dot(theta_star);
    if (s > best_value) {
      best_value = s;
      best = i;
    }
  }
  const Design design = min_max_design(
      arms, star_directions(items[best], items, theta_star), solver);
  return doubling_run(arms, items, design, delta, v, oracle);
}

}  // namespace tlb
