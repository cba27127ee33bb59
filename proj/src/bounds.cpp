#include "tlb/bounds.hpp"

#include <cmath>

#include "tlb/rounding.hpp"

namespace tlb {

double rho(const std::vector<Vector>& arms, const DirectionSet& dirs,
           const SolverConfig& solver) {
  return min_max_design(arms, dirs, solver).value;
}

std::pair<Design, double> psi_star(const Instance& instance,
                                   const SolverConfig& solver) {
  const std::vector<Vector>& items = instance.items();
  const Vector& z_star = items[static_cast<std::size_t>(instance.best_item())];
  const DirectionSet dirs = star_directions(z_star, items, instance.theta_star());
  Design design = min_max_design(instance.arms(), dirs, solver);
  const double value = design.value;
  return {std::move(design), value};
}

double lower_bound(const Instance& instance, double delta,
                   const SolverConfig& solver) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw structural_error("lower_bound: delta must be in (0, 1)");
  }
  return std::log(1.0 / (2.4 * delta)) * psi_star(instance, solver).second;
}

long long theorem2_bound(const Instance& instance, double delta, double eps,
                         const SolverConfig& solver) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw structural_error("theorem2_bound: delta must be in (0, 1)");
  }
  if (!(eps > 0.0)) throw structural_error("theorem2_bound: eps must be > 0");

  const std::vector<double> gaps = instance.gaps();
  const double gap_min = instance.delta_min();
  const long long r_eps =
      min_samples(instance.d(), std::min(eps, 1.0));
  const double nz = static_cast<double>(instance.items().size());

  int levels = 1;
  if (std::isfinite(gap_min)) {
    levels = std::max(1, static_cast<int>(std::floor(std::log2(1.0 / gap_min))));
  }

  long long total = 0;
  for (int t = 1; t <= levels; ++t) {
    std::vector<Vector> survivors;
    if (t == 1) {
      survivors = instance.items();
    } else {
      const double cutoff = std::pow(2.0, -t);
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] <= cutoff) survivors.push_back(instance.items()[i]);
      }
    }
    long long term = r_eps;
    if (survivors.size() > 1) {
      const double level_rho = rho(instance.arms(), directions(survivors), solver);
      const double log_term = std::log(
          static_cast<double>(t) * static_cast<double>(t) * nz * nz / delta);
      const double inner =
          std::pow(2.0, 2.0 * (t + 1)) * level_rho * (1.0 + eps) * log_term;
      if (!(inner < 4e15)) {
        throw nonterminating_error("theorem2_bound: level exceeds ceiling");
      }
      term = std::max(8LL * static_cast<long long>(std::ceil(inner)), r_eps);
    }
    total += term;
  }
  return total;
}

InstanceDiagnostics diagnose(const Instance& instance, double delta,
                             double eps, const SolverConfig& solver) {
  InstanceDiagnostics out;
  auto [design, value] = psi_star(instance, solver);
  out.lambda_star = std::move(design);
  out.psi_star = value;
  out.lower_bound = std::log(1.0 / (2.4 * delta)) * value;
  out.theorem2_bound = theorem2_bound(instance, delta, eps, solver);
  out.gaps = instance.gaps();
  out.delta_min = instance.delta_min();
  return out;
}

}  // namespace tlb
