#include "tlb/design.hpp"

#include <cmath>

namespace tlb {

namespace {

constexpr double kDuplicateTol = 1e-12;

void validate_dirset(const std::vector<Vector>& arms,
                     const DirectionSet& dirs) {
  if (arms.empty()) throw structural_error("min_max_design: no arms");
  if (dirs.directions.empty()) {
    throw structural_error("min_max_design: empty direction set");
  }
  if (dirs.divisors.size() != dirs.directions.size()) {
    throw structural_error("min_max_design: divisor count mismatch");
  }
  const Eigen::Index d = arms.front().size();
  for (const Vector& x : arms) {
    if (x.size() != d) throw structural_error("min_max_design: arm dimensions");
  }
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    if (dirs.directions[j].size() != d) {
      throw structural_error("min_max_design: direction dimensions");
    }
    if (dirs.directions[j].norm() == 0.0) {
      throw degenerate_instance_error("min_max_design: zero direction");
    }
    if (!(dirs.divisors[j] > 0.0)) {
      throw degenerate_instance_error("min_max_design: divisor must be > 0");
    }
  }
}

// max_j quad(y_j)/omega_j with lowest-index tie-breaking; also reports the
// binding index.
double objective_at(const PinvSolver& solver, const DirectionSet& dirs,
                    std::size_t* best_index) {
  double best = -kInfinity;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const double v = solver.quad(dirs.directions[j]) / dirs.divisors[j];
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  if (best_index != nullptr) *best_index = arg;
  return best;
}

}  // namespace

std::vector<int> Design::support() const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) out.push_back(static_cast<int>(i));
  }
  return out;
}

DirectionSet directions(const std::vector<Vector>& s) {
  if (s.size() < 2) {
    throw structural_error("directions: need at least two vectors");
  }
  DirectionSet out;
  out.directions.reserve(s.size() * (s.size() - 1) / 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i].size() != s[j].size()) {
        throw structural_error("directions: mixed dimensions");
      }
      Vector y = s[i] - s[j];
      if (y.cwiseAbs().maxCoeff() <= kDuplicateTol) {
        throw degenerate_instance_error(
            "directions: duplicate vectors give a zero direction");
      }
      out.directions.push_back(std::move(y));
      out.divisors.push_back(1.0);
    }
  }
  return out;
}

DirectionSet star_directions(const Vector& z_star,
                             const std::vector<Vector>& s,
                             const Vector& theta_star) {
  if (s.size() < 2) {
    throw structural_error("star_directions: need at least two vectors");
  }
  std::size_t star_index = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].size() != z_star.size()) {
      throw structural_error("star_directions: mixed dimensions");
    }
    if (star_index == s.size() &&
        (s[i] - z_star).cwiseAbs().maxCoeff() <= kDuplicateTol) {
      star_index = i;
    }
  }
  if (star_index == s.size()) {
    throw structural_error("star_directions: z_star not found in the set");
  }

  DirectionSet out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == star_index) continue;
    Vector y = z_star - s[i];
    const double gap = y.dot(theta_star);
    if (!(gap > 0.0)) {
      throw degenerate_instance_error(
          "star_directions: z_star is not the unique maximizer");
    }
    out.directions.push_back(std::move(y));
    out.divisors.push_back(gap * gap);
  }
  return out;
}

Design min_max_design(const std::vector<Vector>& arms, const DirectionSet& dirs,
                      const SolverConfig& config) {
  validate_dirset(arms, dirs);
  const std::size_t n = arms.size();
  const Eigen::Index d = arms.front().size();

  Vector lambda = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / n);
  Matrix a = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    a.noalias() += lambda[static_cast<Eigen::Index>(i)] * arms[i] * arms[i].transpose();
  }

  int iters = 0;
  // Iteration counter starts at 1 so the first step is 2/3; a full step would
  // collapse lambda onto a single arm and make A rank one.
  for (int k = 1; k <= config.max_iters; ++k) {
    PinvSolver solver{DesignMatrix(a)};
    std::size_t best_y = 0;
    const double f = objective_at(solver, dirs, &best_y);
    if (std::isinf(f)) {
      // Infinite at the uniform initializer means some direction is outside
      // span(arms); later iterates only shrink the span.
      throw infeasible_error(
          "min_max_design: direction outside the span of the arms");
    }

    // Gradient of the binding term in lambda_i is -(y^T A^-1 x_i)^2 / omega,
    // so the Frank-Wolfe vertex is the arm maximizing (y^T A^-1 x_i)^2.
    const Vector w = solver.solve(dirs.directions[best_y]);
    std::size_t best_x = 0;
    double best_score = -kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
      const double dot = w.dot(arms[i]);
      const double score = dot * dot;
      if (score > best_score) {
        best_score = score;
        best_x = i;
      }
    }

    const double gamma = 2.0 / (k + 2);
    const double step_norm =
        gamma * std::sqrt(lambda.squaredNorm() + 1.0 -
                          2.0 * lambda[static_cast<Eigen::Index>(best_x)]);
    const double rel_change = step_norm / lambda.norm();

    lambda *= (1.0 - gamma);
    lambda[static_cast<Eigen::Index>(best_x)] += gamma;
    a *= (1.0 - gamma);
    a.noalias() += gamma * arms[best_x] * arms[best_x].transpose();
    iters = k;
    if (rel_change < config.rel_tol) break;
  }

  // Appendix-style cleanup: drop numerically dead weights, renormalize, and
  // report the objective of what is actually returned.
  Vector cleaned = lambda;
  for (Eigen::Index i = 0; i < cleaned.size(); ++i) {
    if (cleaned[i] < config.threshold) cleaned[i] = 0.0;
  }
  const double mass = cleaned.sum();
  Design out;
  if (mass > 0.0) {
    cleaned /= mass;
    out.weights = cleaned;
    out.value = design_objective(arms, cleaned, dirs);
  }
  if (mass <= 0.0 || std::isinf(out.value)) {
    // Thresholding removed an arm some direction depends on; fall back to the
    // unthresholded iterate.
    out.weights = lambda;
    out.value = design_objective(arms, lambda, dirs);
  }
  out.iterations = iters;
  return out;
}

double design_objective(const std::vector<Vector>& arms, const Vector& weights,
                        const DirectionSet& dirs) {
  PinvSolver solver(design_matrix(arms, weights));
  return objective_at(solver, dirs, nullptr);
}

}  // namespace tlb
