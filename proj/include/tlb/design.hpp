#pragma once

#include <vector>

#include "tlb/linalg.hpp"

namespace tlb {

// Difference directions plus per-direction divisors: squared reward gaps for
// the oracle objective, all ones for the plain minimax variance.
struct DirectionSet {
  std::vector<Vector> directions;
  std::vector<double> divisors;

  std::size_t size() const { return directions.size(); }
};

// Unordered pairwise differences z - z' over s, one representative per pair
// (the inverse-design norm is even, so the sign does not matter). Divisors
// are all 1. Duplicate vectors would create a zero direction and are
// rejected.
DirectionSet directions(const std::vector<Vector>& s);

// Directions z_star - z for z in s \ {z_star}, each weighted by the squared
// gap ((z_star - z)^T theta_star)^2. z_star must occur in s and must be the
// strict maximizer of z^T theta_star.
DirectionSet star_directions(const Vector& z_star, const std::vector<Vector>& s,
                             const Vector& theta_star);

struct SolverConfig {
  int max_iters = 1000;
  double rel_tol = 0.01;     // stop when the relative l2 change in lambda drops below
  double threshold = 1e-5;   // weights below this are zeroed, then renormalized
};

// A probability distribution over the arm list together with the achieved
// min-max objective value and the number of Frank-Wolfe iterations used.
struct Design {
  Vector weights;
  double value = 0.0;
  int iterations = 0;

  std::vector<int> support() const;
};

// Frank-Wolfe solve of
//   min_{lambda in simplex} max_y ||y||^2_{A(lambda)^-1} / omega_y .
// Starts from the uniform distribution (full-rank A when the arms span),
// takes steps 2/(k+2) toward the arm that most decreases the binding
// direction's variance, and stops on the relative-change rule in `config`.
// Throws infeasible_error when some direction is outside span(arms).
Design min_max_design(const std::vector<Vector>& arms, const DirectionSet& dirs,
                      const SolverConfig& config = {});

// max_y ||y||^2_{A(weights)^-1} / omega_y for a fixed weight vector.
double design_objective(const std::vector<Vector>& arms, const Vector& weights,
                        const DirectionSet& dirs);

}  // namespace tlb
