#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "tlb/errors.hpp"

namespace tlb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Symmetric positive semidefinite moment matrix A = sum_i w_i x_i x_i^T.
// The constructor enforces symmetry to 1e-12 relative tolerance (then
// symmetrizes exactly) and eigenvalues >= -1e-10 * trace.
class DesignMatrix {
 public:
  explicit DesignMatrix(Matrix m);

  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// A = sum_i weights[i] * arms[i] arms[i]^T. Weights must be nonnegative and
// match the arm count; all arms must share one dimension.
DesignMatrix design_matrix(const std::vector<Vector>& arms,
                           const Vector& weights);

// Eigendecomposition of a design matrix, shared across many solves. Rank is
// decided by the cutoff d * eps * lambda_max; a right-hand side with residual
// above 1e-8 * ||y|| outside the range maps to the +inf sentinel.
class PinvSolver {
 public:
  explicit PinvSolver(const DesignMatrix& a);

  // y^T A^+ y, or +inf when y is not in range(A).
  double quad(const Vector& y) const;

  // Minimum-norm least squares solution A^+ y.
  Vector solve(const Vector& y) const;

  // ||A z - y|| for z = A^+ y, computed in the eigenbasis.
  double residual_norm(const Vector& y) const;

 private:
  Matrix eigvecs_;
  Vector eigvals_;
  double cutoff_ = 0.0;
};

// One-shot convenience wrapper around PinvSolver::quad.
double inv_norm_sq(const Vector& y, const DesignMatrix& a);

// Raw measurement record: (arm pulled, observed reward) pairs.
struct SampleBatch {
  std::vector<std::pair<Vector, double>> pulls;
};

// Ordinary least squares theta = A^+ b with A = sum x x^T, b = sum r x.
// The pseudoinverse handles rank-deficient batches (minimum-norm solution).
Vector least_squares(const SampleBatch& batch);

// Same estimator from precomputed sufficient statistics.
Vector least_squares(const DesignMatrix& a, const Vector& b);

}  // namespace tlb
