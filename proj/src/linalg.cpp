#include "tlb/linalg.hpp"

#include <cmath>

namespace tlb {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kRangeTol = 1e-8;
}  // namespace

DesignMatrix::DesignMatrix(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw structural_error("DesignMatrix: matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw structural_error("DesignMatrix: non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTol * scale) {
    throw structural_error("DesignMatrix: matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(m_, Eigen::EigenvaluesOnly);
  const double floor = -kPsdTol * std::max(m_.trace(), 1e-300);
  if (eig.eigenvalues().minCoeff() < floor) {
    throw structural_error("DesignMatrix: matrix is not positive semidefinite");
  }
}

DesignMatrix design_matrix(const std::vector<Vector>& arms,
                           const Vector& weights) {
  if (arms.empty()) {
    throw structural_error("design_matrix: empty arm list");
  }
  if (static_cast<Eigen::Index>(arms.size()) != weights.size()) {
    throw structural_error("design_matrix: weight count != arm count");
  }
  const Eigen::Index d = arms.front().size();
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].size() != d) {
      throw structural_error("design_matrix: mixed arm dimensions");
    }
    const double w = weights[static_cast<Eigen::Index>(i)];
    if (!(w >= 0.0)) {
      throw structural_error("design_matrix: negative weight");
    }
    if (w > 0.0) {
      m.noalias() += w * arms[i] * arms[i].transpose();
    }
  }
  return DesignMatrix(std::move(m));
}

PinvSolver::PinvSolver(const DesignMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.mat());
  if (eig.info() != Eigen::Success) {
    throw structural_error("PinvSolver: eigendecomposition failed");
  }
  eigvecs_ = eig.eigenvectors();
  eigvals_ = eig.eigenvalues();
  const double lmax = std::max(eigvals_.maxCoeff(), 0.0);
  cutoff_ = static_cast<double>(a.dim()) *
            std::numeric_limits<double>::epsilon() * lmax;
}

double PinvSolver::residual_norm(const Vector& y) const {
  const Vector yh = eigvecs_.transpose() * y;
  double out = 0.0;
  for (Eigen::Index i = 0; i < yh.size(); ++i) {
    if (eigvals_[i] <= cutoff_) out += yh[i] * yh[i];
  }
  return std::sqrt(out);
}

double PinvSolver::quad(const Vector& y) const {
  if (y.size() != eigvals_.size()) {
    throw structural_error("PinvSolver::quad: dimension mismatch");
  }
  const Vector yh = eigvecs_.transpose() * y;
  double value = 0.0;
  double resid = 0.0;
  for (Eigen::Index i = 0; i < yh.size(); ++i) {
    if (eigvals_[i] > cutoff_) {
      value += yh[i] * yh[i] / eigvals_[i];
    } else {
      resid += yh[i] * yh[i];
    }
  }
  if (std::sqrt(resid) > kRangeTol * y.norm()) {
    return kInfinity;
  }
  return value;
}

Vector PinvSolver::solve(const Vector& y) const {
  if (y.size() != eigvals_.size()) {
    throw structural_error("PinvSolver::solve: dimension mismatch");
  }
  Vector yh = eigvecs_.transpose() * y;
  for (Eigen::Index i = 0; i < yh.size(); ++i) {
    yh[i] = eigvals_[i] > cutoff_ ? yh[i] / eigvals_[i] : 0.0;
  }
  return eigvecs_ * yh;
}

double inv_norm_sq(const Vector& y, const DesignMatrix& a) {
  return PinvSolver(a).quad(y);
}

Vector least_squares(const SampleBatch& batch) {
  if (batch.pulls.empty()) {
    throw structural_error("least_squares: empty batch");
  }
  const Eigen::Index d = batch.pulls.front().first.size();
  Matrix a = Matrix::Zero(d, d);
  Vector b = Vector::Zero(d);
  for (const auto& [x, r] : batch.pulls) {
    if (x.size() != d) {
      throw structural_error("least_squares: mixed arm dimensions");
    }
    if (!std::isfinite(r)) {
      throw structural_error("least_squares: non-finite reward");
    }
    a.noalias() += x * x.transpose();
    b.noalias() += r * x;
  }
  return least_squares(DesignMatrix(std::move(a)), b);
}

Vector least_squares(const DesignMatrix& a, const Vector& b) {
  return PinvSolver(a).solve(b);
}

}  // namespace tlb
