#include "tlb/env.hpp"

#include <cmath>
#include <sstream>

namespace tlb {

namespace {

constexpr double kDuplicateTol = 1e-12;
constexpr int kMaxResample = 100;

bool near_duplicate(const Vector& a, const Vector& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

int rank_of(const std::vector<Vector>& vs, Eigen::Index d) {
  Matrix m(static_cast<Eigen::Index>(vs.size()), d);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

Vector basis(Eigen::Index d, Eigen::Index i) {
  Vector e = Vector::Zero(d);
  e[i] = 1.0;
  return e;
}

}  // namespace

Instance::Instance(std::vector<Vector> arms, std::vector<Vector> items,
                   Vector theta_star, std::string label)
    : arms_(std::move(arms)),
      items_(std::move(items)),
      theta_star_(std::move(theta_star)),
      label_(std::move(label)) {
  if (arms_.empty()) throw structural_error("Instance: no arms");
  if (items_.empty()) throw structural_error("Instance: no items");
  const Eigen::Index d = theta_star_.size();
  if (d < 1 || !theta_star_.allFinite()) {
    throw structural_error("Instance: bad theta_star");
  }
  for (const Vector& x : arms_) {
    if (x.size() != d || !x.allFinite()) {
      throw structural_error("Instance: arm dimension/finiteness");
    }
  }
  for (const Vector& z : items_) {
    if (z.size() != d || !z.allFinite()) {
      throw structural_error("Instance: item dimension/finiteness");
    }
  }
  if (rank_of(arms_, d) != static_cast<int>(d)) {
    throw structural_error("Instance: arms do not span R^d");
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    for (std::size_t j = i + 1; j < items_.size(); ++j) {
      if (near_duplicate(items_[i], items_[j], kDuplicateTol)) {
        throw degenerate_instance_error("Instance: duplicate items");
      }
    }
  }
  best_ = 0;
  double best_value = items_[0].dot(theta_star_);
  for (std::size_t i = 1; i < items_.size(); ++i) {
    const double v = items_[i].dot(theta_star_);
    if (v > best_value) {
      best_value = v;
      best_ = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (static_cast<int>(i) != best_ && gap(i) <= 0.0) {
      throw degenerate_instance_error("Instance: best item is not unique");
    }
  }
}

double Instance::gap(std::size_t item_index) const {
  return (items_[static_cast<std::size_t>(best_)] - items_[item_index])
      .dot(theta_star_);
}

std::vector<double> Instance::gaps() const {
  std::vector<double> out(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) out[i] = gap(i);
  return out;
}

double Instance::delta_min() const {
  double out = kInfinity;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const double g = gap(i);
    if (g > 0.0 && g < out) out = g;
  }
  return out;
}

RewardOracle::RewardOracle(const Instance& instance, std::uint64_t seed,
                           double noise_std)
    : instance_(&instance), rng_(seed), noise_std_(noise_std) {
  if (noise_std < 0.0) throw structural_error("RewardOracle: negative noise");
}

double RewardOracle::pull(const Vector& x) {
  for (std::size_t i = 0; i < instance_->arms().size(); ++i) {
    const Vector& arm = instance_->arms()[i];
    if (arm.size() == x.size() && arm == x) return pull(i);
  }
  throw illegal_arm_error("RewardOracle: vector is not an arm of the instance");
}

double RewardOracle::pull(std::size_t arm_index) {
  if (arm_index >= instance_->arms().size()) {
    throw illegal_arm_error("RewardOracle: arm index out of range");
  }
  ++pulls_;
  const double mean = instance_->arms()[arm_index].dot(instance_->theta_star());
  return mean + noise_std_ * normal_(rng_);
}

double RewardOracle::pull_sum(std::size_t arm_index, long long count) {
  if (arm_index >= instance_->arms().size()) {
    throw illegal_arm_error("RewardOracle: arm index out of range");
  }
  if (count < 0) throw structural_error("RewardOracle: negative pull count");
  if (count == 0) return 0.0;
  pulls_ += count;
  const double mean = instance_->arms()[arm_index].dot(instance_->theta_star());
  return static_cast<double>(count) * mean +
         noise_std_ * std::sqrt(static_cast<double>(count)) * normal_(rng_);
}

Instance gen_benchmark(int d, double alpha) {
  if (d < 2) throw structural_error("gen_benchmark: d must be >= 2");
  std::vector<Vector> arms;
  for (Eigen::Index i = 0; i < d; ++i) arms.push_back(basis(d, i));
  Vector off = Vector::Zero(d);
  off[0] = std::cos(alpha);
  off[1] = std::sin(alpha);
  arms.push_back(off);
  Vector theta = Vector::Zero(d);
  theta[0] = 2.0;
  std::ostringstream label;
  label << "benchmark(d=" << d << ", alpha=" << alpha << ")";
  return Instance(arms, arms, theta, label.str());
}

Instance gen_many_arms(int n, std::uint64_t seed) {
  if (n < 3) throw structural_error("gen_many_arms: n must be >= 3");
  std::mt19937_64 rng(seed);
  // N(0, .09) read as variance 0.09 (std 0.3); the variance reading is the
  // one matching an expected cloud gap near 0.3, and is recorded in the label.
  std::normal_distribution<double> phi(0.0, 0.3);

  std::vector<Vector> arms;
  arms.push_back(basis(2, 0));
  Vector informative(2);
  informative << std::cos(3.0 * M_PI / 4.0), std::sin(3.0 * M_PI / 4.0);
  arms.push_back(informative);
  for (int i = 3; i <= n; ++i) {
    int attempts = 0;
    for (;;) {
      if (++attempts > kMaxResample) {
        throw degenerate_instance_error(
            "gen_many_arms: could not draw a distinct arm");
      }
      const double angle = M_PI / 4.0 + phi(rng);
      Vector arm(2);
      arm << std::cos(angle), std::sin(angle);
      bool fresh = arm[0] < 1.0 - kDuplicateTol;  // zero gap would tie e_1
      for (const Vector& existing : arms) {
        fresh = fresh && !near_duplicate(existing, arm, 1e-9);
      }
      if (fresh) {
        arms.push_back(arm);
        break;
      }
    }
  }
  Vector theta = basis(2, 0);
  std::ostringstream label;
  label << "many_arms(n=" << n << ", seed=" << seed << ", phi_var=0.09)";
  return Instance(arms, arms, theta, label.str());
}

Instance gen_sphere(int d, int n, double alpha, std::uint64_t seed) {
  if (d < 1) throw structural_error("gen_sphere: d must be >= 1");
  if (n < 2) throw structural_error("gen_sphere: n must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<Vector> arms;
    arms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Vector v(d);
      double norm = 0.0;
      do {
        for (Eigen::Index j = 0; j < d; ++j) v[j] = gauss(rng);
        norm = v.norm();
      } while (norm < 1e-12);
      arms.push_back(v / norm);
    }

    // Closest pair by Euclidean distance, lowest indices on ties.
    int bi = 0, bj = 1;
    double best = kInfinity;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dist = (arms[static_cast<std::size_t>(i)] -
                             arms[static_cast<std::size_t>(j)])
                                .norm();
        if (dist < best) {
          best = dist;
          bi = i;
          bj = j;
        }
      }
    }
    const Vector& x = arms[static_cast<std::size_t>(bi)];
    const Vector& xp = arms[static_cast<std::size_t>(bj)];
    Vector theta = x + alpha * (xp - x);
    std::ostringstream label;
    label << "sphere(d=" << d << ", n=" << n << ", alpha=" << alpha
          << ", seed=" << seed << ")";
    try {
      // Duplicate, antipodal-only, or rank-deficient draws fail validation
      // and are simply redrawn.
      return Instance(arms, arms, theta, label.str());
    } catch (const degenerate_instance_error&) {
    } catch (const structural_error&) {
    }
  }
  throw structural_error(
      "gen_sphere: no valid draw in 100 attempts (is n >= d?)");
}

Instance gen_transductive(int d) {
  if (d < 2 || d % 2 != 0) {
    throw structural_error("gen_transductive: d must be even and >= 2");
  }
  std::vector<Vector> arms;
  for (Eigen::Index i = 0; i < d; ++i) arms.push_back(basis(d, i));
  std::vector<Vector> items;
  for (Eigen::Index j = 0; j < d / 2; ++j) items.push_back(basis(d, j));
  for (Eigen::Index j = 0; j < d / 2; ++j) {
    Vector z = Vector::Zero(d);
    z[j] = std::cos(0.1);
    z[j + d / 2] = std::sin(0.1);
    items.push_back(z);
  }
  Vector theta = basis(d, 0);
  std::ostringstream label;
  label << "transductive(d=" << d << ")";
  return Instance(arms, items, theta, label.str());
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + b;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tlb
