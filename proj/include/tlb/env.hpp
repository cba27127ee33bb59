#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tlb/linalg.hpp"

namespace tlb {

// A transductive bandit problem: measurement vectors (arms), decision
// vectors (items), and the hidden parameter. Construction validates that the
// arms span R^d, items are pairwise distinct, and the best item is unique.
class Instance {
 public:
  Instance(std::vector<Vector> arms, std::vector<Vector> items,
           Vector theta_star, std::string label = "");

  const std::vector<Vector>& arms() const { return arms_; }
  const std::vector<Vector>& items() const { return items_; }
  const Vector& theta_star() const { return theta_star_; }
  const std::string& label() const { return label_; }
  int d() const { return static_cast<int>(theta_star_.size()); }

  int best_item() const { return best_; }
  // (z_star - z)^T theta_star; zero for the best item itself.
  double gap(std::size_t item_index) const;
  std::vector<double> gaps() const;
  // Smallest positive gap; +inf for a single-item instance.
  double delta_min() const;

 private:
  std::vector<Vector> arms_;
  std::vector<Vector> items_;
  Vector theta_star_;
  std::string label_;
  int best_ = 0;
};

// Seeded Gaussian reward stream tied to one instance. Single-owner mutable
// state: construct one oracle per trial, never share across threads.
class RewardOracle {
 public:
  RewardOracle(const Instance& instance, std::uint64_t seed,
               double noise_std = 1.0);

  // One pull of the given arm: x^T theta_star + noise_std * N(0,1).
  double pull(const Vector& x);
  double pull(std::size_t arm_index);

  // Sum of `count` i.i.d. pulls of one arm, drawn as a single Gaussian
  // (count * mean, count * variance). Distributionally identical to looping
  // pull() for every statistic built from per-arm reward sums, and keeps
  // multi-million-pull allocations cheap.
  double pull_sum(std::size_t arm_index, long long count);

  long long pull_count() const { return pulls_; }
  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  double noise_std_;
  long long pulls_ = 0;
};

// Classic hard instance: X = Z = {e_1, ..., e_d, cos(alpha) e_1 + sin(alpha) e_2}
// with theta_star = 2 e_1. The off-axis arm is nearly optimal.
Instance gen_benchmark(int d, double alpha = 0.01);

// d = 2 cloud: e_1, the informative arm at angle 3pi/4, and n-2 arms at
// angles pi/4 + phi with phi ~ N(0, 0.09). theta_star = e_1.
Instance gen_many_arms(int n, std::uint64_t seed);

// n uniform points on the unit sphere; theta_star = x + alpha (x' - x) for
// the closest pair (x, x'), making x the best item by a thin margin.
Instance gen_sphere(int d, int n, double alpha, std::uint64_t seed);

// Transductive pair: X is the standard basis, Z mixes the first d/2 basis
// vectors with tilted copies cos(0.1) e_j + sin(0.1) e_{j+d/2}. d must be even.
Instance gen_transductive(int d);

// splitmix64 of the concatenated words; used to derive substream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace tlb
