#include "tlb/rounding.hpp"

#include <cmath>
#include <numeric>

namespace tlb {

Allocation apportion(const Design& design, long long n) {
  const std::vector<int> support = design.support();
  const long long p = static_cast<long long>(support.size());
  if (p == 0) throw structural_error("apportion: design has empty support");
  if (n < p) {
    throw budget_error("apportion: budget smaller than the design support");
  }

  Allocation out;
  out.counts.assign(static_cast<std::size_t>(design.weights.size()), 0);
  out.total = n;

  const double base = static_cast<double>(n) - 0.5 * static_cast<double>(p);
  long long sum = 0;
  for (int i : support) {
    const long long c = static_cast<long long>(
        std::ceil(base * design.weights[i]));
    out.counts[static_cast<std::size_t>(i)] = std::max(c, 1LL);
    sum += out.counts[static_cast<std::size_t>(i)];
  }

  // Phase 1 leaves |sum - n| <= p; anything slower than that is a bug.
  long long steps = 0;
  while (sum != n) {
    if (++steps > p + 1) {
      throw nonterminating_error("apportion: adjustment loop exceeded bound");
    }
    if (sum > n) {
      int arg = -1;
      double best = -kInfinity;
      for (int i : support) {
        const double r =
            (static_cast<double>(out.counts[static_cast<std::size_t>(i)]) - 1.0) /
            design.weights[i];
        if (r > best) {
          best = r;
          arg = i;
        }
      }
      --out.counts[static_cast<std::size_t>(arg)];
      --sum;
    } else {
      int arg = -1;
      double best = kInfinity;
      for (int i : support) {
        const double r =
            static_cast<double>(out.counts[static_cast<std::size_t>(i)]) /
            design.weights[i];
        if (r < best) {
          best = r;
          arg = i;
        }
      }
      ++out.counts[static_cast<std::size_t>(arg)];
      ++sum;
    }
  }
  return out;
}

long long min_samples(int d, double eps) {
  if (d < 1) throw structural_error("min_samples: d must be >= 1");
  if (!(eps > 0.0) || eps > 1.0) {
    throw structural_error("min_samples: eps must be in (0, 1]");
  }
  const double support_bound = 0.5 * d * (d + 1) + 1.0;
  return static_cast<long long>(std::ceil(support_bound / eps));
}

}  // namespace tlb
