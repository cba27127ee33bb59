#pragma once

#include <cstdint>
#include <vector>

#include "tlb/design.hpp"

namespace tlb {

// Integer pull counts realizing a design for a fixed budget. Counts are
// nonzero only on the design's support and always sum to `total` exactly.
struct Allocation {
  std::vector<long long> counts;
  long long total = 0;
};

// Efficient design apportionment (Pukelsheim). Phase 1 seeds the support
// with ceil((n - p/2) * lambda_i); phase 2 walks the discrepancy to zero,
// decrementing the arm with the largest (N_i - 1)/lambda_i when over budget
// and incrementing the arm with the smallest N_i/lambda_i when under, ties
// to the lowest arm index. Requires n >= support size.
Allocation apportion(const Design& design, long long n);

// Minimum budget for the (1+eps) rounding guarantee:
// ceil((d(d+1)/2 + 1) / eps), eps in (0, 1].
long long min_samples(int d, double eps);

}  // namespace tlb
