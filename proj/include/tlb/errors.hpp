#pragma once

#include <stdexcept>

namespace tlb {

// Error taxonomy shared across the library. Conditions a caller can act on
// get their own type; anything else surfaces as std::runtime_error.

// Malformed inputs: dimension mismatches, rank-deficient arm sets, bad sizes.
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instances the algorithms cannot meaningfully run on: duplicate items,
// non-unique best item, zero directions.
struct degenerate_instance_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A direction outside the span of the measurement set (objective == +inf).
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sampling budget below the support size of the design being rounded.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A pull was requested for a vector that is not in the arm set.
struct illegal_arm_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Safety caps tripped: a run that should have terminated did not.
struct nonterminating_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tlb
