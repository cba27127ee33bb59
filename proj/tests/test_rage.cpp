#include <doctest.h>

#include <cmath>

#include "tlb/bounds.hpp"
#include "tlb/env.hpp"
#include "tlb/rage.hpp"

using namespace tlb;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Instance two_orthogonal() {
  return Instance({vec2(1, 0), vec2(0, 1)}, {vec2(1, 0), vec2(0, 1)},
                  vec2(1, 0), "two_orthogonal");
}

}  // namespace

TEST_CASE("phase_budget matches the hand-evaluated round-one budget") {
  // 8 * 16 * 4 * 1.2 * ln(4/0.05) = 2692.3..., so the budget rounds to 2693
  // and dominates r(eps) = 20.
  const long long expected = static_cast<long long>(
      std::ceil(8.0 * 16.0 * 4.0 * 1.2 * std::log(4.0 / 0.05)));
  CHECK(expected == 2693);
  CHECK(phase_budget(1, 4.0, 2, 0.05, 0.2, 20) == 2693);
  CHECK(phase_budget(1, 1e-9, 2, 0.05, 0.2, 20) == 20);
  CHECK_THROWS_AS(phase_budget(0, 1.0, 2, 0.05, 0.2, 20), structural_error);
}

TEST_CASE("eliminate drops items beaten beyond the threshold") {
  const std::vector<Vector> items = {vec2(1, 0), vec2(0, 1)};
  const std::vector<int> active = {0, 1};
  // (z0 - z1)^T theta = 0.3 >= 2^-3: item 1 goes.
  CHECK(eliminate(vec2(0.3, 0.0), active, items, 1) == std::vector<int>{0});
  // All empirical gaps below the threshold: nothing changes.
  CHECK(eliminate(vec2(0.1, 0.0), active, items, 1) ==
        std::vector<int>{0, 1});
}

TEST_CASE("eliminate with the exact parameter keeps only the near-tie") {
  const Instance inst = gen_benchmark(2, 0.01);
  const std::vector<int> active = {0, 1, 2};
  const std::vector<int> after =
      eliminate(inst.theta_star(), active, inst.items(), 1);
  CHECK(after == std::vector<int>{0, 2});
}

TEST_CASE("rage on a single item returns it without sampling") {
  const Instance inst = two_orthogonal();
  std::vector<Vector> one_item = {vec2(1, 0)};
  RewardOracle oracle(inst, 1);
  const RunResult result =
      rage_run(inst.arms(), one_item, 0.05, 0.2, oracle);
  CHECK(result.recommended == 0);
  CHECK(result.total_samples == 0);
  CHECK(result.phases.empty());
}

TEST_CASE("rage on two orthogonal arms finishes in one round") {
  const Instance inst = two_orthogonal();
  RewardOracle oracle(inst, 5);
  const RunResult result =
      rage_run(inst.arms(), inst.items(), 0.05, 0.2, oracle);
  REQUIRE(result.phases.size() == 1);
  const PhaseRecord& round = result.phases.front();
  CHECK(round.rho_t == doctest::Approx(4.0).epsilon(0.01));
  CHECK(round.n_t == phase_budget(1, round.rho_t, 2, 0.05, 0.2,
                                  min_samples(2, 0.2)));
  CHECK(round.n_t >= 2693);
  CHECK(result.total_samples == round.n_t);
  CHECK(result.recommended == 0);
  CHECK(oracle.pull_count() == result.total_samples);
}

TEST_CASE("rage noiseless benchmark trace") {
  const Instance inst = gen_benchmark(2, 0.01);
  RewardOracle oracle(inst, 3, 0.0);
  const RunResult result =
      rage_run(inst.arms(), inst.items(), 0.05, 0.2, oracle);
  CHECK(result.recommended == 0);

  // theta_hat is exact every round, so e2 leaves after round one and the
  // off-axis arm survives until 2^-(t+2) falls under its gap of ~1e-4.
  const double gap = 2.0 - 2.0 * std::cos(0.01);
  const int final_round = static_cast<int>(
      std::ceil(-std::log2(gap))) - 2;
  CHECK(static_cast<int>(result.phases.size()) == final_round);
  CHECK(result.phases.front().active_after == std::vector<int>{0, 2});
  for (std::size_t i = 1; i < result.phases.size(); ++i) {
    const auto& before = result.phases[i].active_before;
    const auto& prev_after = result.phases[i - 1].active_after;
    CHECK(before == prev_after);
  }
  long long sum = 0;
  for (const PhaseRecord& round : result.phases) {
    CHECK(round.active_after.size() <= round.active_before.size());
    CHECK(round.delta_t ==
          doctest::Approx(0.05 / (round.t * round.t)).epsilon(1e-12));
    CHECK(round.allocation.total == round.n_t);
    sum += round.n_t;
  }
  CHECK(result.total_samples == sum);
}

TEST_CASE("rage is deterministic under a fixed seed") {
  const Instance inst = gen_benchmark(2, 0.01);
  RewardOracle a(inst, 77), b(inst, 77);
  const RunResult ra = rage_run(inst.arms(), inst.items(), 0.05, 0.2, a);
  const RunResult rb = rage_run(inst.arms(), inst.items(), 0.05, 0.2, b);
  CHECK(ra.recommended == rb.recommended);
  CHECK(ra.total_samples == rb.total_samples);
  REQUIRE(ra.phases.size() == rb.phases.size());
  for (std::size_t i = 0; i < ra.phases.size(); ++i) {
    CHECK(ra.phases[i].n_t == rb.phases[i].n_t);
    CHECK((ra.phases[i].theta_hat - rb.phases[i].theta_hat).norm() == 0.0);
  }
}

TEST_CASE("rage validates its inputs") {
  const Instance inst = two_orthogonal();
  RewardOracle oracle(inst, 1);
  CHECK_THROWS_AS(rage_run(inst.arms(), {}, 0.05, 0.2, oracle),
                  structural_error);
  CHECK_THROWS_AS(rage_run(inst.arms(), inst.items(), 1.5, 0.2, oracle),
                  structural_error);
  CHECK_THROWS_AS(rage_run(inst.arms(), inst.items(), 0.05, -1.0, oracle),
                  structural_error);
}

TEST_CASE("rage stays delta-PAC at desk scale across generators") {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_benchmark(2, 0.01);
    RewardOracle oracle(inst, mix_seed(100, seed));
    const RunResult r = rage_run(inst.arms(), inst.items(), 0.05, 0.2, oracle);
    failures += r.recommended != inst.best_item();
  }
  CHECK(failures <= 2);

  failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_many_arms(8, seed + 1);
    RewardOracle oracle(inst, mix_seed(200, seed));
    const RunResult r = rage_run(inst.arms(), inst.items(), 0.05, 0.02, oracle);
    failures += r.recommended != inst.best_item();
  }
  CHECK(failures <= 2);

  failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_sphere(3, 8, 0.01, seed + 1);
    RewardOracle oracle(inst, mix_seed(300, seed));
    const RunResult r = rage_run(inst.arms(), inst.items(), 0.05, 0.2, oracle);
    failures += r.recommended != inst.best_item();
  }
  CHECK(failures <= 2);
}

TEST_CASE("rage sample totals respect the worst-case envelope") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = gen_benchmark(2, 0.01);
    RewardOracle oracle(inst, mix_seed(400, seed));
    const RunResult r = rage_run(inst.arms(), inst.items(), 0.05, 0.2, oracle);
    CHECK(r.total_samples <= theorem2_bound(inst, 0.05, 0.2));
  }
  const Instance trans = gen_transductive(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RewardOracle oracle(trans, mix_seed(500, seed));
    const RunResult r =
        rage_run(trans.arms(), trans.items(), 0.05, 0.2, oracle);
    CHECK(r.total_samples <= theorem2_bound(trans, 0.05, 0.2));
  }
}
