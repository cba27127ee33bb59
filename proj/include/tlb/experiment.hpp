#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlb/bounds.hpp"
#include "tlb/design.hpp"
#include "tlb/env.hpp"

namespace tlb {

// Which instance family to run and its fixed parameters. A sweep overrides
// one parameter per cell.
struct GeneratorSpec {
  std::string name;  // benchmark | many_arms | sphere | transductive
  int d = 5;
  int n = 10;
  double alpha = 0.01;
};

struct ExperimentConfig {
  GeneratorSpec generator;
  std::vector<std::string> algorithms;  // subset of rage, xy_static, xy_oracle
  double delta = 0.05;
  double eps = 0.2;
  int trials = 20;
  std::uint64_t base_seed = 0;
  std::string sweep_param;            // empty when not sweeping
  std::vector<double> sweep_values;
  double v = 1.1;                     // doubling base for the static baselines
  SolverConfig solver;
  bool timing = true;                 // wall_ms column; disable for byte-stable reruns
  std::string out = "results.csv";
};

struct ResultRow {
  std::string algorithm;
  std::string generator;
  std::optional<double> sweep_value;
  int trial = 0;
  std::uint64_t seed = 0;
  long long samples = 0;
  bool correct = false;
  long long wall_ms = 0;
  double psi_star = 0.0;
  double lower_bound = 0.0;
  long long theorem2_bound = 0;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// Stable 64-bit row seed: base ^ fnv1a(algorithm | sweep | trial).
std::uint64_t derive_seed(std::uint64_t base, const std::string& algorithm,
                          std::optional<double> sweep_value, int trial);

// Runs every (algorithm, sweep value, trial) cell, trials in a thread pool,
// and returns rows sorted by (algorithm, sweep value, trial). Rerunning with
// the same config reproduces the rows exactly (modulo wall_ms when timing).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string csv_header();
std::string to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

// Per-(algorithm, sweep) mean +- standard error of the sample counts, plus
// failure tallies. stderr is empty for single-trial cells.
std::string summarize(const std::vector<ResultRow>& rows);

}  // namespace tlb
