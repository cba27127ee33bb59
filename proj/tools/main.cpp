// Command line front end: instance generation, design solves, single runs,
// and seeded experiment sweeps with CSV output.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "tlb/baselines.hpp"
#include "tlb/bounds.hpp"
#include "tlb/env.hpp"
#include "tlb/experiment.hpp"
#include "tlb/json_io.hpp"
#include "tlb/rage.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

tlb::Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    values.push_back(std::stod(part));
  }
  if (values.empty()) throw tlb::structural_error("--y: empty vector");
  tlb::Vector y(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = values[i];
  }
  return y;
}

int cmd_gen(const std::string& generator, int d, int n, double alpha,
            std::uint64_t seed, const std::string& out) {
  tlb::Instance instance = [&] {
    if (generator == "benchmark") return tlb::gen_benchmark(d, alpha);
    if (generator == "many_arms") return tlb::gen_many_arms(n, seed);
    if (generator == "sphere") return tlb::gen_sphere(d, n, alpha, seed);
    if (generator == "transductive") return tlb::gen_transductive(d);
    throw tlb::structural_error("unknown generator: " + generator);
  }();
  tlb::save_instance(instance, out);
  std::cout << "wrote " << out << " (" << instance.label() << ")\n";
  return 0;
}

int cmd_design(const std::string& path, const std::string& target,
               const std::string& y_text, const tlb::SolverConfig& solver) {
  const tlb::Instance instance = tlb::load_instance(path);
  tlb::DirectionSet dirs;
  if (target == "all-pairs") {
    dirs = tlb::directions(instance.items());
  } else if (target == "star") {
    dirs = tlb::star_directions(
        instance.items()[static_cast<std::size_t>(instance.best_item())],
        instance.items(), instance.theta_star());
  } else if (target == "g-optimal") {
    dirs.directions = instance.arms();
    dirs.divisors.assign(instance.arms().size(), 1.0);
  } else if (target == "single") {
    dirs.directions.push_back(parse_vector(y_text));
    dirs.divisors.push_back(1.0);
  } else {
    throw tlb::structural_error("unknown design target: " + target);
  }
  const tlb::Design design = tlb::min_max_design(instance.arms(), dirs, solver);
  std::cout << tlb::design_to_json(design).dump(2) << '\n';
  return 0;
}

int cmd_run(const std::string& path, const std::string& algorithm, double delta,
            double eps, double v, std::uint64_t seed,
            const tlb::SolverConfig& solver) {
  const tlb::Instance instance = tlb::load_instance(path);
  tlb::RewardOracle oracle(instance, seed);
  nlohmann::json out;
  if (algorithm == "rage") {
    tlb::RunResult result = tlb::rage_run(instance.arms(), instance.items(),
                                          delta, eps, oracle, solver);
    result.correct = result.recommended == instance.best_item();
    out = tlb::run_result_to_json(result);
  } else if (algorithm == "xy_static" || algorithm == "xy_oracle") {
    tlb::StaticRunResult result =
        algorithm == "xy_static"
            ? tlb::xy_static_run(instance.arms(), instance.items(), delta, v,
                                 oracle, solver)
            : tlb::xy_oracle_run(instance.arms(), instance.items(),
                                 instance.theta_star(), delta, v, oracle,
                                 solver);
    result.correct = result.recommended == instance.best_item();
    out = tlb::static_result_to_json(result);
  } else {
    // Unknown algorithm is a usage error, checked before any sampling.
    std::cerr << "error: unknown algorithm " << algorithm << '\n';
    return kExitUsage;
  }
  out["algorithm"] = algorithm;
  out["seed"] = seed;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_diagnose(const std::string& path, double delta, double eps,
                 const tlb::SolverConfig& solver) {
  const tlb::Instance instance = tlb::load_instance(path);
  const tlb::InstanceDiagnostics diag =
      tlb::diagnose(instance, delta, eps, solver);
  std::cout << tlb::diagnostics_to_json(diag).dump(2) << '\n';
  return 0;
}

int cmd_experiment(const std::string& path, const std::string& out_override,
                   const tlb::SolverConfig* solver_override) {
  tlb::ExperimentConfig config = tlb::load_config(path);
  if (!out_override.empty()) config.out = out_override;
  if (solver_override != nullptr) config.solver = *solver_override;
  const std::vector<tlb::ResultRow> rows = tlb::run_experiment(config);
  tlb::write_csv(config.out, rows);
  std::cout << tlb::summarize(rows);
  std::cout << "wrote " << config.out << " (" << rows.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transductive linear bandit experiments"};
  app.require_subcommand(1);

  tlb::SolverConfig solver;
  bool solver_touched = false;
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--fw-max-iters", solver.max_iters,
                    "Frank-Wolfe iteration cap")
        ->each([&](const std::string&) { solver_touched = true; });
    cmd->add_option("--fw-tol", solver.rel_tol,
                    "Frank-Wolfe relative-change stopping tolerance")
        ->each([&](const std::string&) { solver_touched = true; });
    cmd->add_option("--fw-threshold", solver.threshold,
                    "weight threshold applied after solving")
        ->each([&](const std::string&) { solver_touched = true; });
  };

  // gen
  auto* gen = app.add_subcommand("gen", "write an instance JSON file");
  std::string generator = "benchmark";
  int d = 5;
  int n = 10;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  std::string out_path = "instance.json";
  gen->add_option("--generator", generator,
                  "benchmark|many_arms|sphere|transductive");
  gen->add_option("--d", d, "dimension");
  gen->add_option("--n", n, "number of arms (many_arms, sphere)");
  gen->add_option("--alpha", alpha, "angle/interpolation parameter");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output path");

  // design
  auto* design = app.add_subcommand("design", "solve a min-max design");
  std::string design_file;
  std::string target = "all-pairs";
  std::string y_text;
  design->add_option("instance", design_file, "instance JSON file")->required();
  design->add_option("--target", target, "all-pairs|star|g-optimal|single");
  design->add_option("--y", y_text, "comma-separated direction for --target single");
  add_solver_flags(design);

  // run
  auto* run = app.add_subcommand("run", "run one algorithm on an instance");
  std::string run_file;
  std::string algorithm = "rage";
  double delta = 0.05;
  double eps = 0.2;
  double v = 1.1;
  run->add_option("instance", run_file, "instance JSON file")->required();
  run->add_option("--algorithm", algorithm, "rage|xy_static|xy_oracle");
  run->add_option("--delta", delta, "confidence level");
  run->add_option("--eps", eps, "rounding approximation factor");
  run->add_option("--v", v, "doubling base for static baselines");
  run->add_option("--seed", seed, "reward stream seed");
  add_solver_flags(run);

  // diagnose
  auto* diag = app.add_subcommand(
      "diagnose", "instance-optimality diagnostics (psi*, bounds, gaps)");
  std::string diag_file;
  diag->add_option("instance", diag_file, "instance JSON file")->required();
  diag->add_option("--delta", delta, "confidence level");
  diag->add_option("--eps", eps, "rounding approximation factor");
  add_solver_flags(diag);

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "run a seeded experiment sweep");
  std::string config_file;
  std::string out_override;
  experiment->add_option("config", config_file, "experiment config JSON")
      ->required();
  experiment->add_option("--out", out_override, "override the CSV output path");
  add_solver_flags(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(generator, d, n, alpha, seed, out_path);
    }
    if (design->parsed()) {
      return cmd_design(design_file, target, y_text, solver);
    }
    if (run->parsed()) {
      return cmd_run(run_file, algorithm, delta, eps, v, seed, solver);
    }
    if (diag->parsed()) {
      return cmd_diagnose(diag_file, delta, eps, solver);
    }
    if (experiment->parsed()) {
      return cmd_experiment(config_file, out_override,
                            solver_touched ? &solver : nullptr);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tlb::structural_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tlb::degenerate_instance_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
