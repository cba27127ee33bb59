#include "tlb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "tlb/baselines.hpp"
#include "tlb/rage.hpp"

namespace tlb {

namespace {

const std::set<std::string> kAlgorithms = {"rage", "xy_static", "xy_oracle"};

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool generator_is_stochastic(const std::string& name) {
  return name == "many_arms" || name == "sphere";
}

GeneratorSpec apply_sweep(const GeneratorSpec& base, const std::string& param,
                          double value) {
  GeneratorSpec spec = base;
  if (param.empty()) return spec;
  if (param == "d") {
    spec.d = static_cast<int>(std::llround(value));
  } else if (param == "n") {
    spec.n = static_cast<int>(std::llround(value));
  } else if (param == "alpha") {
    spec.alpha = value;
  } else {
    throw structural_error("experiment: unknown sweep parameter " + param);
  }
  return spec;
}

Instance build_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.name == "benchmark") return gen_benchmark(spec.d, spec.alpha);
  if (spec.name == "many_arms") return gen_many_arms(spec.n, seed);
  if (spec.name == "sphere") return gen_sphere(spec.d, spec.n, spec.alpha, seed);
  if (spec.name == "transductive") return gen_transductive(spec.d);
  throw structural_error("experiment: unknown generator " + spec.name);
}

void validate_sweep(const GeneratorSpec& generator, const std::string& param) {
  if (param.empty()) return;
  const bool ok =
      (generator.name == "benchmark" && (param == "d" || param == "alpha")) ||
      (generator.name == "many_arms" && param == "n") ||
      (generator.name == "sphere" && (param == "d" || param == "n" ||
                                      param == "alpha")) ||
      (generator.name == "transductive" && param == "d");
  if (!ok) {
    throw structural_error("experiment: sweep parameter '" + param +
                           "' is not valid for generator " + generator.name);
  }
}

struct Cell {
  std::optional<double> sweep_value;
  const Instance* instance;
  const InstanceDiagnostics* diagnostics;
};

void run_pool(std::size_t tasks, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(hw, tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (std::thread& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  if (!j.contains("generator") || !j["generator"].contains("name")) {
    throw structural_error("config: generator.name is required");
  }
  const nlohmann::json& g = j["generator"];
  config.generator.name = g["name"].get<std::string>();
  if (g.contains("d")) config.generator.d = g["d"].get<int>();
  if (g.contains("n")) config.generator.n = g["n"].get<int>();
  if (g.contains("alpha")) config.generator.alpha = g["alpha"].get<double>();

  if (!j.contains("algorithms") || !j["algorithms"].is_array() ||
      j["algorithms"].empty()) {
    throw structural_error("config: algorithms must be a nonempty array");
  }
  for (const auto& a : j["algorithms"]) {
    config.algorithms.push_back(a.get<std::string>());
  }
  if (j.contains("delta")) config.delta = j["delta"].get<double>();
  if (j.contains("eps")) config.eps = j["eps"].get<double>();
  if (j.contains("trials")) config.trials = j["trials"].get<int>();
  if (j.contains("base_seed")) {
    config.base_seed = j["base_seed"].get<std::uint64_t>();
  }
  if (j.contains("sweep")) {
    config.sweep_param = j["sweep"]["param"].get<std::string>();
    for (const auto& val : j["sweep"]["values"]) {
      config.sweep_values.push_back(val.get<double>());
    }
    if (config.sweep_param.empty() || config.sweep_values.empty()) {
      throw structural_error("config: sweep needs a param and values");
    }
  }
  if (j.contains("v")) config.v = j["v"].get<double>();
  if (j.contains("timing")) config.timing = j["timing"].get<bool>();
  if (j.contains("out")) config.out = j["out"].get<std::string>();
  if (j.contains("solver")) {
    const nlohmann::json& s = j["solver"];
    if (s.contains("max_iters")) config.solver.max_iters = s["max_iters"].get<int>();
    if (s.contains("rel_tol")) config.solver.rel_tol = s["rel_tol"].get<double>();
    if (s.contains("threshold")) {
      config.solver.threshold = s["threshold"].get<double>();
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error("cannot open config file: " + path);
  return config_from_json(nlohmann::json::parse(in));
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& algorithm,
                          std::optional<double> sweep_value, int trial) {
  std::string token = algorithm;
  token += '|';
  if (sweep_value.has_value()) token += format_double(*sweep_value);
  token += '|';
  token += std::to_string(trial);
  return base ^ fnv1a64(token);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw structural_error("experiment: trials must be >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw structural_error("experiment: delta must be in (0, 1)");
  }
  if (config.algorithms.empty()) {
    throw structural_error("experiment: no algorithms requested");
  }
  for (const std::string& algo : config.algorithms) {
    if (kAlgorithms.count(algo) == 0) {
      throw structural_error("experiment: unknown algorithm " + algo);
    }
  }
  validate_sweep(config.generator, config.sweep_param);

  std::vector<std::optional<double>> sweep;
  if (config.sweep_param.empty()) {
    sweep.push_back(std::nullopt);
  } else {
    for (double value : config.sweep_values) sweep.push_back(value);
  }

  // Instances and diagnostics are built up front: stochastic generators draw
  // one instance per (sweep, trial) shared by all algorithms, deterministic
  // ones a single instance per sweep value. Any generator/parameter mismatch
  // surfaces here, before a single trial runs.
  const bool stochastic = generator_is_stochastic(config.generator.name);
  struct CellData {
    Instance instance;
    InstanceDiagnostics diagnostics;
  };
  std::map<std::pair<std::size_t, int>, CellData> cells;
  for (std::size_t s = 0; s < sweep.size(); ++s) {
    const GeneratorSpec spec = apply_sweep(
        config.generator, config.sweep_param, sweep[s].value_or(0.0));
    const int variants = stochastic ? config.trials : 1;
    for (int trial = 0; trial < variants; ++trial) {
      const std::uint64_t instance_seed = derive_seed(
          config.base_seed, "instance|" + config.generator.name, sweep[s],
          trial);
      Instance instance = build_instance(spec, instance_seed);
      InstanceDiagnostics diag =
          diagnose(instance, config.delta, config.eps, config.solver);
      cells.emplace(std::make_pair(s, trial),
                    CellData{std::move(instance), std::move(diag)});
    }
  }
  auto cell_of = [&](std::size_t s, int trial) -> const CellData& {
    return cells.at(std::make_pair(s, stochastic ? trial : 0));
  };

  struct Task {
    std::size_t algo;
    std::size_t sweep_index;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    for (std::size_t s = 0; s < sweep.size(); ++s) {
      for (int trial = 0; trial < config.trials; ++trial) {
        tasks.push_back({a, s, trial});
      }
    }
  }

  std::vector<ResultRow> rows(tasks.size());
  run_pool(tasks.size(), [&](std::size_t idx) {
    const Task& task = tasks[idx];
    const std::string& algo = config.algorithms[task.algo];
    const CellData& cell = cell_of(task.sweep_index, task.trial);
    const Instance& instance = cell.instance;

    ResultRow row;
    row.algorithm = algo;
    row.generator = config.generator.name;
    row.sweep_value = sweep[task.sweep_index];
    row.trial = task.trial;
    row.seed = derive_seed(config.base_seed, algo, sweep[task.sweep_index],
                           task.trial);
    row.psi_star = cell.diagnostics.psi_star;
    row.lower_bound = cell.diagnostics.lower_bound;
    row.theorem2_bound = cell.diagnostics.theorem2_bound;

    RewardOracle oracle(instance, row.seed);
    const auto start = std::chrono::steady_clock::now();
    int recommended = -1;
    if (algo == "rage") {
      const RunResult r = rage_run(instance.arms(), instance.items(),
                                   config.delta, config.eps, oracle,
                                   config.solver);
      recommended = r.recommended;
      row.samples = r.total_samples;
    } else if (algo == "xy_static") {
      const StaticRunResult r =
          xy_static_run(instance.arms(), instance.items(), config.delta,
                        config.v, oracle, config.solver);
      recommended = r.recommended;
      row.samples = r.total_samples;
    } else {
      const StaticRunResult r = xy_oracle_run(
          instance.arms(), instance.items(), instance.theta_star(),
          config.delta, config.v, oracle, config.solver);
      recommended = r.recommended;
      row.samples = r.total_samples;
    }
    if (config.timing) {
      row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
    row.correct = recommended == instance.best_item();
    rows[idx] = std::move(row);
  });

  // Task order is already (algorithm, sweep, trial).
  return rows;
}

std::string csv_header() {
  return "algorithm,generator,sweep_value,trial,seed,samples,correct,wall_ms,"
         "psi_star,lower_bound,theorem2_bound";
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const ResultRow& row : rows) {
    out << row.algorithm << ',' << row.generator << ',';
    if (row.sweep_value.has_value()) out << format_double(*row.sweep_value);
    out << ',' << row.trial << ',' << row.seed << ',' << row.samples << ','
        << (row.correct ? "true" : "false") << ',' << row.wall_ms << ','
        << format_double(row.psi_star) << ','
        << format_double(row.lower_bound) << ',' << row.theorem2_bound << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw structural_error("cannot write csv: " + path);
  out << to_csv(rows);
}

std::string summarize(const std::vector<ResultRow>& rows) {
  struct Agg {
    std::vector<double> samples;
    int failures = 0;
  };
  std::map<std::pair<std::string, std::string>, Agg> cells;
  for (const ResultRow& row : rows) {
    std::string sweep =
        row.sweep_value.has_value() ? format_double(*row.sweep_value) : "";
    Agg& agg = cells[{row.algorithm, sweep}];
    agg.samples.push_back(static_cast<double>(row.samples));
    if (!row.correct) ++agg.failures;
  }
  std::ostringstream out;
  for (const auto& [key, agg] : cells) {
    const std::size_t n = agg.samples.size();
    double mean = 0.0;
    for (double s : agg.samples) mean += s;
    mean /= static_cast<double>(n);
    std::string stderr_text;
    if (n > 1) {
      double ss = 0.0;
      for (double s : agg.samples) ss += (s - mean) * (s - mean);
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      stderr_text = format_double(sd / std::sqrt(static_cast<double>(n)));
    }
    out << "algorithm=" << key.first;
    if (!key.second.empty()) out << " sweep_value=" << key.second;
    out << " trials=" << n << " mean_samples=" << format_double(mean)
        << " stderr_samples=" << stderr_text << " failures=" << agg.failures
        << '\n';
  }
  return out.str();
}

}  // namespace tlb
