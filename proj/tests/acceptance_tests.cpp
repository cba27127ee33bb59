// Acceptance suite: one self-contained check per shipped guarantee, each
// printed as a PASS/FAIL line. Returns the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "tlb/baselines.hpp"
#include "tlb/bounds.hpp"
#include "tlb/env.hpp"
#include "tlb/experiment.hpp"
#include "tlb/rage.hpp"
#include "tlb/rounding.hpp"

using namespace tlb;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail, double elapsed) {
  std::printf("[%s] criterion %2d %-34s %s (%.1fs)\n", pass ? "PASS" : "FAIL",
              criterion, name.c_str(), detail.c_str(), elapsed);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<Vector> random_unit_arms(int d, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Vector> arms;
  arms.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vector x(d);
    double norm = 0.0;
    do {
      for (int j = 0; j < d; ++j) x[j] = gauss(rng);
      norm = x.norm();
    } while (norm < 1e-12);
    arms.push_back(x / norm);
  }
  return arms;
}

struct CellStats {
  double mean_samples = 0.0;
  int failures = 0;
  int trials = 0;
};

CellStats stats_for(const std::vector<ResultRow>& rows,
                    const std::string& algorithm, double sweep_value) {
  CellStats out;
  for (const ResultRow& row : rows) {
    if (row.algorithm != algorithm) continue;
    if (row.sweep_value.has_value() && *row.sweep_value != sweep_value) {
      continue;
    }
    out.mean_samples += static_cast<double>(row.samples);
    out.failures += row.correct ? 0 : 1;
    ++out.trials;
  }
  if (out.trials > 0) out.mean_samples /= out.trials;
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1_kiefer_wolfowitz() {
  Timer timer;
  std::mt19937_64 rng(2025);
  double worst_rel = 0.0;
  const int d = 5;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Vector> arms = random_unit_arms(d, 30, rng);
    DirectionSet dirs;
    dirs.directions = arms;
    dirs.divisors.assign(arms.size(), 1.0);
    const Design design = min_max_design(arms, dirs);
    worst_rel = std::max(worst_rel,
                         std::abs(design.value - d) / static_cast<double>(d));
  }
  const double elapsed = timer.seconds();
  std::ostringstream detail;
  detail << "max |value-d|/d = " << worst_rel;
  report(1, "Kiefer-Wolfowitz G-optimal value", worst_rel <= 0.05 &&
             elapsed < 30.0, detail.str(), elapsed);
}

void criterion_2_closed_form() {
  Timer timer;
  Vector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  DirectionSet dirs;
  dirs.directions.push_back(e1 - e2);
  dirs.divisors.push_back(1.0);
  const Design design = min_max_design({e1, e2}, dirs);
  const bool pass = std::abs(design.value - 4.0) <= 0.04 &&
                    std::abs(design.weights[0] - 0.5) <= 0.02 &&
                    std::abs(design.weights[1] - 0.5) <= 0.02 &&
                    timer.seconds() < 1.0;
  std::ostringstream detail;
  detail << "value = " << design.value << ", weights = ("
         << design.weights[0] << ", " << design.weights[1] << ")";
  report(2, "closed-form two-arm design", pass, detail.str(), timer.seconds());
}

void criterion_3_rounding() {
  Timer timer;
  std::mt19937_64 rng(7);
  const double eps = 0.2;
  int exactness_failures = 0;
  double worst_ratio = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const int n_arms = d + 2 + static_cast<int>(rng() % 8);
    std::vector<Vector> arms = random_unit_arms(d, n_arms, rng);
    const int n_items = 2 + static_cast<int>(rng() % 4);
    std::vector<Vector> items(arms.begin(), arms.begin() + n_items);
    const DirectionSet dirs = directions(items);
    const Design design = min_max_design(arms, dirs);

    const long long r = min_samples(d, eps);
    const long long n =
        r + static_cast<long long>(rng() % static_cast<std::uint64_t>(4 * r));
    const Allocation alloc = apportion(design, n);

    long long total = 0;
    for (long long c : alloc.counts) total += c;
    if (total != n) ++exactness_failures;

    Vector counts(static_cast<Eigen::Index>(alloc.counts.size()));
    for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
      counts[static_cast<Eigen::Index>(i)] =
          static_cast<double>(alloc.counts[i]);
    }
    const double achieved = design_objective(arms, counts, dirs);
    const double allowed = (1.0 + eps) * design.value / static_cast<double>(n);
    worst_ratio = std::max(worst_ratio, achieved / allowed);
  }
  const double elapsed = timer.seconds();
  std::ostringstream detail;
  detail << "sum mismatches = " << exactness_failures
         << ", worst efficiency ratio = " << worst_ratio;
  report(3, "apportionment exactness+efficiency",
         exactness_failures == 0 && worst_ratio <= 1.0 + 1e-9 &&
             elapsed < 30.0,
         detail.str(), elapsed);
}

std::vector<ResultRow> benchmark_d5_rows() {
  ExperimentConfig config;
  config.generator.name = "benchmark";
  config.generator.d = 5;
  config.generator.alpha = 0.01;
  config.algorithms = {"rage", "xy_static", "xy_oracle"};
  config.delta = 0.05;
  config.eps = 0.2;
  config.trials = 20;
  config.base_seed = 20190528;
  config.timing = false;
  return run_experiment(config);
}

void criterion_4_to_7(const std::vector<ResultRow>& rows) {
  // 4: delta-PAC with binomial slack on the paper's observed zero failures.
  {
    Timer timer;
    const CellStats rage = stats_for(rows, "rage", 0.0);
    const CellStats stat = stats_for(rows, "xy_static", 0.0);
    const CellStats oracle = stats_for(rows, "xy_oracle", 0.0);
    std::ostringstream detail;
    detail << "failures rage/static/oracle = " << rage.failures << "/"
           << stat.failures << "/" << oracle.failures << " of 20";
    report(4, "benchmark d=5 delta-PAC", rage.trials == 20 &&
               stat.trials == 20 && oracle.trials == 20 &&
               rage.failures <= 2 && stat.failures <= 2 &&
               oracle.failures <= 2,
           detail.str(), timer.seconds());
  }
  // 5: mean-sample ordering of the three allocations.
  {
    Timer timer;
    const double rage = stats_for(rows, "rage", 0.0).mean_samples;
    const double stat = stats_for(rows, "xy_static", 0.0).mean_samples;
    const double oracle = stats_for(rows, "xy_oracle", 0.0).mean_samples;
    std::ostringstream detail;
    detail << "mean oracle/rage/static = " << oracle << "/" << rage << "/"
           << stat << " (rage/static = " << rage / stat << ")";
    report(5, "benchmark ordering oracle<=rage<0.5static",
           oracle <= rage && rage < 0.5 * stat, detail.str(), timer.seconds());
  }
  // 6: every rage trial sits inside the worst-case envelope.
  {
    Timer timer;
    int violations = 0;
    for (const ResultRow& row : rows) {
      if (row.algorithm == "rage" && row.samples > row.theorem2_bound) {
        ++violations;
      }
    }
    std::ostringstream detail;
    detail << violations << " violations across 20 trials";
    report(6, "sample envelope on every trial", violations == 0, detail.str(),
           timer.seconds());
  }
  // 7: the information-theoretic floor sits below the rage mean.
  {
    Timer timer;
    const double rage_mean = stats_for(rows, "rage", 0.0).mean_samples;
    const double lb = rows.front().lower_bound;
    std::ostringstream detail;
    detail << "lower bound " << lb << " vs mean " << rage_mean;
    report(7, "lower bound below rage mean", lb <= rage_mean, detail.str(),
           timer.seconds());
  }
}

void criterion_8_gauge_sandwich() {
  Timer timer;
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  int violations = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const int n_arms = d + 1 + static_cast<int>(rng() % 6);
    std::vector<Vector> arms = random_unit_arms(d, n_arms, rng);
    const int n_items = 3 + static_cast<int>(rng() % 3);
    std::vector<Vector> items(
        arms.begin(),
        arms.begin() + std::min<std::ptrdiff_t>(n_items, n_arms));
    const DirectionSet dirs = directions(items);
    const double value = rho(arms, dirs);

    double norm_bound = 0.0;
    double min_gauge = kInfinity;
    for (const Vector& y : dirs.directions) {
      norm_bound = std::max(norm_bound, y.squaredNorm());
      min_gauge = std::min(min_gauge, gauge(arms, y));
    }
    if (!(value >= norm_bound * (1.0 - 1e-9))) ++violations;
    if (!(value <= 1.05 * d / (min_gauge * min_gauge))) ++violations;

    Vector y(d);
    for (int j = 0; j < d; ++j) y[j] = gauss(rng);
    DirectionSet single;
    single.directions.push_back(y);
    single.divisors.push_back(1.0);
    const double g = gauge(arms, y);
    if (!(rho(arms, single) <= 1.05 / (g * g))) ++violations;
  }
  std::ostringstream detail;
  detail << violations << " violations across 100 instances";
  report(8, "gauge sandwich bounds on rho",
         violations == 0 && timer.seconds() < 60.0, detail.str(),
         timer.seconds());
}

void criterion_9_adaptivity() {
  Timer timer;
  ExperimentConfig config;
  config.generator.name = "benchmark";
  config.generator.d = 10;
  config.algorithms = {"rage", "xy_static"};
  config.delta = 0.05;
  config.eps = 0.2;
  config.trials = 20;
  config.base_seed = 31;
  config.timing = false;
  config.sweep_param = "alpha";
  config.sweep_values = {0.1, 0.01};
  const std::vector<ResultRow> rows = run_experiment(config);

  const double rage_wide = stats_for(rows, "rage", 0.1).mean_samples;
  const double rage_narrow = stats_for(rows, "rage", 0.01).mean_samples;
  const double static_wide = stats_for(rows, "xy_static", 0.1).mean_samples;
  const double static_narrow = stats_for(rows, "xy_static", 0.01).mean_samples;
  const double rage_growth = rage_narrow / rage_wide;
  const double static_growth = static_narrow / static_wide;
  std::ostringstream detail;
  detail << "rage growth x" << rage_growth << ", static growth x"
         << static_growth;
  report(9, "adaptivity effect as alpha shrinks",
         rage_growth < 3.0 && static_growth > 10.0, detail.str(),
         timer.seconds());
}

void criterion_10_transductive() {
  Timer timer;
  ExperimentConfig config;
  config.generator.name = "transductive";
  config.algorithms = {"rage", "xy_static", "xy_oracle"};
  config.delta = 0.05;
  config.eps = 0.2;
  config.trials = 20;
  config.base_seed = 77;
  config.timing = false;
  config.sweep_param = "d";
  config.sweep_values = {4, 8, 12};
  const std::vector<ResultRow> rows = run_experiment(config);

  bool ordering = true;
  bool pac = true;
  std::ostringstream detail;
  for (double d : config.sweep_values) {
    const CellStats rage = stats_for(rows, "rage", d);
    const CellStats stat = stats_for(rows, "xy_static", d);
    const CellStats oracle = stats_for(rows, "xy_oracle", d);
    ordering = ordering && oracle.mean_samples <= rage.mean_samples &&
               rage.mean_samples < stat.mean_samples;
    pac = pac && rage.failures <= 2;
    detail << "d=" << d << ": " << oracle.mean_samples << "/"
           << rage.mean_samples << "/" << stat.mean_samples << " ";
  }
  report(10, "transductive ordering + success", ordering && pac, detail.str(),
         timer.seconds());
}

void criterion_11_determinism() {
  Timer timer;
  const fs::path config_path =
      fs::temp_directory_path() / "tlb_accept_config.json";
  const fs::path csv_a = fs::temp_directory_path() / "tlb_accept_a.csv";
  const fs::path csv_b = fs::temp_directory_path() / "tlb_accept_b.csv";
  {
    std::ofstream out(config_path);
    out << R"({"generator": {"name": "benchmark", "d": 2, "alpha": 0.1},
               "algorithms": ["rage", "xy_oracle"],
               "delta": 0.1, "trials": 3, "base_seed": 5, "timing": false})";
  }
  auto run_once = [&](const fs::path& csv) {
    const std::string cmd = std::string(TLB_CLI_PATH) + " experiment " +
                            config_path.string() + " --out " + csv.string() +
                            " > /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  const int code_a = run_once(csv_a);
  const int code_b = run_once(csv_b);
  std::ifstream a(csv_a, std::ios::binary), b(csv_b, std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  const bool pass = code_a == 0 && code_b == 0 && !sa.str().empty() &&
                    sa.str() == sb.str();
  std::ostringstream detail;
  detail << "exit codes " << code_a << "/" << code_b << ", "
         << (sa.str() == sb.str() ? "byte-identical" : "CSVs differ");
  report(11, "experiment rerun determinism", pass, detail.str(),
         timer.seconds());
  fs::remove(config_path);
  fs::remove(csv_a);
  fs::remove(csv_b);
}

}  // namespace

int main() {
  criterion_1_kiefer_wolfowitz();
  criterion_2_closed_form();
  criterion_3_rounding();
  {
    Timer timer;
    const std::vector<ResultRow> rows = benchmark_d5_rows();
    std::printf("-- benchmark d=5 experiment: %zu rows in %.1fs\n",
                rows.size(), timer.seconds());
    criterion_4_to_7(rows);
  }
  criterion_8_gauge_sandwich();
  criterion_9_adaptivity();
  criterion_10_transductive();
  criterion_11_determinism();

  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures;
}
