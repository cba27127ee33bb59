#include "tlb/json_io.hpp"

#include <fstream>

namespace tlb {

using nlohmann::json;

namespace {

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw structural_error("instance json: vector of wrong arity");
  }
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      throw structural_error("instance json: non-numeric coordinate");
    }
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

std::vector<Vector> vectors_from_json(const json& j, int d) {
  if (!j.is_array() || j.empty()) {
    throw structural_error("instance json: expected a nonempty array of vectors");
  }
  std::vector<Vector> out;
  out.reserve(j.size());
  for (const json& row : j) out.push_back(vector_from_json(row, d));
  return out;
}

}  // namespace

json instance_to_json(const Instance& instance) {
  json j;
  j["label"] = instance.label();
  j["d"] = instance.d();
  json arms = json::array();
  for (const Vector& x : instance.arms()) arms.push_back(vector_to_json(x));
  j["arms"] = std::move(arms);
  json items = json::array();
  for (const Vector& z : instance.items()) items.push_back(vector_to_json(z));
  j["items"] = std::move(items);
  j["theta_star"] = vector_to_json(instance.theta_star());
  return j;
}

Instance instance_from_json(const json& j) {
  for (const char* key : {"label", "d", "arms", "items", "theta_star"}) {
    if (!j.contains(key)) {
      throw structural_error(std::string("instance json: missing key ") + key);
    }
  }
  if (!j["d"].is_number_integer()) {
    throw structural_error("instance json: d must be an integer");
  }
  const int d = j["d"].get<int>();
  if (d < 1) throw structural_error("instance json: d must be >= 1");
  return Instance(vectors_from_json(j["arms"], d),
                  vectors_from_json(j["items"], d),
                  vector_from_json(j["theta_star"], d),
                  j["label"].get<std::string>());
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error("cannot open instance file: " + path);
  json j = json::parse(in);  // parse errors propagate as json::parse_error
  return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw structural_error("cannot write instance file: " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

json design_to_json(const Design& design) {
  json j;
  j["weights"] = vector_to_json(design.weights);
  j["value"] = design.value;
  j["iterations"] = design.iterations;
  return j;
}

json allocation_to_json(const Allocation& allocation) {
  json j;
  j["counts"] = allocation.counts;
  j["total"] = allocation.total;
  return j;
}

json run_result_to_json(const RunResult& result) {
  json j;
  j["recommended"] = result.recommended;
  j["total_samples"] = result.total_samples;
  j["correct"] = result.correct;
  json phases = json::array();
  for (const PhaseRecord& rec : result.phases) {
    json p;
    p["t"] = rec.t;
    p["delta_t"] = rec.delta_t;
    p["design"] = design_to_json(rec.design);
    p["rho"] = rec.rho_t;
    p["n"] = rec.n_t;
    p["allocation"] = allocation_to_json(rec.allocation);
    p["theta_hat"] = vector_to_json(rec.theta_hat);
    p["active_before"] = rec.active_before;
    p["active_after"] = rec.active_after;
    phases.push_back(std::move(p));
  }
  j["phases"] = std::move(phases);
  return j;
}

json static_result_to_json(const StaticRunResult& result) {
  json j;
  j["recommended"] = result.recommended;
  j["total_samples"] = result.total_samples;
  j["phases_evaluated"] = result.phases_evaluated;
  j["correct"] = result.correct;
  return j;
}

json diagnostics_to_json(const InstanceDiagnostics& diag) {
  json j;
  j["psi_star"] = diag.psi_star;
  j["lambda_star"] = design_to_json(diag.lambda_star);
  j["lower_bound"] = diag.lower_bound;
  j["theorem2_bound"] = diag.theorem2_bound;
  j["gaps"] = diag.gaps;
  j["delta_min"] = diag.delta_min;
  return j;
}

}  // namespace tlb
