#pragma once

#include <json.hpp>

#include "tlb/baselines.hpp"
#include "tlb/bounds.hpp"
#include "tlb/env.hpp"
#include "tlb/rage.hpp"

namespace tlb {

// Instance file schema:
//   { "label": str, "d": int, "arms": [[f64,...]], "items": [[f64,...]],
//     "theta_star": [f64,...] }
// Serialization round-trips coefficients exactly.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

nlohmann::json design_to_json(const Design& design);
nlohmann::json allocation_to_json(const Allocation& allocation);
nlohmann::json run_result_to_json(const RunResult& result);
nlohmann::json static_result_to_json(const StaticRunResult& result);
nlohmann::json diagnostics_to_json(const InstanceDiagnostics& diag);

}  // namespace tlb
