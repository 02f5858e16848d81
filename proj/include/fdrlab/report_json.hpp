#pragma once

#include <string>

#include <json.hpp>

#include "fdrlab/analysis.hpp"

namespace fdrlab {

using json = nlohmann::ordered_json;

json to_json(const TestResult& result);
json to_json(const SimulationConfig& cfg);
json to_json(const SimulationReport& report);
json to_json(const VerificationReport& report);
json to_json(const Table1Report& report);

// Parses the simulate/verify run configuration. Unknown keys are errors and
// every problem found is reported in one ConfigError. The optional "threads"
// key lands in *threads when present.
SimulationConfig simulation_config_from_json(const json& j,
                                             int* threads = nullptr);

}  // namespace fdrlab
