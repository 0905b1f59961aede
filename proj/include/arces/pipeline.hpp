#pragma once

#include <string>
#include <vector>

#include "arces/config.hpp"
#include "arces/simulator.hpp"

namespace arces {

// Trace construction, model fitting, the controlled run, the no-management
// baseline and the CSV rendering for one configuration.  Deterministic per
// configuration.
struct SimulateOutput {
    RunResult result;
    std::string csv;
};

SimulateOutput simulate_pipeline(const RunConfig& cfg);

// n-step-ahead test RMSE (67/33 split) of each forecaster kind on the
// configured workload series.
std::vector<ForecastReport> forecast_eval_pipeline(const RunConfig& cfg);

struct SweepOutput {
    std::vector<SweepEntry> entries;
    std::string csv;
};

SweepOutput sweep_pipeline(const RunConfig& cfg);

// Random planning instances solved by both the lookahead search (pruned and
// unpruned) and the exhaustive enumeration; counts exact mismatches of the
// chosen control or its cost.
struct OracleCheckOutput {
    int instances = 0;
    int mismatches = 0;
};

OracleCheckOutput oracle_check_pipeline(const RunConfig& cfg);

}  // namespace arces
