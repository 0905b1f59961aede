#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arces/forecast.hpp"
#include "arces/params.hpp"
#include "arces/simulator.hpp"

namespace arces {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Synthetic trace recipe.  The defaults describe the canonical two-day
// noiseless diurnal scenario: day one is forecaster warmup, day two is
// simulated.
struct SynthSpec {
    std::size_t slots = 2880;
    double period = 1440.0;
    double workload_peak = 40.0;        // Mbit per slot at midday
    double workload_trough = 0.0;
    double workload_noise_std = 0.0;
    double solar_peak = 600.0;          // J per slot at midday
    double solar_trough = 0.0;
    double solar_noise_std = 0.0;
    bool solar_scale_to_battery = false;
    double bs_peak = 120.0;             // base stations, rounded and kept >= 1
    double bs_trough = 1.0;
};

// Everything one CLI invocation needs.  Flat `key = value` files with `#`
// comments populate it; unknown and duplicate keys are rejected.
struct RunConfig {
    SystemParams params;

    std::optional<std::string> workload_csv;
    std::optional<std::string> solar_csv;
    std::optional<std::string> bs_csv;
    SynthSpec synth;

    ControllerKind controller = ControllerKind::kArces;
    ForecastKind forecaster = ForecastKind::kSeasonalNaive;
    int horizon = 3;
    std::uint32_t seed = 1;
    std::size_t start_slot = 1440;
    double initial_level = -1.0;  // negative selects B_up
    bool prune = false;
    std::string out;

    int seasonal_period = 1440;
    int lookback = 4;
    int hidden = 4;
    int epochs = 200;
    double step_size = 0.5;

    std::vector<double> kappa_values = {0.001, 0.005};
    int instances = 100;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Trace from the configured sources: CSV paths win over synthesis per series.
Trace build_trace(const RunConfig& cfg);

// Workload and harvest forecasters fitted on the warmup prefix
// [0, start_slot).  With no warmup, an untrained persistence model whose
// bounds span the physically representable range is returned.
std::pair<ForecastModel, ForecastModel> build_models(const RunConfig& cfg, const Trace& trace);

}  // namespace arces
