#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arces/controller.hpp"
#include "arces/forecast.hpp"
#include "arces/params.hpp"
#include "arces/series.hpp"

namespace arces {

enum class ControllerKind { kArces, kIrs, kNoManagement };

const char* controller_kind_name(ControllerKind kind);
ControllerKind controller_kind_from_name(const std::string& name);

struct SlotRecord {
    long slot = 0;
    double L_in = 0.0;
    int M = 0;
    int Y = 0;
    int zeta = 0;
    EnergyBreakdown energy;
    double H = 0.0;
    double E = 0.0;
    double B = 0.0;  // battery level at the end of the slot
    double curtailed = 0.0;
    std::optional<double> savings_pct;
    std::vector<std::string> violations;
};

struct RunMetrics {
    double total_energy = 0.0;
    double total_grid = 0.0;
    double total_harvest = 0.0;
    double total_curtailed = 0.0;
    double final_level = 0.0;
    double conservation_residual = 0.0;
    std::size_t violation_slots = 0;
    std::map<std::string, std::size_t> violation_counts;
    std::optional<double> mean_savings_pct;
};

struct RunResult {
    std::vector<SlotRecord> records;
    RunMetrics metrics;
};

struct RunOptions {
    ControllerKind kind = ControllerKind::kArces;
    int horizon = 3;
    // Slots before start_slot only feed the forecaster histories; dynamics
    // and records begin at start_slot.
    std::size_t start_slot = 0;
    double initial_level = -1.0;  // negative selects B_up
    bool prune_dominated = false;
    IrsOptions irs;
};

// Trace-driven closed loop.  Controls are planned on forecasts but energy is
// charged on the actual workload with the chosen VM count; loads beyond the
// chosen capacity are served by raising frequencies and recorded as
// violations, never dropped.
RunResult run(const Trace& trace, const ForecastModel& workload_model,
              const ForecastModel& harvest_model, const SystemParams& p,
              const RunOptions& opts);

// Per-slot energy saving of `controlled` against `baseline` in percent;
// absent where the baseline drew nothing.
std::vector<std::optional<double>> savings_series(
    const std::vector<SlotRecord>& controlled,
    const std::vector<SlotRecord>& baseline);

// Runs opts.kind plus the no-management baseline on the same trace, attaches
// the savings column and its mean to the controlled run.
RunResult run_with_baseline(const Trace& trace, const ForecastModel& workload_model,
                            const ForecastModel& harvest_model, const SystemParams& p,
                            const RunOptions& opts);

struct SweepEntry {
    int M = 0;
    double kappa_e = 0.0;
    double energy_per_task = 0.0;  // J per served per-VM allocation
};

// Mean energy per served task with the VM count pinned to each M in
// 1..M_max, for each switching-cost coefficient.  Frequency selection and
// load splitting stay active; M values that cannot hold the trace's peak
// load are omitted.
std::vector<SweepEntry> per_task_energy_curve(const Trace& trace, ControllerKind kind,
                                              const SystemParams& p,
                                              const std::vector<double>& kappa_values);

// Fixed 6-decimal CSV with one row per slot.
void export_csv(const std::string& path, const std::vector<SlotRecord>& records);
std::string records_to_csv(const std::vector<SlotRecord>& records);

}  // namespace arces
