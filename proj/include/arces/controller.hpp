#pragma once

#include <cstddef>
#include <vector>

#include "arces/battery.hpp"
#include "arces/control.hpp"
#include "arces/energy.hpp"
#include "arces/forecast.hpp"
#include "arces/params.hpp"
#include "arces/provision.hpp"

namespace arces {

// Observable server state at the start of a slot.
struct SystemState {
    int M = 1;
    int Y = 1;
    double B = 0.0;
};

// Everything the controllers need about the current slot: the state, the
// control executed in the previous slot (switching costs are charged against
// its frequencies), the output bits queued for the next batch transmission,
// the absolute slot index (batch slots are where (slot+1) % Upsilon == 0) and
// the observed base-station count.
struct ControllerContext {
    SystemState state;
    ControlInput prev;
    double pending_out = 0.0;
    long slot = 0;
    int n_bs = 1;
};

// One-slot state propagation shared by the planner, the oracle and the
// simulator: energy of `control` given the previous control, the purchase
// decision from (B, H_hat) and the battery update.
struct Transition {
    SystemState next;
    EnergyBreakdown energy;
    double purchase = 0.0;
    double curtailed = 0.0;
    bool deficit = false;
};

Transition predict_transition(const SystemState& state, const ControlInput& prev,
                              const ControlInput& control, double L_in,
                              double H, double L_out_batch, const SystemParams& p);

// Max provisioning: all M_max VMs at f_max, even load split, NIC always on,
// all driver slots active.
ControlInput no_management_control(double L, const SystemParams& p);

struct PlanResult {
    ControlInput control;
    double cost = 0.0;    // minimum total forecast energy over the horizon [J]
    bool failure = false; // no feasible depth-T path; control falls back to max provisioning
    std::size_t nodes = 0;
};

struct PlanOptions {
    int horizon = 3;
    bool prune_dominated = false;
};

// Limited-lookahead plan: expands every candidate VM count (plus the max
// provisioning sentinel) against the forecast workload/harvest sequences,
// breadth first to the horizon, and returns the first control of the
// cheapest feasible path.  Cost ties break on lower M, then lower Y, then
// candidate order.
PlanResult arces_plan(const ControllerContext& ctx,
                      const std::vector<double>& L_hat,
                      const std::vector<double>& H_hat,
                      const SystemParams& p, const PlanOptions& opts);

// Reference search over the same transition model: recursive enumeration of
// every control sequence.  Guards against more than max_paths sequences.
PlanResult brute_force_oracle(const ControllerContext& ctx,
                              const std::vector<double>& L_hat,
                              const std::vector<double>& H_hat,
                              const SystemParams& p,
                              std::size_t max_paths = 1000000);

// Observation history available to the controller at the current slot.
struct Histories {
    Series workload;
    Series harvest;
};

// arces_plan fed by the forecasters.
PlanResult arces_step(const ControllerContext& ctx, const Histories& h,
                      const ForecastModel& workload_model,
                      const ForecastModel& harvest_model,
                      const SystemParams& p, const PlanOptions& opts);

struct IrsOptions {
    double epsilon = 0.01;  // relative served-load tolerance
    double damping = 0.5;   // per-iteration move toward the target split
    int max_iterations = 100;
};

struct IrsResult {
    ControlInput control;
    int iterations = 0;
    bool converged = false;
};

// Myopic baseline: relaxes the previous allocation toward the even split over
// vm_count(L) VMs, re-selecting frequencies every iteration, until the served
// load is within epsilon of L and the selected capacity covers L.
IrsResult irs_step(const ControllerContext& ctx, double L, const SystemParams& p,
                   const IrsOptions& opts);

}  // namespace arces
