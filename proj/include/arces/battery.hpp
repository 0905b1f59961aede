#pragma once

#include <cmath>

#include "arces/params.hpp"

namespace arces {

// Neumaier-compensated running sum.  The battery ledger must balance to
// 1e-9 J over runs whose gross flows reach 1e6 J; plain double accumulation
// drifts past that.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Battery level plus the cumulative ledger of a run.  curtailed counts energy
// discarded at the full battery; deficit counts energy drawn past empty (a
// fault, reported by step()).
struct BatteryState {
    CompensatedSum level;
    CompensatedSum grid_total;
    CompensatedSum harvest_total;
    CompensatedSum drawn_total;
    CompensatedSum curtailed_total;
    CompensatedSum deficit_total;

    explicit BatteryState(double initial_level = 0.0) { level.add(initial_level); }

    double B() const { return level.value(); }
};

// Grid energy to request for the coming slot: 0 when the level plus the
// harvest forecast already reaches the purchase target B_up, otherwise the
// top-up B_up - B.
double plan_purchase(double B, double H_hat, const SystemParams& p);

struct BatteryStepResult {
    double level = 0.0;      // after the slot
    double curtailed = 0.0;  // clipped at B_max
    bool deficit = false;    // demanded more than was stored
};

// Applies one slot: level' = clamp(level + H - theta + E, 0, B_max), with the
// clamp residues recorded in the ledger.
BatteryStepResult battery_step(BatteryState& state, double H, double theta,
                               double E, const SystemParams& p);

// Ledger residual: level change minus (harvest + grid - drawn - curtailed
// + deficit).  Zero up to rounding for any sequence of steps.
double conservation_residual(const BatteryState& state, double initial_level);

}  // namespace arces
