#include "arces/battery.hpp"

#include <stdexcept>

namespace arces {

double plan_purchase(double B, double H_hat, const SystemParams& p) {
    if (H_hat < 0.0) throw std::invalid_argument("plan_purchase: H_hat must be >= 0");
    if (B < 0.0) throw std::invalid_argument("plan_purchase: B must be >= 0");
    if (B + H_hat >= p.B_up()) return 0.0;
    return p.B_up() - B;
}

BatteryStepResult battery_step(BatteryState& state, double H, double theta,
                               double E, const SystemParams& p) {
    if (H < 0.0) throw std::invalid_argument("battery_step: H must be >= 0");
    if (theta < 0.0) throw std::invalid_argument("battery_step: theta must be >= 0");
    if (E < 0.0) throw std::invalid_argument("battery_step: E must be >= 0");

    state.harvest_total.add(H);
    state.grid_total.add(E);
    state.drawn_total.add(theta);
    state.level.add(H);
    state.level.add(E);
    state.level.add(-theta);

    BatteryStepResult result;
    const double raw = state.level.value();
    if (raw > p.B_max) {
        result.curtailed = raw - p.B_max;
        state.curtailed_total.add(result.curtailed);
        state.level.add(-result.curtailed);
    } else if (raw < 0.0) {
        result.deficit = true;
        state.deficit_total.add(-raw);
        state.level.add(-raw);
    }
    result.level = state.level.value();
    return result;
}

double conservation_residual(const BatteryState& state, double initial_level) {
    // Combined with compensation as well: at 1e6 J gross flow the plain
    // seven-term sum would round near the 1e-9 J budget by itself.
    CompensatedSum r;
    r.add(state.level.value());
    r.add(-initial_level);
    r.add(-state.harvest_total.value());
    r.add(-state.grid_total.value());
    r.add(state.drawn_total.value());
    r.add(state.curtailed_total.value());
    r.add(-state.deficit_total.value());
    return r.value();
}

}  // namespace arces
