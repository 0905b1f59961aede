#include "arces/pipeline.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "arces/controller.hpp"
#include "arces/provision.hpp"

namespace arces {

namespace {

TrainConfig train_config_from(const RunConfig& cfg) {
    TrainConfig tc;
    tc.lookback = cfg.lookback;
    tc.hidden = cfg.hidden;
    tc.epochs = cfg.epochs;
    tc.step_size = cfg.step_size;
    tc.seed = cfg.seed;
    tc.period = cfg.seasonal_period;
    return tc;
}

bool same_control(const ControlInput& a, const ControlInput& b) {
    if (a.M != b.M || a.Y != b.Y || a.zeta != b.zeta) return false;
    if (a.allocs.size() != b.allocs.size()) return false;
    for (std::size_t i = 0; i < a.allocs.size(); ++i) {
        if (a.allocs[i].load != b.allocs[i].load) return false;
        if (a.allocs[i].freq != b.allocs[i].freq) return false;
        if (a.allocs[i].rate != b.allocs[i].rate) return false;
    }
    return true;
}

}  // namespace

SimulateOutput simulate_pipeline(const RunConfig& cfg) {
    Trace trace = build_trace(cfg);
    auto [workload_model, harvest_model] = build_models(cfg, trace);

    RunOptions opts;
    opts.kind = cfg.controller;
    opts.horizon = cfg.horizon;
    opts.start_slot = cfg.start_slot;
    opts.initial_level = cfg.initial_level;
    opts.prune_dominated = cfg.prune;

    SimulateOutput out;
    if (cfg.controller == ControllerKind::kNoManagement) {
        out.result = run(trace, workload_model, harvest_model, cfg.params, opts);
    } else {
        out.result = run_with_baseline(trace, workload_model, harvest_model, cfg.params, opts);
    }
    out.csv = records_to_csv(out.result.records);
    return out;
}

std::vector<ForecastReport> forecast_eval_pipeline(const RunConfig& cfg) {
    Trace trace = build_trace(cfg);
    TrainConfig tc = train_config_from(cfg);
    std::vector<ForecastReport> reports;
    for (ForecastKind kind : {ForecastKind::kPersistence, ForecastKind::kSeasonalNaive,
                              ForecastKind::kRecurrent}) {
        reports.push_back(evaluate(kind, trace.workload, cfg.horizon, tc));
    }
    return reports;
}

SweepOutput sweep_pipeline(const RunConfig& cfg) {
    Trace trace = build_trace(cfg);
    SweepOutput out;
    out.entries = per_task_energy_curve(trace, cfg.controller, cfg.params, cfg.kappa_values);
    std::ostringstream os;
    os << "kappa_e,M,energy_per_task\n";
    os.setf(std::ios::fixed);
    os.precision(9);
    for (const SweepEntry& e : out.entries) {
        os << e.kappa_e << ',' << e.M << ',' << e.energy_per_task << '\n';
    }
    out.csv = os.str();
    return out;
}

OracleCheckOutput oracle_check_pipeline(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> load_dist(10.5, 50.0);
    std::uniform_real_distribution<double> harvest_dist(0.0, 2000.0);
    std::uniform_real_distribution<double> prev_load_dist(0.0, 50.0);
    std::uniform_real_distribution<double> level_dist(p.B_low(), p.B_max);
    std::uniform_real_distribution<double> pending_dist(0.0, 100.0);
    std::uniform_int_distribution<int> bs_dist(1, 300);
    std::uniform_int_distribution<long> slot_dist(0, 5);

    PlanOptions plain{cfg.horizon, false};
    PlanOptions pruned{cfg.horizon, true};

    OracleCheckOutput out;
    out.instances = cfg.instances;
    for (int i = 0; i < cfg.instances; ++i) {
        std::vector<double> L_hat(static_cast<std::size_t>(cfg.horizon));
        std::vector<double> H_hat(static_cast<std::size_t>(cfg.horizon));
        for (double& v : L_hat) v = load_dist(rng);
        for (double& v : H_hat) v = harvest_dist(rng);

        int n_bs = bs_dist(rng);
        double L0 = prev_load_dist(rng);
        std::uniform_int_distribution<int> m_dist(vm_count(L0, p), p.M_max);
        ControlInput prev = build_control(L0, m_dist(rng), n_bs, p);

        ControllerContext ctx;
        ctx.prev = prev;
        ctx.state = SystemState{prev.M, prev.Y, level_dist(rng)};
        ctx.pending_out = pending_dist(rng);
        ctx.slot = slot_dist(rng);
        ctx.n_bs = n_bs;

        PlanResult search = arces_plan(ctx, L_hat, H_hat, p, plain);
        PlanResult search_pruned = arces_plan(ctx, L_hat, H_hat, p, pruned);
        PlanResult reference = brute_force_oracle(ctx, L_hat, H_hat, p);

        bool ok = search.cost == reference.cost &&
                  search.failure == reference.failure &&
                  same_control(search.control, reference.control) &&
                  search_pruned.cost == reference.cost &&
                  same_control(search_pruned.control, reference.control);
        if (!ok) ++out.mismatches;
    }
    return out;
}

}  // namespace arces
