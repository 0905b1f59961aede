#include "arces/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "arces/battery.hpp"
#include "arces/provision.hpp"

namespace arces {

namespace {

constexpr double kTol = 1e-9;

ControlInput idle_control(int M) {
    ControlInput c;
    c.M = M;
    c.Y = 1;
    c.zeta = 0;
    c.allocs.assign(static_cast<std::size_t>(M), VmAllocation{});
    return c;
}

double capped_frequency(double lambda, const SystemParams& p) {
    const double required = lambda / p.Delta;
    for (double f : p.freq_set) {
        if (f >= required) return f;
    }
    return p.f_max();
}

// Re-materializes a planned control against the workload that actually
// arrived.  The VM count, driver count and split policy are kept; loads,
// frequencies and rates adapt.  Loads beyond the chosen capacity are split
// evenly and served at the highest admissible frequency.
ControlInput materialize(const ControlInput& planned, double L, const SystemParams& p) {
    if (planned.force_max_freq) {
        ControlInput c = no_management_control(L, p);
        c.Y = planned.Y;
        return c;
    }
    ControlInput c = planned;
    const double capacity = static_cast<double>(c.M) * p.lambda_max;
    std::vector<double> loads;
    if (L <= capacity * (1.0 + 1e-12)) {
        if (c.split == SplitPolicy::kFillFirst) {
            loads.assign(static_cast<std::size_t>(c.M), 0.0);
            double rest = L;
            for (auto& v : loads) {
                v = std::min(rest, p.lambda_max);
                rest -= v;
            }
        } else {
            loads.assign(static_cast<std::size_t>(c.M), L / static_cast<double>(c.M));
        }
    } else {
        loads.assign(static_cast<std::size_t>(c.M), L / static_cast<double>(c.M));
    }
    for (std::size_t m = 0; m < loads.size(); ++m) {
        c.allocs[m].load = loads[m];
        c.allocs[m].freq = capped_frequency(loads[m], p);
        c.allocs[m].rate = fixed_rate(loads[m], p);
    }
    c.zeta = (c.nic_always_on || L > 0.0) ? 1 : 0;
    return c;
}

// One-step harvest forecast used by the purchase rule; holds the last
// observation while the model's history requirement is unmet.
double harvest_forecast(const ForecastModel& model, const Series& history) {
    try {
        return forecast_raw(model, history, 1).front();
    } catch (const std::invalid_argument&) {
        return history.empty() ? 0.0 : std::max(0.0, history.back());
    }
}

}  // namespace

const char* controller_kind_name(ControllerKind kind) {
    switch (kind) {
        case ControllerKind::kArces: return "arces";
        case ControllerKind::kIrs: return "irs";
        case ControllerKind::kNoManagement: return "nomgmt";
    }
    return "unknown";
}

ControllerKind controller_kind_from_name(const std::string& name) {
    if (name == "arces") return ControllerKind::kArces;
    if (name == "irs") return ControllerKind::kIrs;
    if (name == "nomgmt") return ControllerKind::kNoManagement;
    throw std::invalid_argument("unknown controller kind: " + name);
}

RunResult run(const Trace& trace, const ForecastModel& workload_model,
              const ForecastModel& harvest_model, const SystemParams& p,
              const RunOptions& opts) {
    p.validate();
    if (trace.slots() == 0) throw std::invalid_argument("run: empty trace");
    if (opts.start_slot >= trace.slots()) {
        throw std::invalid_argument("run: start_slot beyond the trace");
    }
    if (opts.horizon < 1) throw std::invalid_argument("run: horizon must be >= 1");
    const double B0 = opts.initial_level < 0.0 ? p.B_up() : opts.initial_level;
    if (B0 > p.B_max) throw std::invalid_argument("run: initial level above B_max");

    BatteryState battery(B0);
    SystemState state{p.d, 1, B0};
    ControlInput prev = idle_control(p.d);
    double pending_out = 0.0;

    Histories hist;
    hist.workload.assign(trace.workload.begin(),
                         trace.workload.begin() + static_cast<std::ptrdiff_t>(opts.start_slot));
    hist.harvest.assign(trace.harvest.begin(),
                        trace.harvest.begin() + static_cast<std::ptrdiff_t>(opts.start_slot));

    RunResult result;
    result.records.reserve(trace.slots() - opts.start_slot);
    CompensatedSum theta_sum;

    for (std::size_t t = opts.start_slot; t < trace.slots(); ++t) {
        const double L = trace.workload[t];
        const double H = trace.harvest[t];
        const int n_bs = trace.bs_count[t];

        ControllerContext ctx;
        ctx.state = state;
        ctx.prev = prev;
        ctx.pending_out = pending_out;
        ctx.slot = static_cast<long>(t);
        ctx.n_bs = n_bs;

        SlotRecord rec;
        rec.slot = static_cast<long>(t);
        rec.L_in = L;
        rec.H = H;

        ControlInput planned;
        switch (opts.kind) {
            case ControllerKind::kArces: {
                PlanOptions popts;
                popts.horizon = opts.horizon;
                popts.prune_dominated = opts.prune_dominated;
                const PlanResult pr =
                    arces_step(ctx, hist, workload_model, harvest_model, p, popts);
                planned = pr.control;
                if (pr.failure) rec.violations.emplace_back("controller_failure");
                break;
            }
            case ControllerKind::kIrs: {
                try {
                    const IrsResult ir = irs_step(ctx, L, p, opts.irs);
                    planned = ir.control;
                    if (!ir.converged) rec.violations.emplace_back("irs_no_convergence");
                } catch (const std::invalid_argument&) {
                    planned = no_management_control(L, p);
                    rec.violations.emplace_back("controller_failure");
                }
                break;
            }
            case ControllerKind::kNoManagement:
                planned = no_management_control(L, p);
                break;
        }

        const ControlInput executed = materialize(planned, L, p);

        pending_out += L;
        double batch_out = 0.0;
        if ((static_cast<long>(t) + 1) % p.Upsilon == 0) {
            batch_out = pending_out;
            pending_out = 0.0;
        }

        rec.energy = total_energy(executed, prev, L, batch_out, p);
        const double H_hat = harvest_forecast(harvest_model, hist.harvest);
        rec.E = plan_purchase(state.B, H_hat, p);
        const BatteryStepResult bs = battery_step(battery, H, rec.energy.total(), rec.E, p);
        rec.B = bs.level;
        rec.curtailed = bs.curtailed;
        if (bs.deficit) rec.violations.emplace_back("energy_deficit");

        const ConstraintReport report = check_constraints(executed, state.B, p);
        for (const auto& code : report.violated) rec.violations.push_back(code);

        rec.M = executed.M;
        rec.Y = executed.Y;
        rec.zeta = executed.zeta;
        theta_sum.add(rec.energy.total());

        result.records.push_back(rec);

        state = SystemState{executed.M, executed.Y, bs.level};
        prev = executed;
        hist.workload.push_back(L);
        hist.harvest.push_back(H);
    }

    RunMetrics& m = result.metrics;
    m.total_energy = theta_sum.value();
    m.total_grid = battery.grid_total.value();
    m.total_harvest = battery.harvest_total.value();
    m.total_curtailed = battery.curtailed_total.value();
    m.final_level = battery.B();
    m.conservation_residual = conservation_residual(battery, B0);
    for (const auto& rec : result.records) {
        if (!rec.violations.empty()) ++m.violation_slots;
        for (const auto& code : rec.violations) ++m.violation_counts[code];
    }
    return result;
}

std::vector<std::optional<double>> savings_series(
    const std::vector<SlotRecord>& controlled,
    const std::vector<SlotRecord>& baseline) {
    if (controlled.size() != baseline.size()) {
        throw std::invalid_argument("savings_series: runs differ in length");
    }
    std::vector<std::optional<double>> out(controlled.size());
    for (std::size_t i = 0; i < controlled.size(); ++i) {
        const double base = baseline[i].energy.total();
        if (base > 0.0) {
            out[i] = 100.0 * (base - controlled[i].energy.total()) / base;
        }
    }
    return out;
}

RunResult run_with_baseline(const Trace& trace, const ForecastModel& workload_model,
                            const ForecastModel& harvest_model, const SystemParams& p,
                            const RunOptions& opts) {
    RunResult controlled = run(trace, workload_model, harvest_model, p, opts);
    RunOptions base_opts = opts;
    base_opts.kind = ControllerKind::kNoManagement;
    const RunResult baseline = run(trace, workload_model, harvest_model, p, base_opts);

    const auto savings = savings_series(controlled.records, baseline.records);
    CompensatedSum acc;
    std::size_t n = 0;
    for (std::size_t i = 0; i < savings.size(); ++i) {
        controlled.records[i].savings_pct = savings[i];
        if (savings[i]) {
            acc.add(*savings[i]);
            ++n;
        }
    }
    if (n > 0) controlled.metrics.mean_savings_pct = acc.value() / static_cast<double>(n);
    return controlled;
}

std::vector<SweepEntry> per_task_energy_curve(const Trace& trace, ControllerKind kind,
                                              const SystemParams& p,
                                              const std::vector<double>& kappa_values) {
    if (kappa_values.empty()) {
        throw std::invalid_argument("per_task_energy_curve: no kappa values");
    }
    if (kind == ControllerKind::kNoManagement) {
        throw std::invalid_argument(
            "per_task_energy_curve: the no-management baseline has no adjustable VM count");
    }
    for (double k : kappa_values) {
        if (!(k >= 0.0)) throw std::invalid_argument("per_task_energy_curve: kappa_e must be >= 0");
    }

    std::vector<SweepEntry> out;
    for (double kappa : kappa_values) {
        SystemParams pk = p;
        pk.kappa_e = kappa;
        pk.validate();
        for (int M = 1; M <= p.M_max; ++M) {
            const double capacity = static_cast<double>(M) * p.lambda_max;
            bool feasible = true;
            ControlInput prev = idle_control(M);
            double pending = 0.0;
            CompensatedSum theta;
            std::size_t tasks = 0;
            for (std::size_t t = 0; t < trace.slots() && feasible; ++t) {
                const double L = trace.workload[t];
                if (L > capacity * (1.0 + 1e-12)) {
                    feasible = false;
                    break;
                }
                ControlInput c;
                if (kind == ControllerKind::kArces) {
                    c = build_control(L, M, trace.bs_count[t], pk);
                } else {
                    // Damped relaxation toward the even split over the forced
                    // VM count, frequencies re-selected each iteration.
                    const double target = L / static_cast<double>(M);
                    std::vector<double> lam(static_cast<std::size_t>(M), 0.0);
                    if (L > 0.0) {
                        for (std::size_t m = 0; m < lam.size() && m < prev.allocs.size(); ++m) {
                            lam[m] = prev.allocs[m].load;
                        }
                        IrsOptions iopts;
                        for (int it = 0; it < iopts.max_iterations; ++it) {
                            double served = 0.0;
                            double cap = 0.0;
                            for (auto& v : lam) {
                                v += iopts.damping * (target - v);
                                served += v;
                                cap += select_frequency(v, pk) * pk.Delta;
                            }
                            if (std::abs(served - L) / L <= iopts.epsilon && cap >= L) break;
                        }
                    }
                    c.M = M;
                    c.Y = driver_count(trace.bs_count[t], pk);
                    c.zeta = L > 0.0 ? 1 : 0;
                    c.allocs.resize(lam.size());
                    for (std::size_t m = 0; m < lam.size(); ++m) {
                        c.allocs[m] = VmAllocation{lam[m], select_frequency(lam[m], pk),
                                                   fixed_rate(lam[m], pk)};
                    }
                }

                pending += L;
                double batch_out = 0.0;
                if ((static_cast<long>(t) + 1) % pk.Upsilon == 0) {
                    batch_out = pending;
                    pending = 0.0;
                }
                theta.add(total_energy(c, prev, L, batch_out, pk).total());
                for (const auto& a : c.allocs) {
                    if (a.load > 0.0) ++tasks;
                }
                prev = c;
            }
            if (feasible && tasks > 0) {
                out.push_back(SweepEntry{M, kappa, theta.value() / static_cast<double>(tasks)});
            }
        }
    }
    return out;
}

std::string records_to_csv(const std::vector<SlotRecord>& records) {
    std::ostringstream os;
    os << "slot,L_in,M,Y,zeta,theta_cpu,theta_sc,theta_toe,theta_vlan,theta_wcom,"
          "theta_mec,H,E,B,curtailed,savings_pct\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : records) {
        os << r.slot << "," << r.L_in << "," << r.M << "," << r.Y << "," << r.zeta << ","
           << r.energy.cpu << "," << r.energy.switching << "," << r.energy.toe << ","
           << r.energy.vlan << "," << r.energy.wcom << "," << r.energy.total() << ","
           << r.H << "," << r.E << "," << r.B << "," << r.curtailed << ",";
        if (r.savings_pct) os << *r.savings_pct;
        os << "\n";
    }
    return os.str();
}

void export_csv(const std::string& path, const std::vector<SlotRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_csv: cannot write " + path);
    out << records_to_csv(records);
}

}  // namespace arces
