#include "arces/controller.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arces {

namespace {

constexpr double kTol = 1e-9;

// C2 is a state constraint; candidate feasibility checks it on the successor
// battery level, so the control-shape checks run with a battery level that is
// always in range.
bool control_shape_ok(const ControlInput& c, const SystemParams& p) {
    return check_constraints(c, p.B_up(), p).ok();
}

bool transition_ok(const Transition& tr, const SystemParams& p) {
    return !tr.deficit && tr.next.B >= p.B_low() - kTol;
}

// Candidate controls for one lookahead depth: every admissible VM count in
// ascending order, then the max-provisioning sentinel.  The sentinel keeps
// the plan cost at or below the no-management cost.  Returns false when the
// forecast workload exceeds even M_max * lambda_max.
bool candidates_for(double L_hat, int n_bs, const SystemParams& p,
                    std::vector<ControlInput>* out) {
    out->clear();
    if (L_hat > static_cast<double>(p.M_max) * p.lambda_max * (1.0 + 1e-12)) {
        return false;
    }
    *out = candidate_set(L_hat, n_bs, p);
    out->push_back(no_management_control(L_hat, p));
    return true;
}

// Final tie order: cost, then first control's M, then its Y, then its
// position in the depth-1 candidate list.
bool better_path(double cost_a, const ControlInput& first_a, int idx_a,
                 double cost_b, const ControlInput& first_b, int idx_b) {
    if (cost_a != cost_b) return cost_a < cost_b;
    if (first_a.M != first_b.M) return first_a.M < first_b.M;
    if (first_a.Y != first_b.Y) return first_a.Y < first_b.Y;
    return idx_a < idx_b;
}

struct DepthPlan {
    std::vector<std::vector<ControlInput>> candidates;  // per depth
    std::vector<double> batch_out;                       // Mbit sent per depth, 0 off-batch
};

// Precomputes per-depth candidate lists and output-batch sizes.  The output
// queue grows by the forecast workload each slot and flushes on batch slots.
bool build_depth_plan(const ControllerContext& ctx, const std::vector<double>& L_hat,
                      const SystemParams& p, DepthPlan* plan) {
    const std::size_t T = L_hat.size();
    plan->candidates.resize(T);
    plan->batch_out.assign(T, 0.0);
    double pending = ctx.pending_out;
    for (std::size_t n = 0; n < T; ++n) {
        if (!candidates_for(L_hat[n], ctx.n_bs, p, &plan->candidates[n])) return false;
        pending += L_hat[n];
        const long slot = ctx.slot + static_cast<long>(n);
        if ((slot + 1) % p.Upsilon == 0) {
            plan->batch_out[n] = pending;
            pending = 0.0;
        }
    }
    return true;
}

PlanResult fallback_plan(const ControllerContext& ctx, const std::vector<double>& L_hat,
                         const SystemParams& p) {
    PlanResult r;
    r.control = no_management_control(L_hat.empty() ? 0.0 : L_hat.front(), p);
    r.failure = true;
    (void)ctx;
    return r;
}

void validate_forecasts(const std::vector<double>& L_hat, const std::vector<double>& H_hat) {
    if (L_hat.empty() || L_hat.size() != H_hat.size()) {
        throw std::invalid_argument(
            "plan: workload and harvest forecasts must be nonempty and equally long");
    }
    for (double v : L_hat) {
        if (!(v >= 0.0)) throw std::invalid_argument("plan: forecast workload must be >= 0");
    }
    for (double v : H_hat) {
        if (!(v >= 0.0)) throw std::invalid_argument("plan: forecast harvest must be >= 0");
    }
}

}  // namespace

Transition predict_transition(const SystemState& state, const ControlInput& prev,
                              const ControlInput& control, double L_in,
                              double H, double L_out_batch, const SystemParams& p) {
    Transition tr;
    tr.energy = total_energy(control, prev, L_in, L_out_batch, p);
    tr.purchase = plan_purchase(state.B, H, p);
    double level = state.B + H - tr.energy.total() + tr.purchase;
    if (level > p.B_max) {
        tr.curtailed = level - p.B_max;
        level = p.B_max;
    } else if (level < 0.0) {
        tr.deficit = true;
        level = 0.0;
    }
    tr.next = SystemState{control.M, control.Y, level};
    return tr;
}

ControlInput no_management_control(double L, const SystemParams& p) {
    if (L < 0.0) throw std::invalid_argument("no_management_control: L must be >= 0");
    ControlInput c;
    c.M = p.M_max;
    c.Y = p.Y_max;
    c.zeta = 1;
    c.split = SplitPolicy::kEven;
    c.force_max_freq = true;
    c.nic_always_on = true;
    const double share = L / static_cast<double>(p.M_max);
    c.allocs.assign(static_cast<std::size_t>(p.M_max),
                    VmAllocation{share, p.f_max(), fixed_rate(share, p)});
    return c;
}

PlanResult arces_plan(const ControllerContext& ctx,
                      const std::vector<double>& L_hat,
                      const std::vector<double>& H_hat,
                      const SystemParams& p, const PlanOptions& opts) {
    validate_forecasts(L_hat, H_hat);
    const std::size_t T = L_hat.size();

    DepthPlan plan;
    if (!build_depth_plan(ctx, L_hat, p, &plan)) return fallback_plan(ctx, L_hat, p);

    struct Node {
        SystemState state;
        int ctrl_idx = -1;   // candidate index at this node's depth
        int first_idx = -1;  // candidate index at depth 0
        double cost = 0.0;
    };

    std::vector<Node> level{Node{ctx.state, -1, -1, 0.0}};
    std::size_t nodes = 1;
    const std::vector<ControlInput>& first_cands = plan.candidates[0];

    for (std::size_t n = 0; n < T; ++n) {
        const auto& cands = plan.candidates[n];
        std::vector<Node> next;
        next.reserve(level.size() * cands.size());
        for (const Node& node : level) {
            const ControlInput& prev_ctrl =
                n == 0 ? ctx.prev : plan.candidates[n - 1][node.ctrl_idx];
            for (std::size_t idx = 0; idx < cands.size(); ++idx) {
                const ControlInput& cand = cands[idx];
                if (!control_shape_ok(cand, p)) continue;
                const Transition tr = predict_transition(node.state, prev_ctrl, cand,
                                                         L_hat[n], H_hat[n],
                                                         plan.batch_out[n], p);
                if (!transition_ok(tr, p)) continue;
                Node child;
                child.state = tr.next;
                child.ctrl_idx = static_cast<int>(idx);
                child.first_idx = n == 0 ? static_cast<int>(idx) : node.first_idx;
                child.cost = node.cost + tr.energy.total();
                next.push_back(child);
            }
        }
        nodes += next.size();
        if (next.empty()) return fallback_plan(ctx, L_hat, p);

        if (opts.prune_dominated && n + 1 < T) {
            // Within one candidate index all onward cost increments coincide,
            // so a node with lower (or tied, later-ranked) cost and no more
            // battery than another can never win.
            std::vector<Node> kept;
            kept.reserve(next.size());
            for (std::size_t idx = 0; idx < cands.size(); ++idx) {
                std::vector<Node> group;
                for (const Node& nd : next) {
                    if (nd.ctrl_idx == static_cast<int>(idx)) group.push_back(nd);
                }
                if (group.empty()) continue;
                std::sort(group.begin(), group.end(), [&](const Node& a, const Node& b) {
                    return better_path(a.cost, first_cands[a.first_idx], a.first_idx,
                                       b.cost, first_cands[b.first_idx], b.first_idx);
                });
                double best_b = -1.0;
                for (const Node& nd : group) {
                    if (nd.state.B > best_b) {
                        kept.push_back(nd);
                        best_b = nd.state.B;
                    }
                }
            }
            next = std::move(kept);
        }
        level = std::move(next);
    }

    const Node* best = nullptr;
    for (const Node& nd : level) {
        if (!best ||
            better_path(nd.cost, first_cands[nd.first_idx], nd.first_idx,
                        best->cost, first_cands[best->first_idx], best->first_idx)) {
            best = &nd;
        }
    }

    PlanResult result;
    result.control = first_cands[static_cast<std::size_t>(best->first_idx)];
    result.cost = best->cost;
    result.nodes = nodes;
    return result;
}

PlanResult brute_force_oracle(const ControllerContext& ctx,
                              const std::vector<double>& L_hat,
                              const std::vector<double>& H_hat,
                              const SystemParams& p, std::size_t max_paths) {
    validate_forecasts(L_hat, H_hat);
    const std::size_t T = L_hat.size();

    DepthPlan plan;
    if (!build_depth_plan(ctx, L_hat, p, &plan)) return fallback_plan(ctx, L_hat, p);

    std::size_t paths = 1;
    for (const auto& cands : plan.candidates) {
        if (cands.empty()) return fallback_plan(ctx, L_hat, p);
        if (paths > max_paths / cands.size()) {
            std::ostringstream os;
            os << "brute_force_oracle: more than " << max_paths << " control sequences";
            throw std::invalid_argument(os.str());
        }
        paths *= cands.size();
    }

    const std::vector<ControlInput>& first_cands = plan.candidates[0];
    bool found = false;
    double best_cost = 0.0;
    int best_first = -1;

    // Depth-first enumeration of every control sequence.
    auto walk = [&](auto&& self, std::size_t depth, const SystemState& state,
                    const ControlInput& prev, double cost, int first_idx) -> void {
        if (depth == T) {
            if (!found ||
                better_path(cost, first_cands[first_idx], first_idx, best_cost,
                            first_cands[best_first], best_first)) {
                found = true;
                best_cost = cost;
                best_first = first_idx;
            }
            return;
        }
        const auto& cands = plan.candidates[depth];
        for (std::size_t idx = 0; idx < cands.size(); ++idx) {
            const ControlInput& cand = cands[idx];
            if (!control_shape_ok(cand, p)) continue;
            const Transition tr = predict_transition(state, prev, cand, L_hat[depth],
                                                     H_hat[depth], plan.batch_out[depth], p);
            if (!transition_ok(tr, p)) continue;
            self(self, depth + 1, tr.next, cand, cost + tr.energy.total(),
                 depth == 0 ? static_cast<int>(idx) : first_idx);
        }
    };
    walk(walk, 0, ctx.state, ctx.prev, 0.0, -1);

    if (!found) return fallback_plan(ctx, L_hat, p);
    PlanResult result;
    result.control = first_cands[static_cast<std::size_t>(best_first)];
    result.cost = best_cost;
    result.nodes = paths;
    return result;
}

PlanResult arces_step(const ControllerContext& ctx, const Histories& h,
                      const ForecastModel& workload_model,
                      const ForecastModel& harvest_model,
                      const SystemParams& p, const PlanOptions& opts) {
    if (opts.horizon < 1) throw std::invalid_argument("arces_step: horizon must be >= 1");

    // Falls back to holding the last observation (or zero with no history)
    // while a model's history requirement is not yet met.
    auto robust = [&](const ForecastModel& model, const Series& hist) {
        try {
            return forecast_raw(model, hist, opts.horizon);
        } catch (const std::invalid_argument&) {
            const double v = hist.empty() ? 0.0 : std::max(0.0, hist.back());
            return Series(static_cast<std::size_t>(opts.horizon), v);
        }
    };
    const Series L_hat = robust(workload_model, h.workload);
    const Series H_hat = robust(harvest_model, h.harvest);
    return arces_plan(ctx, L_hat, H_hat, p, opts);
}

IrsResult irs_step(const ControllerContext& ctx, double L, const SystemParams& p,
                   const IrsOptions& opts) {
    if (L < 0.0) throw std::invalid_argument("irs_step: L must be >= 0");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0)) {
        throw std::invalid_argument("irs_step: damping must be in (0,1]");
    }
    if (opts.max_iterations < 1) {
        throw std::invalid_argument("irs_step: max_iterations must be >= 1");
    }

    IrsResult result;
    if (L == 0.0) {
        result.control = build_control(0.0, p.d, ctx.n_bs, p);
        result.converged = true;
        return result;
    }

    const int M = vm_count(L, p);
    const double target = L / static_cast<double>(M);
    std::vector<double> lam(static_cast<std::size_t>(M), 0.0);
    for (std::size_t m = 0; m < lam.size() && m < ctx.prev.allocs.size(); ++m) {
        lam[m] = ctx.prev.allocs[m].load;
    }

    std::vector<double> freqs(lam.size(), 0.0);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        double served = 0.0;
        double capacity = 0.0;
        for (std::size_t m = 0; m < lam.size(); ++m) {
            lam[m] += opts.damping * (target - lam[m]);
            freqs[m] = select_frequency(lam[m], p);
            served += lam[m];
            capacity += freqs[m] * p.Delta;
        }
        result.iterations = it;
        if (std::abs(served - L) / L <= opts.epsilon && capacity >= L) {
            result.converged = true;
            break;
        }
    }

    ControlInput c;
    c.M = M;
    c.Y = driver_count(ctx.n_bs, p);
    c.zeta = 1;
    c.split = SplitPolicy::kEven;
    c.allocs.resize(lam.size());
    for (std::size_t m = 0; m < lam.size(); ++m) {
        c.allocs[m] = VmAllocation{lam[m], freqs[m], fixed_rate(lam[m], p)};
    }
    result.control = c;
    return result;
}

}  // namespace arces
