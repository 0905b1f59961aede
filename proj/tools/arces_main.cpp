#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arces/pipeline.hpp"

namespace {

using namespace arces;

// Options shared by every subcommand; flags override config-file values.
struct Common {
    std::string config;
    std::string workload;
    std::string solar;
    std::string bs;
    std::string controller;
    std::string forecaster;
    std::string out;
    int horizon = 3;
    std::uint32_t seed = 1;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "key = value configuration file");
    sub->add_option("--workload", c.workload, "workload CSV (slot,value)");
    sub->add_option("--solar", c.solar, "energy-harvest CSV (slot,value)");
    sub->add_option("--bs-count", c.bs, "base-station count CSV (slot,value)");
    sub->add_option("--controller", c.controller, "arces | irs | nomgmt")
        ->check(CLI::IsMember({"arces", "irs", "nomgmt"}));
    sub->add_option("--forecaster", c.forecaster, "persistence | seasonal | recurrent")
        ->check(CLI::IsMember({"persistence", "seasonal", "recurrent"}));
    sub->add_option("--horizon", c.horizon, "lookahead depth / forecast steps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "seed for synthetic traces and training");
    sub->add_option("--out", c.out, "CSV output path");
}

RunConfig make_config(const CLI::App* sub, const Common& c) {
    RunConfig cfg;
    if (sub->count("--config")) cfg = parse_config_file(c.config);
    if (sub->count("--workload")) cfg.workload_csv = c.workload;
    if (sub->count("--solar")) cfg.solar_csv = c.solar;
    if (sub->count("--bs-count")) cfg.bs_csv = c.bs;
    if (sub->count("--controller")) cfg.controller = controller_kind_from_name(c.controller);
    if (sub->count("--forecaster")) cfg.forecaster = forecast_kind_from_name(c.forecaster);
    if (sub->count("--horizon")) cfg.horizon = c.horizon;
    if (sub->count("--seed")) cfg.seed = c.seed;
    if (sub->count("--out")) cfg.out = c.out;
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write '" + path + "'");
    os << text;
}

int cmd_simulate(const RunConfig& cfg) {
    SimulateOutput out = simulate_pipeline(cfg);
    if (!cfg.out.empty()) write_text_file(cfg.out, out.csv);

    const RunMetrics& m = out.result.metrics;
    std::cout.setf(std::ios::fixed);
    std::cout.precision(6);
    std::cout << "controller=" << controller_kind_name(cfg.controller)
              << " slots=" << out.result.records.size()
              << " total_energy_J=" << m.total_energy
              << " grid_J=" << m.total_grid
              << " harvest_J=" << m.total_harvest
              << " final_level_J=" << m.final_level
              << " violation_slots=" << m.violation_slots;
    if (m.mean_savings_pct) std::cout << " mean_savings_pct=" << *m.mean_savings_pct;
    std::cout << '\n';
    for (const auto& [name, count] : m.violation_counts) {
        std::cout << "violation " << name << " x" << count << '\n';
    }
    return m.violation_slots == 0 ? 0 : 3;
}

int cmd_forecast_eval(const RunConfig& cfg) {
    std::cout.setf(std::ios::fixed);
    std::cout.precision(6);
    for (const ForecastReport& r : forecast_eval_pipeline(cfg)) {
        std::cout << "kind=" << forecast_kind_name(r.kind) << " train=" << r.train_size
                  << " test=" << r.test_size;
        for (std::size_t s = 0; s < r.rmse_per_step.size(); ++s) {
            std::cout << " rmse_step" << s + 1 << '=' << r.rmse_per_step[s];
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    SweepOutput out = sweep_pipeline(cfg);
    if (cfg.out.empty()) {
        std::cout << out.csv;
    } else {
        write_text_file(cfg.out, out.csv);
        std::cout << "rows=" << out.entries.size() << " out=" << cfg.out << '\n';
    }
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg) {
    OracleCheckOutput out = oracle_check_pipeline(cfg);
    std::cout << "instances=" << out.instances << " mismatches=" << out.mismatches << '\n';
    return out.mismatches == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven simulator and controllers for an energy-harvesting edge server"};
    app.require_subcommand(1);

    Common c;
    CLI::App* sim = app.add_subcommand("simulate", "closed-loop run with per-slot CSV");
    CLI::App* feval = app.add_subcommand("forecast-eval", "multi-step RMSE of each forecaster");
    CLI::App* sweep = app.add_subcommand("sweep-kappa", "energy per task vs VM count");
    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "lookahead search vs exhaustive enumeration");
    for (CLI::App* sub : {sim, feval, sweep, oracle}) add_common(sub, c);

    std::vector<double> kappa;
    sweep->add_option("--kappa", kappa, "switching-cost coefficients");
    int instances = 100;
    oracle->add_option("--instances", instances, "random planning instances")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const CLI::App* sub = app.get_subcommands().front();
        arces::RunConfig cfg = make_config(sub, c);
        if (sub == sim) return cmd_simulate(cfg);
        if (sub == feval) return cmd_forecast_eval(cfg);
        if (sub == sweep) {
            if (sweep->count("--kappa")) cfg.kappa_values = kappa;
            return cmd_sweep(cfg);
        }
        if (sub == oracle) {
            if (oracle->count("--instances")) cfg.instances = instances;
            return cmd_oracle_check(cfg);
        }
        return 1;
    } catch (const arces::TraceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const arces::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
