#include "arces/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace arces {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
    return v;
}

long to_long(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    double ip = 0.0;
    if (std::modf(v, &ip) != 0.0) {
        throw ConfigError("config: key '" + key + "' needs an integer, got '" + value + "'");
    }
    return static_cast<long>(ip);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError("config: key '" + key + "' needs a boolean, got '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string v = strip(item);
        if (v.empty()) throw ConfigError("config: key '" + key + "' has an empty list entry");
        out.push_back(to_double(key, v));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' needs a nonempty list");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto assign = [&cfg](const std::string& key, const std::string& value) {
        auto d = [&] { return to_double(key, value); };
        auto i = [&] { return static_cast<int>(to_long(key, value)); };
        auto b = [&] { return to_bool(key, value); };

        SystemParams& p = cfg.params;
        SynthSpec& s = cfg.synth;
        if (key == "M_max") p.M_max = i();
        else if (key == "d") p.d = i();
        else if (key == "tau") p.tau = d();
        else if (key == "theta_idle") p.theta_idle_vm = d();
        else if (key == "theta_max") p.theta_max_vm = d();
        else if (key == "kappa_e") p.kappa_e = d();
        else if (key == "theta_idle_toe") p.theta_idle_toe = d();
        else if (key == "eta") p.eta = d();
        else if (key == "Delta") p.Delta = d();
        else if (key == "freq_set") p.freq_set = to_list(key, value);
        else if (key == "W") p.W = d();
        else if (key == "Gamma") p.Gamma = d();
        else if (key == "r_max") p.r_max = d();
        else if (key == "Y_max") p.Y_max = i();
        else if (key == "tau_max") p.tau_max = d();
        else if (key == "lambda_max") p.lambda_max = d();
        else if (key == "O_opt") p.O_opt = d();
        else if (key == "r0") p.r0 = d();
        else if (key == "alpha") p.alpha_delay = d();
        else if (key == "sigma") p.sigma = d();
        else if (key == "Upsilon") p.Upsilon = i();
        else if (key == "B_max") p.B_max = d();
        else if (key == "B_low_frac") p.B_low_frac = d();
        else if (key == "B_up_frac") p.B_up_frac = d();
        else if (key == "workload_csv") cfg.workload_csv = value;
        else if (key == "solar_csv") cfg.solar_csv = value;
        else if (key == "bs_csv") cfg.bs_csv = value;
        else if (key == "slots") s.slots = static_cast<std::size_t>(to_long(key, value));
        else if (key == "period") s.period = d();
        else if (key == "workload_peak") s.workload_peak = d();
        else if (key == "workload_trough") s.workload_trough = d();
        else if (key == "workload_noise_std") s.workload_noise_std = d();
        else if (key == "solar_peak") s.solar_peak = d();
        else if (key == "solar_trough") s.solar_trough = d();
        else if (key == "solar_noise_std") s.solar_noise_std = d();
        else if (key == "solar_scale_to_battery") s.solar_scale_to_battery = b();
        else if (key == "bs_peak") s.bs_peak = d();
        else if (key == "bs_trough") s.bs_trough = d();
        else if (key == "controller") cfg.controller = controller_kind_from_name(value);
        else if (key == "forecaster") cfg.forecaster = forecast_kind_from_name(value);
        else if (key == "horizon") cfg.horizon = i();
        else if (key == "seed") cfg.seed = static_cast<std::uint32_t>(to_long(key, value));
        else if (key == "start_slot") cfg.start_slot = static_cast<std::size_t>(to_long(key, value));
        else if (key == "initial_level") cfg.initial_level = d();
        else if (key == "prune") cfg.prune = b();
        else if (key == "out") cfg.out = value;
        else if (key == "seasonal_period") cfg.seasonal_period = i();
        else if (key == "lookback") cfg.lookback = i();
        else if (key == "hidden") cfg.hidden = i();
        else if (key == "epochs") cfg.epochs = i();
        else if (key == "step_size") cfg.step_size = d();
        else if (key == "kappa_values") cfg.kappa_values = to_list(key, value);
        else if (key == "instances") cfg.instances = i();
        else throw ConfigError("config: unknown key '" + key + "'");
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << lineno << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(os.str());
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream os;
            os << "config line " << lineno << ": empty key or value";
            throw ConfigError(os.str());
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config: duplicate key '" + key + "'");
        }
        try {
            assign(key, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    // One source per series: a CSV path next to that series' synthesis knobs
    // is ambiguous.
    auto forbid_mix = [&seen](const char* csv_key, std::initializer_list<const char*> synth_keys) {
        if (!seen.count(csv_key)) return;
        for (const char* k : synth_keys) {
            if (seen.count(k)) {
                throw ConfigError(std::string("config: '") + csv_key + "' and '" + k +
                                  "' select two sources for the same series");
            }
        }
    };
    forbid_mix("workload_csv", {"workload_peak", "workload_trough", "workload_noise_std"});
    forbid_mix("solar_csv",
               {"solar_peak", "solar_trough", "solar_noise_std", "solar_scale_to_battery"});
    forbid_mix("bs_csv", {"bs_peak", "bs_trough"});

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.horizon < 1) throw ConfigError("config: horizon must be >= 1");
    if (cfg.instances < 1) throw ConfigError("config: instances must be >= 1");
    if (!(cfg.step_size > 0.0)) throw ConfigError("config: step_size must be > 0");
    if (cfg.lookback < 1) throw ConfigError("config: lookback must be >= 1");
    if (cfg.hidden < 1) throw ConfigError("config: hidden must be >= 1");
    if (cfg.epochs < 0) throw ConfigError("config: epochs must be >= 0");
    if (cfg.seasonal_period < 1) throw ConfigError("config: seasonal_period must be >= 1");
    if (cfg.initial_level > cfg.params.B_max) {
        throw ConfigError("config: initial_level above B_max");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

Trace build_trace(const RunConfig& cfg) {
    const SynthSpec& s = cfg.synth;

    Series workload = cfg.workload_csv
        ? load_series_csv(*cfg.workload_csv)
        : synthesize_diurnal(s.slots, s.workload_peak, s.workload_trough, s.period,
                             s.workload_noise_std, cfg.seed);

    Series solar = cfg.solar_csv
        ? load_series_csv(*cfg.solar_csv)
        : synthesize_diurnal(s.slots, s.solar_peak, s.solar_trough, s.period,
                             s.solar_noise_std, cfg.seed + 1);
    if (s.solar_scale_to_battery) solar = scale_solar_to_battery(solar, cfg.params.B_max);

    std::vector<int> bs;
    if (cfg.bs_csv) {
        bs = load_bs_csv(*cfg.bs_csv);
    } else {
        const Series raw = synthesize_diurnal(s.slots, s.bs_peak, s.bs_trough, s.period,
                                              0.0, cfg.seed + 2);
        bs.reserve(raw.size());
        for (double v : raw) bs.push_back(std::max(1, static_cast<int>(std::lround(v))));
    }
    return make_trace(std::move(workload), std::move(solar), std::move(bs));
}

std::pair<ForecastModel, ForecastModel> build_models(const RunConfig& cfg, const Trace& trace) {
    if (cfg.start_slot >= trace.slots()) {
        throw ConfigError("config: start_slot must leave at least one slot to simulate");
    }

    TrainConfig tc;
    tc.lookback = cfg.lookback;
    tc.hidden = cfg.hidden;
    tc.epochs = cfg.epochs;
    tc.step_size = cfg.step_size;
    tc.period = cfg.seasonal_period;

    auto fit_series = [&](const Series& full, double fallback_hi,
                          std::uint32_t seed) -> ForecastModel {
        if (cfg.start_slot == 0) {
            // Nothing observed yet: an untrained hold-last model over the
            // representable range.
            ForecastModel m;
            m.kind = ForecastKind::kPersistence;
            m.bounds = NormBounds{0.0, fallback_hi};
            return m;
        }
        const Series warmup(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(cfg.start_slot));
        switch (cfg.forecaster) {
            case ForecastKind::kSeasonalNaive:
                if (warmup.size() < static_cast<std::size_t>(cfg.seasonal_period)) {
                    throw ConfigError(
                        "config: the seasonal forecaster needs start_slot >= seasonal_period");
                }
                break;
            case ForecastKind::kRecurrent:
                if (warmup.size() < static_cast<std::size_t>(cfg.lookback) + 1) {
                    throw ConfigError(
                        "config: the recurrent forecaster needs start_slot > lookback");
                }
                break;
            case ForecastKind::kPersistence:
                break;
        }
        TrainConfig t = tc;
        t.seed = seed;
        return fit_raw(cfg.forecaster, warmup, t);
    };

    const double workload_cap =
        static_cast<double>(cfg.params.M_max) * cfg.params.lambda_max;
    ForecastModel wm = fit_series(trace.workload, workload_cap, cfg.seed + 11);
    ForecastModel hm = fit_series(trace.harvest, cfg.params.B_max, cfg.seed + 12);
    return {std::move(wm), std::move(hm)};
}

}  // namespace arces
