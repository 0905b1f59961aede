#include <cstdio>
#include <fstream>
#include <string>

#include "arces/config.hpp"
#include "arces/pipeline.hpp"
#include "doctest.h"

using namespace arces;

namespace {

bool fails_with(const std::string& needle, const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("empty config yields pure defaults") {
    RunConfig cfg = parse_config_text("");
    SystemParams d;
    CHECK(cfg.params.M_max == d.M_max);
    CHECK(cfg.params.kappa_e == d.kappa_e);
    CHECK(cfg.params.B_max == d.B_max);
    CHECK(cfg.params.freq_set == d.freq_set);
    CHECK(cfg.controller == ControllerKind::kArces);
    CHECK(cfg.forecaster == ForecastKind::kSeasonalNaive);
    CHECK(cfg.horizon == 3);
    CHECK(cfg.start_slot == 1440);
    CHECK(cfg.synth.slots == 2880);
    CHECK(cfg.synth.workload_peak == doctest::Approx(40.0));
    CHECK(cfg.synth.solar_peak == doctest::Approx(600.0));
}

TEST_CASE("single-key override leaves the rest untouched") {
    RunConfig cfg = parse_config_text("kappa_e = 0.001\n");
    CHECK(cfg.params.kappa_e == doctest::Approx(0.001));
    SystemParams d;
    CHECK(cfg.params.M_max == d.M_max);
    CHECK(cfg.params.tau_max == doctest::Approx(d.tau_max));
}

TEST_CASE("comments and blank lines are ignored") {
    RunConfig cfg = parse_config_text("# leading comment\n\nhorizon = 5  # trailing\n");
    CHECK(cfg.horizon == 5);
}

TEST_CASE("malformed configs name the offending key") {
    CHECK(fails_with("unknown key 'bogus'", "bogus = 1\n"));
    CHECK(fails_with("'kappa_e'", "kappa_e = fast\n"));
    CHECK(fails_with("duplicate key 'horizon'", "horizon = 1\nhorizon = 2\n"));
    CHECK(fails_with("expected 'key = value'", "horizon\n"));
    CHECK(fails_with("two sources", "workload_csv = w.csv\nworkload_peak = 3\n"));
    CHECK(fails_with("horizon must be >= 1", "horizon = 0\n"));
    CHECK(fails_with("config:", "M_max = -2\n"));
    CHECK(fails_with("needs an integer", "M_max = 2.5\n"));
    CHECK(fails_with("needs a boolean", "prune = maybe\n"));
}

TEST_CASE("missing config file is a config error") {
    CHECK_THROWS_AS(parse_config_file("definitely_absent.cfg"), ConfigError);
}

TEST_CASE("freq_set override is parsed as a sorted list") {
    RunConfig cfg = parse_config_text("freq_set = 0, 30, 60\n");
    CHECK(cfg.params.freq_set == std::vector<double>{0.0, 30.0, 60.0});
    CHECK(fails_with("config:", "freq_set = 30, 0\n"));  // must include 0 first and ascend
}

TEST_CASE("trace synthesis honors the recipe and csv paths win") {
    RunConfig cfg = parse_config_text("slots = 48\nperiod = 24\nworkload_peak = 10\n");
    Trace t = build_trace(cfg);
    REQUIRE(t.slots() == 48);
    CHECK(t.workload[0] == doctest::Approx(10.0));
    CHECK(t.workload[12] == doctest::Approx(0.0));
    for (int v : t.bs_count) CHECK(v >= 1);

    SUBCASE("a csv source overrides synthesis for its series") {
        std::ofstream os("cfg_w.csv");
        os << "slot,value\n";
        for (int i = 0; i < 48; ++i) os << i << ",7\n";
        os.close();
        RunConfig file_cfg = parse_config_text("slots = 48\nworkload_csv = cfg_w.csv\n");
        Trace ft = build_trace(file_cfg);
        std::remove("cfg_w.csv");
        CHECK(ft.workload[0] == doctest::Approx(7.0));
        CHECK(ft.workload[47] == doctest::Approx(7.0));
    }
    SUBCASE("mismatched csv lengths are trace errors") {
        std::ofstream os("cfg_short.csv");
        os << "slot,value\n0,7\n";
        os.close();
        RunConfig file_cfg = parse_config_text("slots = 48\nworkload_csv = cfg_short.csv\n");
        CHECK_THROWS_AS(build_trace(file_cfg), TraceError);
        std::remove("cfg_short.csv");
    }
}

TEST_CASE("synthetic traces are reproducible per seed") {
    RunConfig cfg = parse_config_text("slots = 100\nworkload_noise_std = 0.3\nseed = 5\n");
    Trace a = build_trace(cfg);
    Trace b = build_trace(cfg);
    CHECK(a.workload == b.workload);
    CHECK(a.harvest == b.harvest);

    RunConfig other = parse_config_text("slots = 100\nworkload_noise_std = 0.3\nseed = 6\n");
    CHECK(build_trace(other).workload != a.workload);
}

TEST_CASE("model fitting guards its warmup requirements") {
    RunConfig cfg = parse_config_text("slots = 100\nstart_slot = 10\nseasonal_period = 24\n");
    Trace t = build_trace(cfg);
    CHECK_THROWS_AS(build_models(cfg, t), ConfigError);

    cfg = parse_config_text("slots = 100\nstart_slot = 100\n");
    Trace t2 = build_trace(cfg);
    CHECK_THROWS_AS(build_models(cfg, t2), ConfigError);

    SUBCASE("no warmup falls back to a hold-last model with physical bounds") {
        RunConfig zero = parse_config_text("slots = 50\nstart_slot = 0\n");
        Trace t3 = build_trace(zero);
        auto [wm, hm] = build_models(zero, t3);
        CHECK(wm.kind == ForecastKind::kPersistence);
        CHECK(wm.bounds.hi == doctest::Approx(50.0));
        CHECK(hm.bounds.hi == doctest::Approx(zero.params.B_max));
    }
}

TEST_CASE("bundled config files match their documented scenarios") {
    RunConfig diurnal = parse_config_file(std::string(ARCES_CONFIG_DIR) + "/diurnal.cfg");
    RunConfig defaults = parse_config_text("");
    CHECK(diurnal.synth.slots == defaults.synth.slots);
    CHECK(diurnal.synth.workload_peak == doctest::Approx(defaults.synth.workload_peak));
    CHECK(diurnal.synth.solar_peak == doctest::Approx(defaults.synth.solar_peak));
    CHECK(diurnal.start_slot == defaults.start_slot);
    CHECK(diurnal.forecaster == defaults.forecaster);

    RunConfig sweep = parse_config_file(std::string(ARCES_CONFIG_DIR) + "/sweep.cfg");
    CHECK(sweep.synth.workload_peak == doctest::Approx(5.0));
    CHECK(sweep.kappa_values == std::vector<double>{0.001, 0.005});

    RunConfig fc = parse_config_file(std::string(ARCES_CONFIG_DIR) + "/forecast.cfg");
    CHECK(fc.synth.workload_noise_std == doctest::Approx(0.05));
    CHECK(fc.seed == 7);
    CHECK(fc.seasonal_period == 288);
}
