#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "arces/series.hpp"
#include "doctest.h"

using namespace arces;

namespace {

// Temp CSV fixture removed on scope exit.
struct TempCsv {
    std::string path;

    TempCsv(const std::string& name, const std::string& text) : path(name) {
        std::ofstream os(path);
        os << text;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

bool throws_with(const std::string& needle, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("csv round trip preserves samples") {
    Series s = {0.0, 1.5, 42.25, 0.125};
    save_series_csv("rt.csv", s);
    Series back = load_series_csv("rt.csv");
    std::remove("rt.csv");
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back[i] == doctest::Approx(s[i]).epsilon(1e-15));
}

TEST_CASE("csv loader rejects malformed input") {
    SUBCASE("missing header") {
        TempCsv f("bad1.csv", "0,1\n1,2\n");
        CHECK(throws_with("missing 'slot,value' header", [&] { load_series_csv(f.path); }));
    }
    SUBCASE("slot gap") {
        TempCsv f("bad2.csv", "slot,value\n0,1\n2,3\n");
        CHECK(throws_with("gap at slot 1", [&] { load_series_csv(f.path); }));
    }
    SUBCASE("negative value") {
        TempCsv f("bad3.csv", "slot,value\n0,1\n1,-0.5\n");
        CHECK(throws_with("negative value", [&] { load_series_csv(f.path); }));
    }
    SUBCASE("missing file") {
        CHECK(throws_with("cannot open", [] { load_series_csv("definitely_absent.csv"); }));
    }
    SUBCASE("no samples") {
        TempCsv f("bad4.csv", "slot,value\n");
        CHECK(throws_with("no samples", [&] { load_series_csv(f.path); }));
    }
    SUBCASE("non numeric") {
        TempCsv f("bad5.csv", "slot,value\n0,abc\n");
        CHECK_THROWS_AS(load_series_csv(f.path), TraceError);
    }
}

TEST_CASE("bs loader requires integral counts") {
    TempCsv good("bs1.csv", "slot,value\n0,4\n1,100\n");
    auto bs = load_bs_csv(good.path);
    REQUIRE(bs.size() == 2);
    CHECK(bs[0] == 4);
    CHECK(bs[1] == 100);

    TempCsv frac("bs2.csv", "slot,value\n0,4.5\n");
    CHECK_THROWS_AS(load_bs_csv(frac.path), TraceError);
}

TEST_CASE("make_trace validates shape") {
    CHECK_THROWS_AS(make_trace({}, {}, {}), TraceError);
    CHECK_THROWS_AS(make_trace({1.0}, {1.0, 2.0}, {1}), TraceError);
    CHECK_THROWS_AS(make_trace({1.0}, {1.0}, {0}), TraceError);
    Trace t = make_trace({1.0, 2.0}, {3.0, 4.0}, {1, 2});
    CHECK(t.slots() == 2);
}

TEST_CASE("synthesize_diurnal is deterministic and bounded") {
    Series a = synthesize_diurnal(500, 40.0, 5.0, 250.0, 2.0, 9);
    Series b = synthesize_diurnal(500, 40.0, 5.0, 250.0, 2.0, 9);
    CHECK(a == b);
    Series c = synthesize_diurnal(500, 40.0, 5.0, 250.0, 2.0, 10);
    CHECK(a != c);
    for (double v : a) {
        CHECK(v >= 0.0);
        CHECK(v <= 40.0 + 3.0 * 2.0 + 1e-12);
    }

    SUBCASE("noiseless profile hits peak at slot 0 and trough at half period") {
        Series clean = synthesize_diurnal(250, 40.0, 5.0, 250.0, 0.0, 1);
        CHECK(clean[0] == doctest::Approx(40.0));
        CHECK(clean[125] == doctest::Approx(5.0));
    }
    SUBCASE("noiseless profile repeats with its period") {
        Series two = synthesize_diurnal(500, 40.0, 5.0, 250.0, 0.0, 1);
        for (std::size_t i = 0; i < 250; ++i) CHECK(two[i] == doctest::Approx(two[i + 250]));
    }
}

TEST_CASE("scale_solar_to_battery maps the peak to capacity") {
    Series raw = {0.0, 100.0, 250.0, 50.0};
    Series scaled = scale_solar_to_battery(raw, 490e3);
    CHECK(scaled[2] == doctest::Approx(490e3));
    CHECK(scaled[1] == doctest::Approx(490e3 * 100.0 / 250.0));

    Series zeros = {0.0, 0.0};
    CHECK(scale_solar_to_battery(zeros, 490e3) == zeros);
}

TEST_CASE("normalization round trips and degrades gracefully") {
    Series s = {2.0, 6.0, 4.0};
    auto [n, bounds] = normalize_minmax(s);
    CHECK(bounds.lo == doctest::Approx(2.0));
    CHECK(bounds.hi == doctest::Approx(6.0));
    CHECK(n[0] == doctest::Approx(0.0));
    CHECK(n[1] == doctest::Approx(1.0));
    CHECK(n[2] == doctest::Approx(0.5));

    Series back = denormalize(n, bounds);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back[i] == doctest::Approx(s[i]).epsilon(1e-12));
    }

    Series flat = {3.0, 3.0, 3.0};
    auto [nf, bf] = normalize_minmax(flat);
    CHECK(nf == Series{0.0, 0.0, 0.0});
    CHECK(denormalize(nf, bf) == flat);
}
