#include <stdexcept>

#include "arces/provision.hpp"
#include "doctest.h"

using namespace arces;

namespace {
const SystemParams kP;
}

TEST_CASE("vm count is the capacity ceiling with a floor of d") {
    CHECK(vm_count(12.0, kP) == 3);
    CHECK(vm_count(0.0, kP) == 1);
    CHECK(vm_count(5.0, kP) == 1);
    CHECK(vm_count(5.0001, kP) == 2);
    CHECK(vm_count(50.0, kP) == 10);
    CHECK_THROWS_AS(vm_count(55.0, kP), std::invalid_argument);
}

TEST_CASE("load splitting packs fill-first at the minimum count") {
    auto split = distribute_load(12.0, 3, kP);
    REQUIRE(split.size() == 3);
    CHECK(split[0] == doctest::Approx(5.0));
    CHECK(split[1] == doctest::Approx(5.0));
    CHECK(split[2] == doctest::Approx(2.0));

    SUBCASE("spare VMs trigger an even split") {
        auto even = distribute_load(12.0, 4, kP);
        REQUIRE(even.size() == 4);
        for (double v : even) CHECK(v == doctest::Approx(3.0));
    }
    SUBCASE("load must fit") {
        CHECK_THROWS_AS(distribute_load(16.0, 3, kP), std::invalid_argument);
    }
    SUBCASE("zero load yields zero shares") {
        for (double v : distribute_load(0.0, 2, kP)) CHECK(v == doctest::Approx(0.0));
    }
}

TEST_CASE("frequency selection picks the smallest sufficient step") {
    CHECK(select_frequency(5.0, kP) == doctest::Approx(50.0));   // needs 6.25
    CHECK(select_frequency(0.0, kP) == doctest::Approx(0.0));
    CHECK(select_frequency(40.0, kP) == doctest::Approx(50.0));
    CHECK(select_frequency(40.1, kP) == doctest::Approx(70.0));
    CHECK(select_frequency(84.0, kP) == doctest::Approx(105.0));
    CHECK_THROWS_AS(select_frequency(85.0, kP), std::invalid_argument);
}

TEST_CASE("build_control composes split, frequencies, rates and drivers") {
    ControlInput c = build_control(12.0, 3, 4, kP);
    CHECK(c.M == 3);
    CHECK(c.Y == 2);
    CHECK(c.zeta == 1);
    REQUIRE(c.allocs.size() == 3);
    CHECK(c.allocs[0].load == doctest::Approx(5.0));
    CHECK(c.allocs[2].load == doctest::Approx(2.0));
    for (const auto& a : c.allocs) CHECK(a.freq == doctest::Approx(50.0));
    // Delay-tight rates: sum r = 2 L / (tau_max - Delta) = 20.
    double sum = 0.0;
    for (const auto& a : c.allocs) sum += a.rate;
    CHECK(sum == doctest::Approx(20.0));

    SUBCASE("zero load shuts the NIC off") {
        ControlInput idle = build_control(0.0, 1, 4, kP);
        CHECK(idle.zeta == 0);
        CHECK(idle.allocs[0].freq == doctest::Approx(0.0));
    }
}

TEST_CASE("candidate set enumerates admissible VM counts in order") {
    auto cands = candidate_set(12.0, 4, kP);
    REQUIRE(cands.size() == 8);  // M = 3..10
    for (std::size_t i = 0; i < cands.size(); ++i) {
        CHECK(cands[i].M == 3 + static_cast<int>(i));
        CHECK(cands[i].total_load() == doctest::Approx(12.0));
    }

    SUBCASE("zero load still explores every count") {
        auto idle = candidate_set(0.0, 4, kP);
        REQUIRE(idle.size() == 10);
        CHECK(idle.front().M == 1);
        CHECK(idle.back().M == 10);
    }
    SUBCASE("peak load leaves a single candidate") {
        auto full = candidate_set(50.0, 4, kP);
        REQUIRE(full.size() == 1);
        CHECK(full.front().M == 10);
    }
}
