#include <algorithm>
#include <cmath>
#include <vector>

#include "arces/controller.hpp"
#include "arces/energy.hpp"
#include "arces/provision.hpp"
#include "doctest.h"

using namespace arces;

namespace {

const SystemParams kP;

bool rel_close(double a, double b, double tol = 1e-6) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool has(const ConstraintReport& r, const std::string& name) {
    return std::find(r.violated.begin(), r.violated.end(), name) != r.violated.end();
}

}  // namespace

TEST_CASE("cpu energy matches the quadratic frequency law") {
    CHECK(rel_close(cpu_energy({105.0, 50.0}, kP), 81.337868480725623583));
    CHECK(cpu_energy({}, kP) == doctest::Approx(0.0));
    CHECK(cpu_energy({0.0}, kP) == doctest::Approx(10.0));
    CHECK(cpu_energy({105.0}, kP) == doctest::Approx(60.0));
    // Ten VMs at f_max: the maximum computing draw.
    CHECK(cpu_energy(std::vector<double>(10, 105.0), kP) == doctest::Approx(600.0));
}

TEST_CASE("switching energy is quadratic in the frequency change") {
    CHECK(switching_energy({50.0}, {70.0}, 0.005) == doctest::Approx(2.0));
    CHECK(rel_close(switching_energy({50.0, 0.0}, {70.0, 105.0}, 0.005), 57.125));
    SUBCASE("shorter list is padded with zeros on either side") {
        CHECK(switching_energy({50.0}, {70.0, 105.0}, 0.005) ==
              doctest::Approx(0.005 * (400.0 + 105.0 * 105.0)));
        CHECK(switching_energy({70.0, 105.0}, {50.0}, 0.005) ==
              doctest::Approx(0.005 * (400.0 + 105.0 * 105.0)));
    }
    CHECK(switching_energy({50.0}, {50.0}, 0.005) == doctest::Approx(0.0));
    CHECK(switching_energy({}, {}, 0.005) == doctest::Approx(0.0));
}

TEST_CASE("toe energy covers protocol processing of the input") {
    CHECK(rel_close(toe_energy(1, 1400.0, kP), 14.1));
    CHECK(toe_energy(1, 0.0, kP) == doctest::Approx(13.1));
    CHECK(toe_energy(0, 0.0, kP) == doctest::Approx(0.0));
    CHECK_THROWS_AS(toe_energy(0, 1.0, kP), std::invalid_argument);
}

TEST_CASE("fixed rate spends the full delay budget") {
    CHECK(rel_close(fixed_rate(5.0, kP), 25.0 / 3.0));
    for (double lambda : {0.25, 1.0, 2.5, 5.0}) {
        const double r = fixed_rate(lambda, kP);
        CHECK(std::abs(2.0 * lambda / r + kP.Delta - kP.tau_max) <= 1e-12);
    }
}

TEST_CASE("link power follows the exponential rate law") {
    CHECK(link_power(0.0, kP) == doctest::Approx(0.0));
    CHECK(rel_close(link_power(1.0, kP), 0.5e-3));
    CHECK(rel_close(link_power(25.0 / 3.0, kP), 0.16076989438654376509));

    SUBCASE("midpoint convexity on a 1000-point grid") {
        const int n = 1000;
        std::vector<double> f(n);
        for (int i = 0; i < n; ++i) {
            f[i] = link_power(kP.r_max * i / (n - 1.0), kP);
        }
        for (int i = 1; i + 1 < n; ++i) {
            CHECK(f[i] <= 0.5 * (f[i - 1] + f[i + 1]) + 1e-12);
        }
    }
    SUBCASE("strictly increasing") {
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double v = link_power(i * 1.0, kP);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("linearized link power calibrates against the exact law") {
    const double mu = 1.0005378734821536845;
    const double nu = 0.0;
    const double star = 5.0;
    const double exact = link_power(fixed_rate(star, kP), kP);
    const double approx = std::exp(linearized_link_power(star, mu, nu, kP));
    CHECK(std::abs(exact - approx) <= 1e-9 * std::max(exact, approx));

    SUBCASE("surrogate is monotone increasing in the workload") {
        double prev = -1e300;
        for (int i = 1; i <= 50; ++i) {
            const double v = std::exp(linearized_link_power(0.1 * i, mu, nu, kP));
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("vlan energy charges both transfer directions") {
    std::vector<VmAllocation> one = {{5.0, 50.0, 25.0 / 3.0}};
    CHECK(rel_close(vlan_energy(one, kP), 0.19292387326385251811));

    SUBCASE("idle VMs do not pay") {
        std::vector<VmAllocation> mixed = {{5.0, 50.0, 25.0 / 3.0}, {0.0, 0.0, 0.0}};
        CHECK(vlan_energy(mixed, kP) == doctest::Approx(vlan_energy(one, kP)));
    }
    SUBCASE("two served VMs pay twice the single-VM energy") {
        std::vector<VmAllocation> two = {{5.0, 50.0, 25.0 / 3.0}, {5.0, 50.0, 25.0 / 3.0}};
        CHECK(vlan_energy(two, kP) == doctest::Approx(2.0 * vlan_energy(one, kP)));
    }
}

TEST_CASE("wifi batch energy is independent of the driver count") {
    CHECK(wcom_energy(10.0, 2, kP) == doctest::Approx(10.0));
    CHECK(wcom_energy(10.0, 5, kP) == doctest::Approx(10.0));
    CHECK(wcom_energy(0.0, 3, kP) == doctest::Approx(0.0));
}

TEST_CASE("driver count tracks the base-station population") {
    CHECK(driver_count(4, kP) == 2);
    CHECK(driver_count(100, kP) == 4);
    CHECK(driver_count(300, kP) == 6);
    CHECK(driver_count(1, kP) >= 1);
    CHECK(driver_count(100000, kP) == kP.Y_max);
}

TEST_CASE("total energy composes the five terms") {
    SUBCASE("all-idle slot costs exactly one idle VM") {
        ControlInput idle;
        idle.M = 1;
        idle.Y = 1;
        idle.zeta = 0;
        idle.allocs = {{0.0, 0.0, 0.0}};
        EnergyBreakdown e = total_energy(idle, idle, 0.0, 0.0, kP);
        CHECK(e.total() == doctest::Approx(10.0));
        CHECK(e.cpu == doctest::Approx(10.0));
        CHECK(e.switching == doctest::Approx(0.0));
        CHECK(e.toe == doctest::Approx(0.0));
        CHECK(e.vlan == doctest::Approx(0.0));
        CHECK(e.wcom == doctest::Approx(0.0));
    }
    SUBCASE("max provisioning with no input costs the idle ceiling") {
        ControlInput nm = no_management_control(0.0, kP);
        EnergyBreakdown e = total_energy(nm, nm, 0.0, 0.0, kP);
        CHECK(rel_close(e.total(), 613.1));
    }
    SUBCASE("breakdown total equals the field sum") {
        ControlInput c = build_control(12.0, 3, 4, kP);
        ControlInput prev = build_control(7.0, 2, 4, kP);
        EnergyBreakdown e = total_energy(c, prev, 12.0, 10.0, kP);
        CHECK(e.total() == e.cpu + e.switching + e.toe + e.vlan + e.wcom);
        CHECK(e.wcom == doctest::Approx(10.0));
    }
}

TEST_CASE("constraint checks flag each bound separately") {
    const double B_ok = kP.B_up();
    ControlInput good = build_control(12.0, 3, 4, kP);
    CHECK(check_constraints(good, B_ok, kP).ok());

    SUBCASE("C1 VM count bounds") {
        ControlInput c = good;
        c.M = 0;
        CHECK(has(check_constraints(c, B_ok, kP), "C1"));
        c.M = kP.M_max + 1;
        CHECK(has(check_constraints(c, B_ok, kP), "C1"));
    }
    SUBCASE("C2 battery guard band") {
        CHECK(has(check_constraints(good, kP.B_low() - 1.0, kP), "C2"));
        CHECK(has(check_constraints(good, kP.B_max + 1.0, kP), "C2"));
        CHECK(check_constraints(good, kP.B_low(), kP).ok());
    }
    SUBCASE("C3 frequency bounds") {
        ControlInput c = good;
        c.allocs[0].freq = kP.f_max() + 1.0;
        CHECK(has(check_constraints(c, B_ok, kP), "C3"));
    }
    SUBCASE("C4 per-VM load cap") {
        ControlInput c = good;
        c.allocs[0].load = kP.lambda_max + 0.1;
        CHECK(has(check_constraints(c, B_ok, kP), "C4"));
    }
    SUBCASE("C5 computing time budget") {
        ControlInput c = good;
        c.allocs[2].freq = 0.0;  // load 2 with no frequency cannot finish
        CHECK(has(check_constraints(c, B_ok, kP), "C5"));
        // lambda=5 at f=50 gives chi = 0.1 <= Delta.
        CHECK_FALSE(has(check_constraints(good, B_ok, kP), "C5"));
    }
    SUBCASE("C6 aggregate rate cap") {
        ControlInput c = good;
        for (auto& a : c.allocs) a.rate = 40.0;
        CHECK(has(check_constraints(c, B_ok, kP), "C6"));
        // L=12 over 3 VMs at the fixed rate: sum r = 20 <= 100.
        double sum = 0.0;
        for (const auto& a : good.allocs) sum += a.rate;
        CHECK(sum == doctest::Approx(2.0 * 12.0 / 1.2));
    }
    SUBCASE("C7 round-trip delay budget holds with equality at the fixed rate") {
        CHECK_FALSE(has(check_constraints(good, B_ok, kP), "C7"));
        ControlInput c = good;
        c.allocs[0].rate = 1.0;  // 2*5/1 + 0.8 > tau_max
        CHECK(has(check_constraints(c, B_ok, kP), "C7"));
    }
}
