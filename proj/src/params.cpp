#include "arces/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arces {

namespace {

void fail(const std::string& what) {
    throw std::invalid_argument("SystemParams: " + what);
}

void require_finite_nonneg(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << name << " must be finite and >= 0, got " << v;
        fail(os.str());
    }
}

}  // namespace

void SystemParams::validate() const {
    if (d < 1) fail("d must be >= 1");
    if (M_max < d) fail("M_max must be >= d");
    if (!(tau > 0.0)) fail("tau must be > 0");
    require_finite_nonneg(theta_idle_vm, "theta_idle_vm");
    require_finite_nonneg(theta_max_vm, "theta_max_vm");
    if (theta_max_vm < theta_idle_vm) fail("theta_max_vm must be >= theta_idle_vm");
    require_finite_nonneg(kappa_e, "kappa_e");
    require_finite_nonneg(theta_idle_toe, "theta_idle_toe");
    if (!(eta > 0.0)) fail("eta must be > 0");
    if (freq_set.size() < 2 || freq_set.front() != 0.0) {
        fail("freq_set must contain 0 followed by at least one positive frequency");
    }
    for (std::size_t i = 1; i < freq_set.size(); ++i) {
        if (!(freq_set[i] > freq_set[i - 1])) fail("freq_set must be strictly ascending");
    }
    if (!(W > 0.0)) fail("W must be > 0");
    require_finite_nonneg(Gamma, "Gamma");
    if (!(r_max > 0.0)) fail("r_max must be > 0");
    if (Y_max < 1) fail("Y_max must be >= 1");
    if (!(Delta > 0.0)) fail("Delta must be > 0");
    if (!(tau_max > Delta)) fail("tau_max must exceed Delta");
    if (!(lambda_max > 0.0)) fail("lambda_max must be > 0");
    if (!(O_opt >= 0.0)) fail("O_opt must be >= 0");
    if (!(r0 > 0.0)) fail("r0 must be > 0");
    if (!(alpha_delay > 0.0 && alpha_delay <= 1.0)) fail("alpha_delay must be in (0, 1]");
    if (!(sigma > 0.0)) fail("sigma must be > 0");
    if (Upsilon < 1) fail("Upsilon must be >= 1");
    if (!(B_max > 0.0)) fail("B_max must be > 0");
    if (!(B_low_frac >= 0.0 && B_low_frac < B_up_frac && B_up_frac <= 1.0)) {
        fail("battery guard levels must satisfy 0 <= B_low_frac < B_up_frac <= 1");
    }
}

}  // namespace arces
