#include "arces/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arces {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Slack for constraint checks that are tight by construction (C7 holds with
// equality under fixed_rate).
constexpr double kTol = 1e-9;

void check_freq(double f, const SystemParams& p, const char* where) {
    if (!(f >= 0.0) || f > p.f_max() + kTol) {
        std::ostringstream os;
        os << where << ": frequency " << f << " outside [0, " << p.f_max() << "]";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

double cpu_energy(const std::vector<double>& freqs, const SystemParams& p) {
    const double fmax = p.f_max();
    double total = 0.0;
    for (double f : freqs) {
        check_freq(f, p, "cpu_energy");
        const double u = f / fmax;
        total += p.theta_idle_vm + u * u * (p.theta_max_vm - p.theta_idle_vm);
    }
    return total;
}

double switching_energy(const std::vector<double>& prev_freqs,
                        const std::vector<double>& freqs, double kappa_e) {
    if (kappa_e < 0.0) throw std::invalid_argument("switching_energy: kappa_e must be >= 0");
    const std::size_t n = std::max(prev_freqs.size(), freqs.size());
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double f1 = m < prev_freqs.size() ? prev_freqs[m] : 0.0;
        const double f2 = m < freqs.size() ? freqs[m] : 0.0;
        const double df = f2 - f1;
        total += kappa_e * df * df;
    }
    return total;
}

double toe_energy(int zeta, double L_in, const SystemParams& p) {
    if (zeta != 0 && zeta != 1) throw std::invalid_argument("toe_energy: zeta must be 0 or 1");
    if (L_in < 0.0) throw std::invalid_argument("toe_energy: L_in must be >= 0");
    if (zeta == 0) {
        if (L_in > 0.0) {
            throw std::invalid_argument(
                "toe_energy: NIC switched off while workload must pass through it");
        }
        return 0.0;
    }
    const double eta_mbit_per_j = p.eta * 1000.0;
    return p.theta_idle_toe + L_in / eta_mbit_per_j;
}

double link_power(double r, const SystemParams& p) {
    if (r < 0.0) throw std::invalid_argument("link_power: rate must be >= 0");
    return p.Gamma * (std::exp2(r / p.W) - 1.0);
}

double linearized_link_power(double lambda, double mu, double nu,
                             const SystemParams& p) {
    if (lambda < 0.0) throw std::invalid_argument("linearized_link_power: lambda must be >= 0");
    if (!(mu > 0.0)) throw std::invalid_argument("linearized_link_power: mu must be > 0");
    if (!(p.Gamma > 0.0)) throw std::invalid_argument("linearized_link_power: Gamma must be > 0");
    const double r = 2.0 * lambda / (p.tau_max - p.Delta);
    return ((r - nu * p.W) * kLn2) / (mu * p.W) + std::log(p.Gamma / p.W);
}

double fixed_rate(double lambda, const SystemParams& p) {
    if (lambda < 0.0) throw std::invalid_argument("fixed_rate: lambda must be >= 0");
    return 2.0 * lambda / (p.tau_max - p.Delta);
}

double vlan_energy(const std::vector<VmAllocation>& allocs, const SystemParams& p) {
    double total = 0.0;
    for (const auto& a : allocs) {
        if (a.load < 0.0) throw std::invalid_argument("vlan_energy: negative load");
        if (a.load == 0.0) continue;
        if (!(a.rate > 0.0)) {
            throw std::invalid_argument("vlan_energy: served VM needs a positive rate");
        }
        total += 2.0 * link_power(a.rate, p) * (a.load / a.rate);
    }
    return total;
}

double wcom_energy(double L_out, int Y, const SystemParams& p) {
    if (L_out < 0.0) throw std::invalid_argument("wcom_energy: L_out must be >= 0");
    if (Y < 1) throw std::invalid_argument("wcom_energy: Y must be >= 1");
    const double per_driver = (L_out / static_cast<double>(Y)) / p.r0;
    return static_cast<double>(Y) * p.O_opt * per_driver;
}

int driver_count(int n_bs, const SystemParams& p) {
    if (n_bs < 1) throw std::invalid_argument("driver_count: N_BS must be >= 1");
    const double omega =
        std::sqrt(static_cast<double>(p.Upsilon) / (p.sigma * static_cast<double>(n_bs)));
    const double ratio = (omega + 1.0) / omega;
    const double y = std::ceil(ratio * ratio / p.alpha_delay);
    const int clamped = static_cast<int>(std::min<double>(y, p.Y_max));
    return std::max(1, clamped);
}

EnergyBreakdown total_energy(const ControlInput& control,
                             const ControlInput& prev_control, double L_in,
                             double L_out_batch, const SystemParams& p) {
    std::vector<double> freqs;
    freqs.reserve(control.allocs.size());
    for (const auto& a : control.allocs) freqs.push_back(a.freq);
    std::vector<double> prev_freqs;
    prev_freqs.reserve(prev_control.allocs.size());
    for (const auto& a : prev_control.allocs) prev_freqs.push_back(a.freq);

    EnergyBreakdown e;
    e.cpu = cpu_energy(freqs, p);
    e.switching = switching_energy(prev_freqs, freqs, p.kappa_e);
    e.toe = toe_energy(control.zeta, L_in, p);
    e.vlan = vlan_energy(control.allocs, p);
    e.wcom = L_out_batch > 0.0 ? wcom_energy(L_out_batch, control.Y, p) : 0.0;
    return e;
}

ConstraintReport check_constraints(const ControlInput& control, double B,
                                   const SystemParams& p) {
    ConstraintReport report;
    auto flag = [&report](const char* code) { report.violated.emplace_back(code); };

    if (control.M < p.d || control.M > p.M_max ||
        control.allocs.size() != static_cast<std::size_t>(control.M)) {
        flag("C1");
    }
    if (B < p.B_low() - kTol || B > p.B_max + kTol) flag("C2");

    bool c3 = true, c4 = true, c5 = true, c7 = true;
    double rate_sum = 0.0;
    for (const auto& a : control.allocs) {
        if (a.freq < 0.0 || a.freq > p.f_max() + kTol) c3 = false;
        if (a.load < 0.0 || a.load > p.lambda_max + kTol) c4 = false;
        if (a.load > 0.0) {
            if (!(a.freq > 0.0) || a.load / a.freq > p.Delta + kTol) c5 = false;
            if (!(a.rate > 0.0) || 2.0 * a.load / a.rate + p.Delta > p.tau_max + kTol) {
                c7 = false;
            }
        }
        rate_sum += a.rate;
    }
    if (!c3) flag("C3");
    if (!c4) flag("C4");
    if (!c5) flag("C5");
    if (rate_sum > p.r_max + kTol) flag("C6");
    if (!c7) flag("C7");
    return report;
}

}  // namespace arces
