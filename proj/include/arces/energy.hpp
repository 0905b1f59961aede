#pragma once

#include <string>
#include <vector>

#include "arces/control.hpp"
#include "arces/params.hpp"

namespace arces {

// Per-slot energy split of the computing-plus-communication platform [J].
struct EnergyBreakdown {
    double cpu = 0.0;        // VM processing
    double switching = 0.0;  // frequency reconfiguration
    double toe = 0.0;        // TCP offload engine
    double vlan = 0.0;       // intra-server VM links
    double wcom = 0.0;       // WiFi backhaul transmission

    double total() const { return cpu + switching + toe + vlan + wcom; }
};

// Sum over VMs of theta_idle + (f/f_max)^2 (theta_max - theta_idle).
// Idle VMs (f = 0) still pay theta_idle.
double cpu_energy(const std::vector<double>& freqs, const SystemParams& p);

// Sum of kappa_e (f_next - f_prev)^2 over VM positions; the shorter of the
// two frequency lists is padded with zeros so appearing and disappearing VMs
// are charged from/to frequency 0.
double switching_energy(const std::vector<double>& prev_freqs,
                        const std::vector<double>& freqs, double kappa_e);

// zeta = 1: theta_idle_toe + L_in / eta (eta converted from Gbit/J).
// zeta = 0 is valid only for L_in = 0 and costs nothing.
double toe_energy(int zeta, double L_in, const SystemParams& p);

// Power needed to sustain rate r on one VLAN link: Gamma (2^{r/W} - 1).
// Strictly convex and increasing in r.
double link_power(double r, const SystemParams& p);

// Log-linear surrogate of link_power at the delay-tight rate of workload
// lambda: ((2 lambda/(tau_max - Delta) - nu W) ln 2)/(mu W) + ln(Gamma/W).
// Used to cross-check link_power, not in the control path.
double linearized_link_power(double lambda, double mu, double nu,
                             const SystemParams& p);

// Rate that spends the entire per-task delay budget left after computing:
// r = 2 lambda / (tau_max - Delta), which makes 2 lambda/r + Delta = tau_max.
double fixed_rate(double lambda, const SystemParams& p);

// Energy of the duplex VLAN transfers: sum over served VMs of
// 2 P(r_m) (lambda_m / r_m).
double vlan_energy(const std::vector<VmAllocation>& allocs, const SystemParams& p);

// Energy to push an output batch of L_out Mbit through Y drivers at rate r0
// each: the equal split makes the total O_opt L_out / r0 independent of Y.
double wcom_energy(double L_out, int Y, const SystemParams& p);

// Drivers needed to keep the expected backhaul service delay inside the
// alpha_delay budget when N_BS base stations hold active clients:
// min(Y_max, ceil((1/alpha) ((omega+1)/omega)^2)), omega = sqrt(Upsilon/(sigma N_BS)).
int driver_count(int n_bs, const SystemParams& p);

// Full slot energy for a control given the previous slot's control (for the
// switching term), the slot workload and the output batch transmitted this
// slot (0 on non-batch slots).
EnergyBreakdown total_energy(const ControlInput& control,
                             const ControlInput& prev_control, double L_in,
                             double L_out_batch, const SystemParams& p);

// Feasibility verdict of a control at battery level B.  C1: d <= M <= M_max;
// C2: B_low <= B <= B_max; C3: 0 <= f <= f_max; C4: 0 <= lambda <= lambda_max;
// C5: lambda/f <= Delta for served VMs; C6: sum r <= r_max; C7: max 2 lambda/r
// + Delta <= tau_max.
struct ConstraintReport {
    std::vector<std::string> violated;

    bool ok() const { return violated.empty(); }
};

ConstraintReport check_constraints(const ControlInput& control, double B,
                                   const SystemParams& p);

}  // namespace arces
