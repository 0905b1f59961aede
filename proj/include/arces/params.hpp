#pragma once

#include <vector>

namespace arces {

// Static configuration of the virtualized server, its network interfaces and
// the energy subsystem.  Units are fixed project-wide: workloads in Mbit,
// rates and processing frequencies in Mbit/s, times in seconds, energies in
// joules, powers in watts.  eta is the only exception (Gbit/J, as usually
// quoted for TCP offload hardware).
struct SystemParams {
    int    M_max          = 10;      // VM slots on the physical server
    int    d              = 1;       // minimum number of active VMs
    double tau            = 60.0;    // slot duration [s]

    double theta_idle_vm  = 10.0;    // per-VM idle energy per slot [J]
    double theta_max_vm   = 60.0;    // per-VM energy at f_max per slot [J]
    double kappa_e        = 0.005;   // frequency switching cost [J/(Mbit/s)^2]

    double theta_idle_toe = 13.1;    // TCP offload engine idle energy [J]
    double eta            = 1.4;     // TOE efficiency [Gbit/J]

    double Delta          = 0.8;     // per-VM computing time budget [s]
    std::vector<double> freq_set = {0.0, 50.0, 70.0, 90.0, 105.0};  // [Mbit/s]

    double W              = 1.0;     // VLAN bandwidth per link [MHz]
    double Gamma          = 0.5e-3;  // VLAN link power scale [W]
    double r_max          = 100.0;   // aggregate VLAN rate cap [Mbit/s]

    int    Y_max          = 6;       // WiFi driver slots
    double tau_max        = 2.0;     // round-trip delay budget per task [s]
    double lambda_max     = 5.0;     // per-VM workload cap per slot [Mbit]
    double O_opt          = 1.0;     // WiFi driver transmit power [J/s]
    double r0             = 1.0;     // WiFi uplink rate per driver [Mbit/s]
    double alpha_delay    = 0.96;    // delay-budget utilization target
    double sigma          = 0.02;    // per-BS service latency [s]
    int    Upsilon        = 3;       // slots between batch transmissions

    double B_max          = 490e3;   // battery capacity [J]
    double B_low_frac     = 0.3;     // lower guard level, fraction of B_max
    double B_up_frac      = 0.7;     // purchase target level, fraction of B_max

    double f_max() const { return freq_set.back(); }
    double B_low() const { return B_low_frac * B_max; }
    double B_up()  const { return B_up_frac * B_max; }

    // Throws std::invalid_argument on an inconsistent parameter set.
    void validate() const;
};

}  // namespace arces
