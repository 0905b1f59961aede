#pragma once

#include <vector>

namespace arces {

// One VM's share of a slot: workload [Mbit], processing frequency [Mbit/s]
// and the VLAN rate [Mbit/s] provisioned for moving that share in and out.
struct VmAllocation {
    double load = 0.0;
    double freq = 0.0;
    double rate = 0.0;
};

// How per-VM loads are materialized when the executed workload differs from
// the planned one.  kFillFirst packs VMs to lambda_max in order; kEven splits
// equally.
enum class SplitPolicy { kFillFirst, kEven };

// Per-slot decision: active VM count, WiFi driver count, TCP offload engine
// state and the per-VM allocations.  force_max_freq/nic_always_on mark the
// max-provisioning configuration whose frequencies and NIC state do not adapt
// to the load.
struct ControlInput {
    int M = 1;
    int Y = 1;
    int zeta = 0;
    std::vector<VmAllocation> allocs;
    SplitPolicy split = SplitPolicy::kEven;
    bool force_max_freq = false;
    bool nic_always_on = false;

    double total_load() const {
        double s = 0.0;
        for (const auto& a : allocs) s += a.load;
        return s;
    }
};

}  // namespace arces
