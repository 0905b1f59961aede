#pragma once

#include <vector>

#include "arces/control.hpp"
#include "arces/params.hpp"

namespace arces {

// Smallest admissible VM count for workload L: max(d, ceil(L / lambda_max)).
// Throws when even M_max VMs cannot hold L.
int vm_count(double L, const SystemParams& p);

// Splits L over M VMs.  At the minimum count (M == vm_count(L)) VMs are packed
// fill-first to lambda_max each; with spare VMs the split is even.  L must fit
// in M * lambda_max.
std::vector<double> distribute_load(double L, int M, const SystemParams& p);

// Smallest frequency in freq_set able to finish lambda within the computing
// budget: f >= lambda / Delta.  lambda = 0 selects 0.  Throws when even f_max
// is too slow.
double select_frequency(double lambda, const SystemParams& p);

// Full control for serving workload L on M VMs with N_BS base stations
// holding active clients: split, per-VM frequencies, delay-tight VLAN rates,
// NIC on iff L > 0, driver count from N_BS.
ControlInput build_control(double L, int M, int n_bs, const SystemParams& p);

// One control per admissible VM count, ordered by ascending M from
// vm_count(L) to M_max.
std::vector<ControlInput> candidate_set(double L, int n_bs, const SystemParams& p);

}  // namespace arces
