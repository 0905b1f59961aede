#include "arces/provision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "arces/energy.hpp"

namespace arces {

int vm_count(double L, const SystemParams& p) {
    if (L < 0.0) throw std::invalid_argument("vm_count: L must be >= 0");
    const int needed = static_cast<int>(std::ceil(L / p.lambda_max));
    const int m = std::max(p.d, needed);
    if (m > p.M_max) {
        std::ostringstream os;
        os << "vm_count: workload " << L << " Mbit overloads the server ("
           << p.M_max << " VMs x " << p.lambda_max << " Mbit)";
        throw std::invalid_argument(os.str());
    }
    return m;
}

std::vector<double> distribute_load(double L, int M, const SystemParams& p) {
    if (L < 0.0) throw std::invalid_argument("distribute_load: L must be >= 0");
    if (M < 1) throw std::invalid_argument("distribute_load: M must be >= 1");
    if (L > static_cast<double>(M) * p.lambda_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "distribute_load: " << L << " Mbit does not fit in " << M << " VMs";
        throw std::invalid_argument(os.str());
    }

    std::vector<double> loads(static_cast<std::size_t>(M), 0.0);
    if (L == 0.0) return loads;

    if (M == vm_count(L, p)) {
        double rest = L;
        for (int m = 0; m < M; ++m) {
            const double take = std::min(rest, p.lambda_max);
            loads[static_cast<std::size_t>(m)] = take;
            rest -= take;
        }
    } else {
        const double share = L / static_cast<double>(M);
        std::fill(loads.begin(), loads.end(), share);
    }
    return loads;
}

double select_frequency(double lambda, const SystemParams& p) {
    if (lambda < 0.0) throw std::invalid_argument("select_frequency: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;
    const double required = lambda / p.Delta;
    for (double f : p.freq_set) {
        if (f >= required) return f;
    }
    std::ostringstream os;
    os << "select_frequency: " << lambda << " Mbit needs " << required
       << " Mbit/s, above f_max " << p.f_max();
    throw std::invalid_argument(os.str());
}

ControlInput build_control(double L, int M, int n_bs, const SystemParams& p) {
    ControlInput c;
    c.M = M;
    c.Y = driver_count(n_bs, p);
    c.zeta = L > 0.0 ? 1 : 0;
    c.split = (L > 0.0 && M == vm_count(L, p)) ? SplitPolicy::kFillFirst
                                               : SplitPolicy::kEven;
    const std::vector<double> loads = distribute_load(L, M, p);
    c.allocs.resize(loads.size());
    for (std::size_t m = 0; m < loads.size(); ++m) {
        c.allocs[m].load = loads[m];
        c.allocs[m].freq = select_frequency(loads[m], p);
        c.allocs[m].rate = fixed_rate(loads[m], p);
    }
    return c;
}

std::vector<ControlInput> candidate_set(double L, int n_bs, const SystemParams& p) {
    const int m_min = vm_count(L, p);
    std::vector<ControlInput> out;
    out.reserve(static_cast<std::size_t>(p.M_max - m_min + 1));
    for (int m = m_min; m <= p.M_max; ++m) out.push_back(build_control(L, m, n_bs, p));
    return out;
}

}  // namespace arces
