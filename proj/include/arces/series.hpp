#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arces {

using Series = std::vector<double>;

// Raised for malformed or inconsistent trace inputs (CSV syntax, slot gaps,
// negative samples, length mismatches).
class TraceError : public std::runtime_error {
  public:
    explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

// Slot-aligned input of one simulation: offloaded workload arriving per slot
// [Mbit], harvested energy per slot [J], and the number of base stations with
// active clients per slot.
struct Trace {
    Series workload;
    Series harvest;
    std::vector<int> bs_count;

    std::size_t slots() const { return workload.size(); }
};

// Builds a trace after checking that the three series have equal nonzero
// length and that every bs_count entry is >= 1.
Trace make_trace(Series workload, Series harvest, std::vector<int> bs_count);

// Reads a `slot,value` CSV.  The header line is mandatory, slots must run
// 0,1,2,... without gaps, values must be finite and >= 0.
Series load_series_csv(const std::string& path);

// Same format, but every value must additionally be integral (a base-station
// count).
std::vector<int> load_bs_csv(const std::string& path);

void save_series_csv(const std::string& path, const Series& s);

// Sinusoid between trough and peak (one full cycle every `period` slots,
// peak at slot 0) plus Gaussian noise clipped to +-3 noise_std; samples are
// floored at 0.  Deterministic per (arguments, seed).
Series synthesize_diurnal(std::size_t slots, double peak, double trough,
                          double period, double noise_std, std::uint32_t seed);

// Rescales a nonnegative harvest profile so its per-slot maximum equals
// B_max.  An all-zero profile is returned unchanged.
Series scale_solar_to_battery(const Series& raw, double B_max);

struct NormBounds {
    double lo = 0.0;
    double hi = 1.0;
};

// Min-max normalization to [0,1]; a constant series maps to all zeros.
std::pair<Series, NormBounds> normalize_minmax(const Series& s);
Series denormalize(const Series& s, NormBounds bounds);

}  // namespace arces
