#include "arces/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace arces {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& path, std::size_t line) {
    const std::string t = strip(text);
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        std::ostringstream os;
        os << path << ":" << line << ": not a finite number: '" << text << "'";
        throw TraceError(os.str());
    }
    return v;
}

Series load_csv_impl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceError("cannot open trace file: " + path);

    std::string line;
    if (!std::getline(in, line) || strip(line) != "slot,value") {
        throw TraceError(path + ": missing 'slot,value' header");
    }

    Series out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = strip(line);
        if (row.empty()) continue;
        const std::size_t comma = row.find(',');
        if (comma == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected 'slot,value', got '" << row << "'";
            throw TraceError(os.str());
        }
        const double slot = parse_number(row.substr(0, comma), path, lineno);
        const double value = parse_number(row.substr(comma + 1), path, lineno);
        const auto expected = static_cast<double>(out.size());
        if (slot != expected) {
            std::ostringstream os;
            os << path << ": gap at slot " << out.size() << ": expected slot "
               << out.size() << ", found " << slot;
            throw TraceError(os.str());
        }
        if (value < 0.0) {
            std::ostringstream os;
            os << path << ":" << lineno << ": negative value " << value
               << " at slot " << out.size();
            throw TraceError(os.str());
        }
        out.push_back(value);
    }
    if (out.empty()) throw TraceError(path + ": no samples");
    return out;
}

}  // namespace

Trace make_trace(Series workload, Series harvest, std::vector<int> bs_count) {
    if (workload.empty()) throw TraceError("trace must have at least one slot");
    if (harvest.size() != workload.size() || bs_count.size() != workload.size()) {
        std::ostringstream os;
        os << "trace series lengths differ: workload=" << workload.size()
           << " harvest=" << harvest.size() << " bs_count=" << bs_count.size();
        throw TraceError(os.str());
    }
    for (std::size_t t = 0; t < bs_count.size(); ++t) {
        if (bs_count[t] < 1) {
            std::ostringstream os;
            os << "bs_count must be >= 1, got " << bs_count[t] << " at slot " << t;
            throw TraceError(os.str());
        }
    }
    return Trace{std::move(workload), std::move(harvest), std::move(bs_count)};
}

Series load_series_csv(const std::string& path) { return load_csv_impl(path); }

std::vector<int> load_bs_csv(const std::string& path) {
    const Series raw = load_csv_impl(path);
    std::vector<int> out;
    out.reserve(raw.size());
    for (std::size_t t = 0; t < raw.size(); ++t) {
        double ip = 0.0;
        if (std::modf(raw[t], &ip) != 0.0) {
            std::ostringstream os;
            os << path << ": non-integer bs_count " << raw[t] << " at slot " << t;
            throw TraceError(os.str());
        }
        out.push_back(static_cast<int>(ip));
    }
    return out;
}

void save_series_csv(const std::string& path, const Series& s) {
    std::ofstream out(path);
    if (!out) throw TraceError("cannot write trace file: " + path);
    out << "slot,value\n";
    out.precision(17);
    for (std::size_t t = 0; t < s.size(); ++t) out << t << "," << s[t] << "\n";
}

Series synthesize_diurnal(std::size_t slots, double peak, double trough,
                          double period, double noise_std, std::uint32_t seed) {
    if (slots == 0) throw std::invalid_argument("synthesize_diurnal: slots must be >= 1");
    if (!(period > 0.0)) throw std::invalid_argument("synthesize_diurnal: period must be > 0");
    if (!(trough >= 0.0) || !(peak >= trough)) {
        throw std::invalid_argument("synthesize_diurnal: need peak >= trough >= 0");
    }
    if (noise_std < 0.0) throw std::invalid_argument("synthesize_diurnal: noise_std must be >= 0");

    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Series out(slots);
    for (std::size_t t = 0; t < slots; ++t) {
        const double phase = std::cos(2.0 * kPi * static_cast<double>(t) / period);
        double v = trough + (peak - trough) * 0.5 * (1.0 + phase);
        if (noise_std > 0.0) {
            const double n = noise(rng) * noise_std;
            v += std::clamp(n, -3.0 * noise_std, 3.0 * noise_std);
        }
        out[t] = std::max(0.0, v);
    }
    return out;
}

Series scale_solar_to_battery(const Series& raw, double B_max) {
    if (raw.empty()) throw std::invalid_argument("scale_solar_to_battery: empty series");
    if (!(B_max > 0.0)) throw std::invalid_argument("scale_solar_to_battery: B_max must be > 0");
    double peak = 0.0;
    for (double v : raw) {
        if (v < 0.0) throw std::invalid_argument("scale_solar_to_battery: negative sample");
        peak = std::max(peak, v);
    }
    if (peak == 0.0) return raw;
    Series out(raw.size());
    const double k = B_max / peak;
    for (std::size_t t = 0; t < raw.size(); ++t) out[t] = raw[t] * k;
    return out;
}

std::pair<Series, NormBounds> normalize_minmax(const Series& s) {
    if (s.empty()) throw std::invalid_argument("normalize_minmax: empty series");
    const auto [lo_it, hi_it] = std::minmax_element(s.begin(), s.end());
    NormBounds b{*lo_it, *hi_it};
    Series out(s.size());
    if (b.hi == b.lo) {
        std::fill(out.begin(), out.end(), 0.0);
        return {out, b};
    }
    const double span = b.hi - b.lo;
    for (std::size_t t = 0; t < s.size(); ++t) out[t] = (s[t] - b.lo) / span;
    return {out, b};
}

Series denormalize(const Series& s, NormBounds bounds) {
    Series out(s.size());
    const double span = bounds.hi - bounds.lo;
    for (std::size_t t = 0; t < s.size(); ++t) out[t] = bounds.lo + s[t] * span;
    return out;
}

}  // namespace arces
