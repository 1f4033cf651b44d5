#pragma once

#include <cmath>
#include <cstdint>

namespace twostar {

// Logistic function, stable for large |t|.
inline double sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// Compensated (Kahan) accumulator. Summation order is fixed by the caller,
// so results are reproducible run to run.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

// |a - b| <= rel * max(|a|,|b|), with an absolute floor for near-zero pairs.
inline bool rel_close(double a, double b, double rel, double abs_floor = 1e-12) {
    const double diff = std::fabs(a - b);
    if (diff <= abs_floor) return true;
    return diff <= rel * std::max(std::fabs(a), std::fabs(b));
}

inline double relative_error(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

// splitmix64 step; used to derive independent per-chain seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace twostar
