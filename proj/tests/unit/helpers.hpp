#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fracent::test {

inline double diff(double a, double b) { return std::abs(a - b); }
inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Seeded draws that give the same sequence on every platform.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (rng_() >> 63) != 0; }

private:
    std::mt19937_64 rng_;
};

}  // namespace fracent::test
