#pragma once

#include <cstdint>

namespace parcav {

// Deterministic 64-bit generator (splitmix64).  Used instead of <random>
// distributions so that identical seeds give identical records on every
// platform; std::uniform_real_distribution output is implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t state_;
};

// Halton low-discrepancy value: index >= 0 in the given prime base.
inline double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t i = index + 1; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

inline constexpr unsigned kHaltonPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

} // namespace parcav
