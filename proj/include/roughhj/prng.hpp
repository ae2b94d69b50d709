#pragma once

#include <cstdint>

namespace roughhj {

// splitmix64: the documented generator behind all sampling in this library.
// One instance per stream; streams for component c of seed s are seeded with
// splitmix64_next(s + 0x9e3779b97f4a7c15 * (c+1)).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in (0,1), never 0 or 1
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal();
};

SplitMix64 component_stream(std::uint64_t seed, int component);

// Deterministic natural log built from exponent extraction and the atanh
// series; avoids libm so that sampled increments are bit-identical across
// platforms.
double det_log(double x);

// Inverse normal CDF (Acklam's rational approximation, |rel err| < 1.2e-9).
double normal_inv_cdf(double p);

} // namespace roughhj
