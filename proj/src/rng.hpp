#pragma once

#include <cstdint>

namespace birow {

// SplitMix64 (Steele, Lea, Vigna 2014). The i-th output is a pure function of
// (seed, i), so streams reproduce byte-identically across platforms and runs:
//   out_i = mix(seed + (i+1) * 0x9E3779B97F4A7C15)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n >= 1. Plain modulo: bias is irrelevant here and the
    // result stays identical on every platform.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace birow
