#pragma once

#include <cstdint>
#include <cmath>

namespace frobstat {

// Counter-based deterministic RNG.  Every (seed, stream) pair yields an
// independent sequence, so parallel code can give stream i to sample i and
// produce output that does not depend on the worker count.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL));
        if (state_ == 0) state_ = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [lo, hi] (inclusive), via rejection.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64()); // full 64-bit span
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % range);
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double next_normal() {
        double u1 = 1.0 - next_double(); // (0,1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

} // namespace frobstat
