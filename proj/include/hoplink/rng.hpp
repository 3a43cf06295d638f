#pragma once

#include <cmath>
#include <cstdint>

namespace hoplink::rng {

// Counter-based substreams: the state for (seed, stream, trial) is a pure
// function of those three values, so trial i draws the same numbers no matter
// how trials are partitioned across threads.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
        state_ = mix64(mix64(mix64(seed) ^ stream) ^ trial);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1); never returns an exact endpoint.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_exponential(double mean = 1.0) {
        return -mean * std::log(next_unit_open());
    }

    bool next_bernoulli(double p) { return next_unit_open() < p; }

private:
    std::uint64_t state_;
};

} // namespace hoplink::rng
