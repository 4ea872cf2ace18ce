#pragma once

#include <cstdint>

namespace sticky {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based 64-bit stream keyed by (seed, stream, index).
///
/// Output k of a stream is mix64(key + k * golden_gamma), so any path's draws
/// depend only on its key and never on which thread produced them or in what
/// order neighbouring paths were simulated.
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : counter_(mix64(mix64(mix64(seed) ^ (stream + kGamma)) ^ (index + 2 * kGamma))) {}

    constexpr std::uint64_t next() {
        counter_ += kGamma;
        return mix64(counter_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t counter_;
};

}  // namespace sticky
