#pragma once

#include <cstdint>

namespace otdp {

/// Deterministic random stream identified by a (seed, stream) pair.
///
/// Identical (seed, stream) pairs always produce identical draw sequences,
/// independent of platform and thread schedule. Parallel code derives one
/// stream per work item instead of sharing a generator.
class SeededRng {
public:
    SeededRng() : SeededRng(0, 0) {}
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Child stream keyed by (seed, stream, substream). Does not advance
    /// this stream's state.
    SeededRng derive(std::uint64_t substream) const;

    std::uint64_t next_u64();

    /// Uniform draw strictly inside (0, 1); safe to pass through log().
    double uniform();
    double uniform(double a, double b);

    /// Standard normal via Box-Muller (two uniforms per draw).
    double gaussian();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_[4];  // xoshiro256++
};

}  // namespace otdp
