#include "otdp/rng.hpp"

#include <cmath>
#include <numbers>

namespace otdp {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    // Expand (seed, stream) into generator state; splitmix64 guarantees no
    // all-zero state.
    std::uint64_t x = seed ^ rotl(stream, 32) ^ 0x6a09e667f3bcc909ULL;
    for (auto& s : state_) s = splitmix64(x);
}

SeededRng SeededRng::derive(std::uint64_t substream) const {
    std::uint64_t x = stream_ ^ 0x3c6ef372fe94f82bULL;
    std::uint64_t child = splitmix64(x) + substream * kGolden;
    return SeededRng(seed_, splitmix64(child));
}

std::uint64_t SeededRng::next_u64() {
    // xoshiro256++ (Blackman & Vigna)
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::uniform() {
    // 53-bit mantissa, shifted half a step away from both endpoints.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::uniform(double a, double b) {
    return a + (b - a) * uniform();
}

double SeededRng::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace otdp
