#pragma once

#include <cmath>
#include <cstdint>

namespace cpsim {

// splitmix64 finalizer; used both as a stream generator and as a mixing hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

// Deterministic PRNG (xoshiro-free, splitmix-based counter stream). All
// distributions are hand-rolled so sequences are identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller (used only for weight init).
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

private:
    std::uint64_t state_;
};

// Stateless uniform draw keyed by (seed, tick, a, b, kind). Message delivery
// uses this so the fate of a given (message, receiver) pair is a pure function
// of the channel seed: identical messages get identical fates across policy
// runs (common random numbers), and evaluation stays order-independent.
inline double keyed_uniform01(std::uint64_t seed, std::uint64_t tick, std::uint64_t a,
                              std::uint64_t b, std::uint64_t kind) {
    std::uint64_t h = seed;
    h = mix64(h, tick);
    h = mix64(h, a);
    h = mix64(h, b);
    h = mix64(h, kind);
    return static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53;
}

}  // namespace cpsim
