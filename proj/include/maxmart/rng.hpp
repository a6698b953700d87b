#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace maxmart {

/// Identifies one reproducible random stream: path i of a batch uses stream i.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer (Stafford "mix13" variant).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Odd Weyl increment with enough bit transitions, as in SplitMix64's split().
constexpr std::uint64_t mix_gamma(std::uint64_t z) noexcept {
    z = mix64(z) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
}

/// Child seed for auxiliary work (nested simulations etc.) tagged by purpose.
constexpr Seed derive_seed(Seed parent, std::uint64_t tag, std::uint64_t stream) noexcept {
    return Seed{mix64(mix64(parent.master ^ mix64(tag)) + parent.stream * kGoldenGamma), stream};
}

/**
 * SplitMix64 used in counter mode.
 *
 * The n-th output of a stream is mix64(key + n * gamma), a pure function of
 * (master, stream, n). Key and gamma are both derived from the seed, so
 * distinct streams walk distinct Weyl sequences and never share outputs by a
 * simple offset. Worker count cannot influence any draw.
 */
class StreamEngine {
public:
    using result_type = std::uint64_t;

    explicit StreamEngine(Seed seed) noexcept
        : key_(mix64(mix64(seed.master ^ 0x6a09e667f3bcc909ULL) + seed.stream * kGoldenGamma)),
          gamma_(mix_gamma(key_ ^ 0xbb67ae8584caa73bULL)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix64(key_ + gamma_ * ++counter_); }

    void discard(std::uint64_t n) noexcept { counter_ += n; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe to take the logarithm of.
    double uniform_pos() noexcept { return 1.0 - uniform(); }

    /// Exponential with unit rate, by inversion.
    double exponential() noexcept { return -std::log(uniform_pos()); }

private:
    std::uint64_t key_;
    std::uint64_t gamma_;
    std::uint64_t counter_ = 0;
};

}  // namespace maxmart
