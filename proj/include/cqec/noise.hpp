#pragma once

#include <array>
#include <cstdint>

namespace cqec {

// Philox4x64-10 counter-based block generator.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

// Deterministic Gaussian noise addressed by (trajectory, channel, step).
// A draw is a pure function of (seed, domain, address): independent of
// evaluation order, feedback values and worker scheduling, so replays and
// ensembles reproduce bit-identically.
class NoiseStream {
public:
    static constexpr std::uint64_t kTrajectoryDomain = 0;
    static constexpr std::uint64_t kSamplerDomain = 1;

    explicit NoiseStream(std::uint64_t seed, std::uint64_t domain = kTrajectoryDomain)
        : seed_(seed), domain_(domain) {}

    std::uint64_t seed() const { return seed_; }

    // Standard normal at an address.
    double gaussian(std::uint64_t trajectory, std::uint64_t channel, std::uint64_t step) const;

    // Wiener increment: gaussian * sqrt(dt), variance dt.
    double wiener(std::uint64_t trajectory, std::uint64_t channel, std::uint64_t step,
                  double dt) const;

    // Uniform in [0, 1) at an address (used by samplers).
    double uniform(std::uint64_t trajectory, std::uint64_t channel, std::uint64_t step) const;

private:
    std::uint64_t seed_;
    std::uint64_t domain_;
};

// FNV-1a over raw double bits; order-sensitive. Used for replay checksums.
struct Fnv1a {
    std::uint64_t state = 14695981039346656037ull;
    void add(double x);
    void add_u64(std::uint64_t x);
};

}  // namespace cqec
