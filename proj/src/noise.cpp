#include "cqec/noise.hpp"

#include <cmath>
#include <cstring>

namespace cqec {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

// 53-bit uniform strictly inside (0, 1).
inline double to_open_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
    std::uint64_t x0 = counter[0], x1 = counter[1], x2 = counter[2], x3 = counter[3];
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kMul0, x0, hi0, lo0);
        mul_hi_lo(kMul1, x2, hi1, lo1);
        const std::uint64_t y0 = hi1 ^ x1 ^ k0;
        const std::uint64_t y1 = lo1;
        const std::uint64_t y2 = hi0 ^ x3 ^ k1;
        const std::uint64_t y3 = lo0;
        x0 = y0;
        x1 = y1;
        x2 = y2;
        x3 = y3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {x0, x1, x2, x3};
}

double NoiseStream::gaussian(std::uint64_t trajectory, std::uint64_t channel,
                             std::uint64_t step) const {
    const auto out = philox4x64({step, trajectory, channel, 0}, {seed_, domain_});
    const double u1 = to_open_unit(out[0]);
    const double u2 = to_open_unit(out[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double NoiseStream::wiener(std::uint64_t trajectory, std::uint64_t channel, std::uint64_t step,
                           double dt) const {
    return gaussian(trajectory, channel, step) * std::sqrt(dt);
}

double NoiseStream::uniform(std::uint64_t trajectory, std::uint64_t channel,
                            std::uint64_t step) const {
    const auto out = philox4x64({step, trajectory, channel, 0}, {seed_, domain_});
    return static_cast<double>(out[0] >> 11) * 0x1.0p-53;
}

void Fnv1a::add(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    add_u64(bits);
}

void Fnv1a::add_u64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        state ^= (x >> (8 * i)) & 0xffu;
        state *= 1099511628211ull;
    }
}

}  // namespace cqec
