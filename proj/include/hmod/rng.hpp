#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hmod {

// Deterministic random stream used for all instance generation. The generator
// is pinned bit-exactly so that committed golden files stay valid and other
// implementations can reproduce the same streams:
//
//   state transition:  s <- s + 0x9E3779B97F4A7C15  (mod 2^64)
//   output:            z = s
//                      z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//                      z ^= z >> 27;  z *= 0x94D049BB133111EB
//                      z ^= z >> 31
//
//   uniform in [0,1):  (z >> 11) * 2^-53
//   standard normal pair (Box-Muller, one pair per call, u1 drawn first):
//                      u1 = ((z1 >> 11) + 1) * 2^-53   in (0,1]
//                      u2 = (z2 >> 11) * 2^-53          in [0,1)
//                      r = sqrt(-2 ln u1),  t = 2*pi*u2
//                      pair = (r cos t, r sin t)

inline constexpr std::uint64_t kSeedGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Derives the seed of component `index` from a master seed. Component indices
// are fixed per instance layout (see generate.hpp), which keeps parallel
// generation order-independent.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64_finalize(master + (index + 1) * kSeedGamma);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += kSeedGamma;
        return splitmix64_finalize(state_);
    }

    double next_uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // One Box-Muller pair of independent standard normals.
    std::pair<double, double> next_normal_pair() noexcept {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    std::complex<double> next_complex_normal() noexcept {
        const auto [re, im] = next_normal_pair();
        return {re, im};
    }

  private:
    std::uint64_t state_;
};

} // namespace hmod
