// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ia {

// Deterministic counter-based random values. Every scalar is a pure function of
// (root seed, stream tag, counter words), so draws are reproducible independently
// of evaluation order and across platforms. std:: distributions are avoided on
// purpose: their output is implementation-defined.

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                         std::uint64_t d) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ d);
    return h;
}

// uniform in (0,1); never returns 0
inline double to_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// One standard-normal draw keyed by (seed, tag, c0, c1, c2) via Box-Muller.
inline double counter_normal(std::uint64_t seed, std::uint64_t tag, std::uint64_t c0,
                             std::uint64_t c1, std::uint64_t c2) {
    const std::uint64_t h0 = detail::mix(seed, tag, c0, c1, c2);
    const double u1 = detail::to_unit(h0);
    const double u2 = detail::to_unit(detail::splitmix64(h0 ^ 0xd1b54a32d192ed03ull));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Sequential stream of normals for auxiliary draws (random combiners, generators, ...).
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::uint64_t tag) : seed_(seed), tag_(tag) {}

    double next() { return counter_normal(seed_, tag_, counter_++, 0, 0); }

    std::uint64_t next_u64() { return detail::mix(seed_, tag_, counter_++, 1, 0); }

  private:
    std::uint64_t seed_;
    std::uint64_t tag_;
    std::uint64_t counter_ = 0;
};

// Stream tags. Channel coefficients use tag 0 with (user, state, antenna*2+component)
// counters; auxiliary draws get their own tags so adding draws never shifts others.
namespace rng_tag {
inline constexpr std::uint64_t channel = 0;
inline constexpr std::uint64_t aux_combiner = 1;    // v3 / V3 / v4 style draws
inline constexpr std::uint64_t generator = 2;       // G_0
inline constexpr std::uint64_t mimo_channel = 3;    // generic MIMO draws
inline constexpr std::uint64_t pam_values = 4;      // rational re-sampling for the PAM probe
inline constexpr std::uint64_t random_combiner = 5; // negative-control combiners
}  // namespace rng_tag

}  // namespace ia
