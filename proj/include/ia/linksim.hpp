// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ia/linear.hpp"
#include "ia/rational_scheme.hpp"

namespace ia {

/// Gaussian-signaling rate sweep with zero-forcing receivers.
struct RateSweep {
    std::vector<double> powers;
    // rates[p][user][state]: bits per channel use at powers[p]
    std::vector<std::vector<std::vector<double>>> rates;
    std::vector<double> total_rates;  // per power: sum over users of min-over-states
    double slope = 0.0;
    double slope_stderr = 0.0;
    Setting normalization = Setting::real;
    double max_residual_fraction = 0.0;  // max interference power / P over the sweep
};

/// Per (user, state): project by the combiner, zero-force the (already aligned)
/// interference, and sum per-stream rates; compound rate = min over the user's
/// states. Throws UNVERIFIED_SCHEME if re-verification reports failures.
RateSweep zf_rate_sweep(const LinearScheme& scheme, const std::vector<double>& powers);

/// OLS slope of total rate against the DoF normalization (1/2 log2 P real,
/// log2 P complex), fitted over the top half of the power grid.
std::pair<double, double> estimate_slope(const std::vector<double>& total_rates,
                                         const std::vector<double>& powers,
                                         Setting normalization);

/// Exact-integer PAM constellation probe for rational schemes.
struct ConstellationProbe {
    double power = 0.0;
    long long levels = 0;          // per-stream integer range [-Q, Q]
    std::size_t point_count = 0;   // enumerated points (0 when short-circuited)
    Rational min_distance = 0;     // exact, unscaled constellation
    bool collision = false;        // min_distance == 0
    double scale_factor = 0.0;     // A = (1/lambda) P^{a_exponent}
    double min_distance_scaled = 0.0;
    double decode_error_estimate = 0.0;  // pairwise error est. at unit-variance noise
};

inline constexpr std::size_t kDefaultEnumCap = 10000000;

/// Enumerates the noiseless receive constellation at one (receiver, state) with
/// registry symbols re-sampled as random rationals (numerator/denominator <= 2^16),
/// and computes the exact minimum distance. Duplicate stream coefficients
/// short-circuit to an exact zero distance.
ConstellationProbe pam_constellation_probe(const RationalScheme& scheme, int receiver, int state,
                                           double power, std::uint64_t value_seed,
                                           std::size_t cap = kDefaultEnumCap);

}  // namespace ia
