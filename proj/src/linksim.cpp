// SPDX-License-Identifier: Apache-2.0
#include "ia/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ia/rng.hpp"

namespace ia {

namespace {

using Eigen::MatrixXcd;

double stream_rate_sum(const LinearScheme& s, const MatrixXcd& effective, const MatrixXcd& noise_cov,
                       double per_stream_power) {
    // Zero-forcing receive equalizer on the interference-free effective channel.
    const MatrixXcd w = effective.inverse();
    const MatrixXcd post = w * noise_cov * w.adjoint();
    double rate = 0.0;
    for (Eigen::Index m = 0; m < post.rows(); ++m) {
        const double snr = per_stream_power / post(m, m).real();
        rate += (s.complex_streams ? 1.0 : 0.5) * std::log2(1.0 + snr);
    }
    return rate;
}

}  // namespace

std::pair<double, double> estimate_slope(const std::vector<double>& total_rates,
                                         const std::vector<double>& powers,
                                         Setting normalization) {
    if (powers.size() < 4 || total_rates.size() != powers.size())
        throw std::invalid_argument("need >= 4 matched rate/power points");
    for (std::size_t i = 1; i < powers.size(); ++i)
        if (powers[i] <= powers[i - 1])
            throw scheme_error(errc::degenerate_fit, "powers must be strictly increasing");

    const std::size_t tail = (powers.size() + 1) / 2;
    const std::size_t start = powers.size() - tail;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double scale = normalization == Setting::real ? 0.5 : 1.0;
    for (std::size_t i = start; i < powers.size(); ++i) {
        const double x = scale * std::log2(powers[i]);
        sx += x;
        sy += total_rates[i];
        sxx += x * x;
        sxy += x * total_rates[i];
    }
    const double m = static_cast<double>(tail);
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;
    double ssr = 0.0;
    for (std::size_t i = start; i < powers.size(); ++i) {
        const double x = scale * std::log2(powers[i]);
        const double r = total_rates[i] - (intercept + slope * x);
        ssr += r * r;
    }
    const double stderr_ =
        m > 2 ? std::sqrt(ssr / (m - 2) / (sxx - sx * sx / m)) : 0.0;
    return {slope, stderr_};
}

RateSweep zf_rate_sweep(const LinearScheme& scheme, const std::vector<double>& powers) {
    if (powers.size() < 4) throw std::invalid_argument("power grid needs >= 4 values");
    for (std::size_t i = 1; i < powers.size(); ++i)
        if (powers[i] <= powers[i - 1])
            throw scheme_error(errc::degenerate_fit, "powers must be strictly increasing");
    const auto ledger = verify_scheme(scheme);
    if (!ledger.all_pass())
        throw scheme_error(errc::unverified_scheme,
                           std::to_string(ledger.failure_count()) + " ledger check(s) failed");

    RateSweep out;
    out.powers = powers;
    out.normalization = scheme.dof_setting;

    // Per-stream power: each transmitter spends P per channel use, split equally
    // over its streams (slots channel uses distribute slots*P).
    std::vector<int> tx_streams;
    for (std::size_t m = 0; m < scheme.beamformers.size(); ++m) {
        const int tx = scheme.message_tx[m];
        if (tx >= static_cast<int>(tx_streams.size())) tx_streams.resize(tx + 1, 0);
        tx_streams[tx] += scheme.streams[m];
    }

    const std::size_t users = scheme.channels.size();
    for (double p : powers) {
        std::vector<std::vector<double>> per_user;
        double total = 0.0;
        for (std::size_t u = 0; u < users; ++u) {
            std::vector<double> per_state;
            double user_rate = scheme.channels[u].empty() ? 0.0
                                                          : std::numeric_limits<double>::infinity();
            for (std::size_t st = 0; st < scheme.channels[u].size(); ++st) {
                const MatrixXcd a = scheme.combiners[u][st].adjoint() * scheme.channels[u][st];
                const MatrixXcd noise_cov =
                    scheme.combiners[u][st].adjoint() * scheme.combiners[u][st];
                double rate = 0.0;
                for (std::size_t m = 0; m < scheme.beamformers.size(); ++m) {
                    const double per_stream =
                        p * scheme.slots / std::max(1, tx_streams[scheme.message_tx[m]]);
                    const MatrixXcd eff = a * scheme.beamformers[m];
                    if (scheme.message_user[m] == static_cast<int>(u)) {
                        if (eff.cols() > 0) rate += stream_rate_sum(scheme, eff, noise_cov, per_stream);
                    } else if (eff.size() > 0) {
                        out.max_residual_fraction =
                            std::max(out.max_residual_fraction,
                                     per_stream * eff.squaredNorm() / (p * scheme.slots));
                    }
                }
                rate /= scheme.slots;
                per_state.push_back(rate);
                user_rate = std::min(user_rate, rate);
            }
            per_user.push_back(std::move(per_state));
            total += scheme.channels[u].empty() ? 0.0 : user_rate;
        }
        out.rates.push_back(std::move(per_user));
        out.total_rates.push_back(total);
    }

    if (scheme.total_streams() == 0) {
        out.slope = 0.0;
        out.slope_stderr = 0.0;
    } else {
        std::tie(out.slope, out.slope_stderr) =
            estimate_slope(out.total_rates, out.powers, out.normalization);
    }
    return out;
}

ConstellationProbe pam_constellation_probe(const RationalScheme& scheme, int receiver, int state,
                                           double power, std::uint64_t value_seed,
                                           std::size_t cap) {
    if (receiver < 0 || receiver >= static_cast<int>(scheme.views.size()))
        throw std::invalid_argument("receiver out of range");
    if (state < 0 || state >= static_cast<int>(scheme.views[receiver].size()))
        throw std::invalid_argument("state out of range");

    ConstellationProbe out;
    out.power = power;
    out.levels = std::max<long long>(
        1, static_cast<long long>(std::floor(std::pow(power, to_double(scheme.bound_exponent)))));

    // Re-sample every registry symbol as a random rational with numerator and
    // denominator bounded by 2^16: distinct monomials stay distinct with
    // overwhelming probability, and distances become exactly computable.
    GaussianStream vals(value_seed, rng_tag::pam_values);
    std::vector<Rational> symbol_values(scheme.registry.size());
    for (auto& v : symbol_values) {
        const long long num = 1 + static_cast<long long>(vals.next_u64() % 65536);
        const long long den = 1 + static_cast<long long>(vals.next_u64() % 65536);
        const int sign = (vals.next_u64() & 1) ? 1 : -1;
        v = Rational(sign * num, den);
    }

    // One exact coefficient per data stream arriving at this receiver/state.
    std::vector<Rational> coeffs;
    const auto& view = scheme.views[receiver][state];
    auto append_group = [&](const StreamGroup& g) {
        const Rational mult = rpow(symbol_values[g.multiplier.id], 1) * g.multiplier.sign;
        for (const auto& dir : scheme.sets[g.set_index].members)
            coeffs.push_back(mult * dir.value(symbol_values));
    };
    for (const auto& g : view.desired) append_group(g);
    for (const auto& g : view.interference) append_group(g);

    // Duplicate coefficients collapse two points exactly: distance 0.
    std::vector<Rational> sorted = coeffs;
    std::sort(sorted.begin(), sorted.end());
    bool duplicate = false;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) duplicate = true;

    const double a_factor =
        (1.0 / scheme.lambda) * std::pow(power, to_double(scheme.a_exponent));
    out.scale_factor = a_factor;

    if (duplicate) {
        out.min_distance = 0;
        out.collision = true;
        out.min_distance_scaled = 0.0;
        out.decode_error_estimate = 0.5;
        return out;
    }

    const std::size_t streams = coeffs.size();
    const unsigned long long side = 2 * static_cast<unsigned long long>(out.levels) + 1;
    double log_points = streams * std::log2(double(side));
    if (log_points > 62 || ipow(BigInt(side), static_cast<unsigned>(streams)) > cap)
        throw scheme_error(errc::enum_limit, "constellation enumeration exceeds the point cap");
    const std::size_t total = static_cast<std::size_t>(
        ipow(BigInt(side), static_cast<unsigned>(streams)).convert_to<unsigned long long>());

    // Odometer enumeration with incremental value updates.
    std::vector<long long> digits(streams, -out.levels);
    Rational value = 0;
    for (std::size_t i = 0; i < streams; ++i) value += coeffs[i] * digits[i];
    std::vector<Rational> points;
    points.reserve(total);
    points.push_back(value);
    for (std::size_t count = 1; count < total; ++count) {
        std::size_t i = 0;
        while (digits[i] == out.levels) {
            value -= coeffs[i] * (2 * out.levels);
            digits[i] = -out.levels;
            ++i;
        }
        ++digits[i];
        value += coeffs[i];
        points.push_back(value);
    }
    std::sort(points.begin(), points.end());
    Rational best = points.back() - points.front();
    bool found_zero = false;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Rational d = points[i] - points[i - 1];
        if (d == 0) {
            found_zero = true;
            break;
        }
        if (d < best) best = d;
    }
    out.point_count = total;
    out.min_distance = found_zero ? Rational(0) : best;
    out.collision = found_zero;
    out.min_distance_scaled = a_factor * to_double(out.min_distance);
    out.decode_error_estimate =
        out.collision ? 0.5 : 0.5 * std::erfc(out.min_distance_scaled / 2.0 / std::sqrt(2.0));
    return out;
}

}  // namespace ia
