// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace ia {

enum class CheckKind { zero_forcing, rank, span_dimension, eigen_reality, symbolic };

enum class CheckCmp { below, above, equals };

/// One named verification check. The pass flag is derived from (measured, threshold,
/// cmp) at construction, so it can never disagree with the recorded values.
struct LedgerCheck {
    std::string name;
    CheckKind kind = CheckKind::rank;
    double measured = 0.0;
    double threshold = 0.0;
    CheckCmp cmp = CheckCmp::below;
    bool pass = false;
};

struct VerificationLedger {
    std::vector<LedgerCheck> checks;

    void add(std::string name, CheckKind kind, double measured, double threshold, CheckCmp cmp) {
        bool pass = false;
        switch (cmp) {
            case CheckCmp::below: pass = measured < threshold; break;
            case CheckCmp::above: pass = measured > threshold; break;
            case CheckCmp::equals: pass = measured == threshold; break;
        }
        checks.push_back({std::move(name), kind, measured, threshold, cmp, pass});
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::size_t failure_count() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }
};

// Numerical thresholds shared by every scheme: a matrix counts as full rank iff
// sigma_min/sigma_max exceeds kRankTol; relative residuals must stay below kResidualTol.
inline constexpr double kRankTol = 1e-8;
inline constexpr double kResidualTol = 1e-9;
inline constexpr double kEigRealTol = 1e-9;

}  // namespace ia
