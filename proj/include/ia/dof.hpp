// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ia/channel.hpp"
#include "ia/ledger.hpp"
#include "ia/rational.hpp"

namespace ia {

enum class BcRegion { r1, r2, r3, r4 };

const char* bc_region_name(BcRegion r);

/// Partition of the (J1, J2) plane. Boundaries J = M belong to the >= M side.
BcRegion classify_bc_region(int m, int j1, int j2);

/// Closed-form total DoF for the compound BC. Real setting: 2 users via the
/// region map (r1 -> 2, r2/r3 -> 1+(M-1)/M) and N users with all J_i >= M via
/// MN/(M+N-1); complex setting only at the two solved points (M=2, J=[1,3]) -> 3/2
/// and (M=2, J=[3,3]) -> 4/3. Throws UNSUPPORTED elsewhere.
Rational dof_bc(int m, int users, const std::vector<int>& j, Setting setting);

/// MN/(M+N-1), independent of the state counts.
Rational dof_x(int m, int n);

/// K/2, independent of the state counts.
Rational dof_ic(int k);

struct ConjectureValues {
    std::optional<Rational> conj1;  // 1 + (M-1)/J   (J1 = 1, J2 = J >= M)
    std::optional<Rational> conj2;  // 2J/(2J-M+1)   (J1 = J2 = J >= M)
    bool disproved = false;         // true when J > M (Theorems 1-2 beat both)
};

ConjectureValues conjecture_values(int m, int j1, int j2);

/// Complex compound X route: 2M/(M+3) complex DoF for the M x 2 complex
/// compound X network via the real reduction; exceeds 1 iff M > 3.
Rational dof_complex_x_via_real(int m);

/// Note attached to every report that evaluates the all-J>=M BC formula: the
/// stated denominator (M-N+1) conflicts with the derivation's (M+N-1); the
/// derivation's value is implemented.
extern const char* kBcDenominatorDiscrepancyNote;

/// Aggregated outcome of a construct/sweep run.
struct DoFReport {
    std::optional<Rational> dof_theoretical;
    std::optional<Rational> dof_conjecture1;
    std::optional<Rational> dof_conjecture2;
    bool conjectures_disproved = false;
    std::optional<Rational> dof_finite_n;
    std::optional<double> empirical_slope;
    std::optional<double> empirical_slope_stderr;
    VerificationLedger checks;
    std::vector<std::string> notes;
};

}  // namespace ia
