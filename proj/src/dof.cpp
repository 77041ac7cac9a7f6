// SPDX-License-Identifier: Apache-2.0
#include "ia/dof.hpp"

#include <algorithm>

namespace ia {

const char* kBcDenominatorDiscrepancyNote =
    "the all-J>=M broadcast DoF statement prints MN/(M-N+1); its derivation concludes "
    "MN/(M+N-1), which is the value used here";

const char* bc_region_name(BcRegion r) {
    switch (r) {
        case BcRegion::r1: return "R1";
        case BcRegion::r2: return "R2";
        case BcRegion::r3: return "R3";
        case BcRegion::r4: return "R4";
    }
    return "?";
}

BcRegion classify_bc_region(int m, int j1, int j2) {
    if (m < 2) throw std::invalid_argument("region map needs M >= 2");
    if (j1 < 1 || j2 < 1) throw std::invalid_argument("state counts must be >= 1");
    const bool low1 = j1 < m;
    const bool low2 = j2 < m;
    if (low1 && low2) return BcRegion::r1;
    if (low1) return BcRegion::r2;
    if (low2) return BcRegion::r3;
    return BcRegion::r4;
}

Rational dof_bc(int m, int users, const std::vector<int>& j, Setting setting) {
    if (static_cast<int>(j.size()) != users)
        throw std::invalid_argument("state list length must equal the user count");
    if (setting == Setting::complex_) {
        if (m == 2 && users == 2) {
            std::vector<int> sorted = j;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == std::vector<int>{1, 3}) return Rational(3, 2);
            if (sorted == std::vector<int>{3, 3}) return Rational(4, 3);
        }
        throw scheme_error(errc::unsupported,
                           "complex BC DoF is established only at (M=2, J=[1,3]) and (M=2, J=[3,3])");
    }
    const bool all_high = std::all_of(j.begin(), j.end(), [&](int v) { return v >= m; });
    if (all_high && users >= 2) return Rational(static_cast<long long>(m) * users, m + users - 1);
    if (users == 2) {
        switch (classify_bc_region(m, j[0], j[1])) {
            case BcRegion::r1: return Rational(2);
            case BcRegion::r2:
            case BcRegion::r3: return Rational(2 * m - 1, m);
            case BcRegion::r4: break;  // handled above
        }
    }
    throw scheme_error(errc::unsupported,
                       "real BC DoF with some J_i < M is established only for 2 users");
}

Rational dof_x(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("M, N must be >= 1");
    return Rational(static_cast<long long>(m) * n, m + n - 1);
}

Rational dof_ic(int k) {
    if (k < 1) throw std::invalid_argument("K must be >= 1");
    return Rational(k, 2);
}

ConjectureValues conjecture_values(int m, int j1, int j2) {
    ConjectureValues out;
    if (j1 == 1 && j2 >= m) out.conj1 = Rational(1) + Rational(m - 1, j2);
    if (j1 == j2 && j1 >= m) out.conj2 = Rational(2LL * j1, 2LL * j1 - m + 1);
    out.disproved = (out.conj1 && j2 > m) || (out.conj2 && j1 > m);
    return out;
}

Rational dof_complex_x_via_real(int m) {
    if (m < 1) throw std::invalid_argument("M must be >= 1");
    return Rational(2LL * m, m + 3);
}

}  // namespace ia
