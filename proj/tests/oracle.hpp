// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical/symbolic oracles for the tests. These deliberately use
// different routes than the library (FullPivLU / BDCSVD ranks, Householder-QR
// projections, brute-force product enumeration) so they can catch one-sided
// mistakes in the verification code.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "ia/monomial.hpp"

namespace oracle {

template <typename Mat>
int lu_rank(const Mat& m) {
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(1e-8);
    return static_cast<int>(lu.rank());
}

template <typename Mat>
double svd_ratio(const Mat& m) {
    Eigen::BDCSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    return s(0) == 0.0 ? 0.0 : s(s.size() - 1) / s(0);
}

/// Relative projection residual of x outside col(basis), via Householder QR.
template <typename Mat, typename Vec>
double qr_residual(const Mat& basis, const Vec& x) {
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    return (x - q * (q.adjoint() * x)).norm() / x.norm();
}

/// Brute-force span-inclusion oracle: multiply out every product and search U
/// linearly by exponent-map equality (sign ignored).
inline bool brute_force_inclusion(const ia::MonomialDirection& mult, const ia::DirectionSet& v,
                                  const ia::DirectionSet& u) {
    for (const auto& member : v.members) {
        ia::MonomialDirection p = mult.times(member);
        bool found = false;
        for (const auto& cand : u.members)
            if (cand.exps == p.exps) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

/// Exhaustively checks that all directions across the given sets are pairwise
/// distinct as exponent maps.
inline bool all_distinct(const std::vector<const ia::DirectionSet*>& sets) {
    std::vector<std::vector<std::pair<int, int>>> seen;
    for (const auto* s : sets)
        for (const auto& m : s->members) {
            if (std::find(seen.begin(), seen.end(), m.exps) != seen.end()) return false;
            seen.push_back(m.exps);
        }
    return true;
}

}  // namespace oracle
