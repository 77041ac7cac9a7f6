// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ia/dof.hpp"

using namespace ia;

TEST_CASE("region map: boundaries J = M belong to the >= M side") {
    CHECK(classify_bc_region(2, 1, 1) == BcRegion::r1);
    CHECK(classify_bc_region(2, 1, 3) == BcRegion::r2);
    CHECK(classify_bc_region(2, 3, 1) == BcRegion::r3);
    CHECK(classify_bc_region(2, 2, 2) == BcRegion::r4);
    CHECK(classify_bc_region(4, 3, 3) == BcRegion::r1);
    CHECK(classify_bc_region(4, 3, 4) == BcRegion::r2);
}

TEST_CASE("real BC formulas by region") {
    CHECK(dof_bc(2, 2, {1, 1}, Setting::real) == Rational(2));
    CHECK(dof_bc(2, 2, {1, 3}, Setting::real) == Rational(3, 2));
    CHECK(dof_bc(2, 2, {3, 1}, Setting::real) == Rational(3, 2));
    CHECK(dof_bc(5, 2, {2, 9}, Setting::real) == Rational(9, 5));  // 1 + (M-1)/M
    CHECK(dof_bc(2, 2, {2, 2}, Setting::real) == Rational(4, 3));
    CHECK(dof_bc(3, 3, {3, 3, 3}, Setting::real) == Rational(9, 5));
    CHECK(dof_bc(100, 2, {100, 200}, Setting::real) == Rational(200, 101));
}

TEST_CASE("complex BC is established only at the two solved points") {
    CHECK(dof_bc(2, 2, {1, 3}, Setting::complex_) == Rational(3, 2));
    CHECK(dof_bc(2, 2, {3, 1}, Setting::complex_) == Rational(3, 2));
    CHECK(dof_bc(2, 2, {3, 3}, Setting::complex_) == Rational(4, 3));
    CHECK_THROWS_AS(dof_bc(2, 2, {2, 3}, Setting::complex_), scheme_error);
    CHECK_THROWS_AS(dof_bc(3, 2, {1, 3}, Setting::complex_), scheme_error);
}

TEST_CASE("real BC with some J below M and more than 2 users is unsupported") {
    try {
        dof_bc(2, 3, {1, 3, 3}, Setting::real);
        CHECK_MESSAGE(false, "expected UNSUPPORTED");
    } catch (const scheme_error& e) {
        CHECK(e.code() == errc::unsupported);
    }
}

TEST_CASE("X and IC formulas") {
    CHECK(dof_x(2, 2) == Rational(4, 3));
    CHECK(dof_x(1, 1) == Rational(1));
    CHECK(dof_x(2, 3) == Rational(6, 4));
    CHECK(dof_ic(3) == Rational(3, 2));
    CHECK(dof_ic(1) == Rational(1, 2));
    CHECK(dof_ic(7) == Rational(7, 2));
}

TEST_CASE("large-M BC approaches N: MN/(M+N-1) at M=100, N=2") {
    CHECK(dof_bc(100, 2, {100, 100}, Setting::real) == Rational(200, 101));
    CHECK(to_double(dof_x(100, 2)) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("conjecture values and regimes") {
    const auto c13 = conjecture_values(2, 1, 3);
    REQUIRE(c13.conj1.has_value());
    CHECK(*c13.conj1 == Rational(4, 3));
    CHECK_FALSE(c13.conj2.has_value());
    CHECK(c13.disproved);

    const auto c33 = conjecture_values(2, 3, 3);
    REQUIRE(c33.conj2.has_value());
    CHECK(*c33.conj2 == Rational(6, 5));
    CHECK(c33.disproved);

    // at J = M the conjectured value matches the true DoF and is optimal
    const auto c12 = conjecture_values(2, 1, 2);
    REQUIRE(c12.conj1.has_value());
    CHECK(*c12.conj1 == Rational(3, 2));
    CHECK_FALSE(c12.disproved);

    const auto none = conjecture_values(2, 2, 3);
    CHECK_FALSE(none.conj1.has_value());
    CHECK_FALSE(none.conj2.has_value());
}

TEST_CASE("disproof inequalities hold as exact rational comparisons") {
    CHECK(*conjecture_values(2, 1, 3).conj1 < dof_bc(2, 2, {1, 3}, Setting::complex_));
    CHECK(*conjecture_values(2, 3, 3).conj2 < dof_bc(2, 2, {3, 3}, Setting::complex_));
    CHECK(Rational(4, 3) < Rational(3, 2));
    CHECK(Rational(6, 5) < Rational(4, 3));
}

TEST_CASE("complex X route via the real reduction: 2M/(M+3)") {
    CHECK(dof_complex_x_via_real(4) == Rational(8, 7));
    CHECK(dof_complex_x_via_real(4) > Rational(1));
    CHECK(dof_complex_x_via_real(3) == Rational(1));
    CHECK(dof_complex_x_via_real(1) == Rational(1, 2));
    for (int m = 4; m < 10; ++m) CHECK(dof_complex_x_via_real(m) > Rational(1));
    for (int m = 1; m <= 3; ++m) CHECK(dof_complex_x_via_real(m) <= Rational(1));
}

TEST_CASE("BC with all J >= M achieves exactly the X-channel value") {
    for (int m = 2; m <= 5; ++m)
        for (int users = 2; users <= 4; ++users) {
            std::vector<int> j(users, m + 1);
            CHECK(dof_bc(m, users, j, Setting::real) == dof_x(m, users));
        }
}

TEST_CASE("the BC denominator discrepancy note names both denominators") {
    const std::string note = kBcDenominatorDiscrepancyNote;
    CHECK(note.find("M-N+1") != std::string::npos);
    CHECK(note.find("M+N-1") != std::string::npos);
}
