// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ia/monomial.hpp"
#include "oracle.hpp"

using namespace ia;

TEST_CASE("smallest instance: N=1, n=1 gives V={T}, U={T, T^2}") {
    auto [v, u] = make_monomial_sets({0}, 1);
    REQUIRE(v.size() == 1);
    REQUIRE(u.size() == 2);
    CHECK(v.members[0].exps == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(u.members[0].exps == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(u.members[1].exps == std::vector<std::pair<int, int>>{{0, 2}});
}

TEST_CASE("N=2, n=2 cardinalities: |V|=4, |U|=9") {
    auto [v, u] = make_monomial_sets({3, 7}, 2);
    CHECK(v.size() == 4);
    CHECK(u.size() == 9);
}

TEST_CASE("aligned-set inclusion, exhaustive for N=3, n=2 (8 -> 27)") {
    auto [v, u] = make_monomial_sets({0, 1, 2}, 2);
    REQUIRE(v.size() == 8);
    REQUIRE(u.size() == 27);
    for (int var : {0, 1, 2}) {
        const auto mult = MonomialDirection::variable(var);
        CHECK(verify_span_inclusion(mult, v, u));
        CHECK(oracle::brute_force_inclusion(mult, v, u));
    }
}

TEST_CASE("multiplier 1 against V subset of U") {
    auto [v, u] = make_monomial_sets({0, 1}, 2);
    CHECK(verify_span_inclusion(MonomialDirection::one(), v, u));
}

TEST_CASE("multiplier T^(n+1) escapes the exponent bound") {
    auto [v, u] = make_monomial_sets({0, 1}, 2);
    MonomialDirection mult{{{0, 3}}, +1};  // T_1^{n+1} with n=2
    CHECK_FALSE(verify_span_inclusion(mult, v, u));
    CHECK_FALSE(oracle::brute_force_inclusion(mult, v, u));
}

TEST_CASE("membership is sign-insensitive") {
    auto [v, u] = make_monomial_sets({0, 1}, 1);
    MonomialDirection negated = u.members[0];
    negated.sign = -1;
    CHECK(u.contains(negated));
    CHECK(verify_span_inclusion(MonomialDirection::variable(0, -1), v, u));
}

TEST_CASE("SIZE_LIMIT on an intractable instance") {
    std::vector<int> vars(30);
    for (int i = 0; i < 30; ++i) vars[i] = i;
    CHECK_THROWS_AS(make_monomial_sets(vars, 3), scheme_error);
    try {
        make_monomial_sets(vars, 3);
    } catch (const scheme_error& e) {
        CHECK(e.code() == errc::size_limit);
    }
}

TEST_CASE("separability: IC shape at K=2, J=[1,1], n=1") {
    // Desired: direct coefficient times V (one direction); interference: U (four).
    auto [v, u] = make_monomial_sets({0, 1}, 1);
    const auto desired = [&] {
        DirectionSet d;
        d.vars = v.vars;
        for (const auto& m : v.members) d.members.push_back(MonomialDirection::variable(9).times(m));
        d.rebuild_index();
        return d;
    }();
    const auto sep = check_separability({&desired}, {&u});
    CHECK(sep.m == 5);
    CHECK_FALSE(sep.contains_one);
    CHECK(sep.m_effective == 6);  // the schemes' m_n already counts the "+1"
}

TEST_CASE("separability: a direction equal to 1 switches the denominator rule") {
    DirectionSet with_one;
    with_one.members.push_back(MonomialDirection::one());
    with_one.members.push_back(MonomialDirection::variable(0));
    with_one.rebuild_index();
    const auto sep = check_separability({&with_one}, {});
    CHECK(sep.contains_one);
    CHECK(sep.m == 2);
    CHECK(sep.m_effective == 2);
}

TEST_CASE("separability: identical directions collide") {
    DirectionSet d;
    d.members.push_back(MonomialDirection::variable(4));
    d.members.push_back(MonomialDirection::variable(4));
    d.rebuild_index();
    CHECK_THROWS_AS(check_separability({&d}, {}), scheme_error);
    try {
        check_separability({&d}, {});
    } catch (const scheme_error& e) {
        CHECK(e.code() == errc::collision);
    }
}

TEST_CASE("separability: sign difference alone still collides (span over rationals)") {
    DirectionSet d;
    d.members.push_back(MonomialDirection::variable(4, +1));
    d.members.push_back(MonomialDirection::variable(4, -1));
    d.rebuild_index();
    CHECK_THROWS_AS(check_separability({&d}, {}), scheme_error);
}

TEST_CASE("randomized sets over disjoint variables never collide") {
    // oracle = exhaustive exponent-map comparison. Note V is a subset of U for
    // V is a subset of U over the same variables, so only disjoint-variable sets mix.
    for (int trial = 0; trial < 20; ++trial) {
        auto [v1, u1] = make_monomial_sets({trial * 4, trial * 4 + 1}, 1 + trial % 3);
        auto [v2, u2] = make_monomial_sets({trial * 4 + 2, trial * 4 + 3}, 1 + trial % 3);
        CHECK_NOTHROW(check_separability({&v1}, {&u2}));
        CHECK_NOTHROW(check_separability({&v2}, {&u1}));
        CHECK_NOTHROW(check_separability({&v1, &v2}, {}));
        CHECK(oracle::all_distinct({&v1, &u2}));
        CHECK(oracle::all_distinct({&v2, &u1}));
        // same-variable V and U do overlap: that is exactly what a collision means
        CHECK_THROWS_AS(check_separability({&v1}, {&u1}), scheme_error);
    }
}

TEST_CASE("direction product: exponentwise sum, sign product") {
    MonomialDirection a{{{0, 1}, {2, 3}}, +1};
    MonomialDirection b{{{1, 2}, {2, 1}}, -1};
    const auto p = a.times(b);
    CHECK(p.exps == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 4}});
    CHECK(p.sign == -1);
    CHECK(a.times(MonomialDirection::one()).exps == a.exps);
}

TEST_CASE("canonical text form: sign then symbol^exp in registry order") {
    VariableRegistry reg;
    reg.add("a", 0.5, SymbolKind::channel);
    reg.add("b", 1.5, SymbolKind::channel);
    reg.add("G0", 2.5, SymbolKind::generator);
    MonomialDirection d{{{0, 1}, {1, 2}}, +1};
    CHECK(d.to_text(reg) == "+a^1 b^2");
    MonomialDirection g{{{2, 3}}, -1};
    CHECK(g.to_text(reg) == "-G0^3");
    CHECK(MonomialDirection::one().to_text(reg) == "+1");
}

TEST_CASE("direction values: double and exact rational evaluation") {
    VariableRegistry reg;
    reg.add("a", 2.0, SymbolKind::channel);
    reg.add("b", 3.0, SymbolKind::channel);
    MonomialDirection d{{{0, 2}, {1, 1}}, -1};
    CHECK(d.value(reg) == -12.0);
    std::vector<Rational> vals{Rational(1, 2), Rational(2, 3)};
    CHECK(d.value(vals) == Rational(-1, 6));
}
