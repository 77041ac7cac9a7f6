// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ia/channel.hpp"
#include "ia/rational.hpp"

namespace ia {

/// A signed monomial in registry symbols: sign * prod_i sym_i^exp_i. The empty
/// exponent map with sign +1 is the direction "1". Span membership over the
/// rationals ignores the sign (spans are closed under negation); the sign is kept
/// for constellation simulation.
struct MonomialDirection {
    std::vector<std::pair<int, int>> exps;  // (symbol id, exponent > 0), sorted by id
    int sign = +1;

    static MonomialDirection one() { return {}; }
    static MonomialDirection variable(int id, int sign = +1) { return {{{id, 1}}, sign}; }

    bool is_one() const { return exps.empty(); }

    /// Exponent-wise sum, sign product.
    MonomialDirection times(const MonomialDirection& other) const;

    /// Sign-insensitive canonical key used for exact distinctness/membership.
    std::string key() const;

    /// Canonical text form: sign, then symbol^exp factors in registry order.
    std::string to_text(const VariableRegistry& reg) const;

    double value(const VariableRegistry& reg) const;
    Rational value(const std::vector<Rational>& symbol_values) const;
};

/// An ordered family of monomial directions over a fixed variable subset.
/// Aligned set pairs carry their exponent bound (n for V, n+1 for U).
struct DirectionSet {
    std::vector<int> vars;          // registry symbol ids, ordered
    int exponent_bound = 0;         // 0 for ad-hoc sets (e.g. generator powers)
    std::vector<MonomialDirection> members;

    void rebuild_index();
    bool contains(const MonomialDirection& d) const;
    std::size_t size() const { return members.size(); }

  private:
    std::unordered_set<std::string> keys_;
};

inline constexpr std::size_t kDefaultDirectionCap = 1000000;

/// Aligned monomial sets: V = all monomials with exponents in {1..n}^N,
/// U = likewise with {1..n+1}^N. Throws SIZE_LIMIT if |U| would exceed cap.
std::pair<DirectionSet, DirectionSet> make_monomial_sets(const std::vector<int>& vars, int n,
                                                         std::size_t cap = kDefaultDirectionCap);

/// True iff every product multiplier*v, v in V, is a member of U (sign ignored).
bool verify_span_inclusion(const MonomialDirection& multiplier, const DirectionSet& v_set,
                           const DirectionSet& u_set);

struct Separability {
    long long m = 0;            // total direction count at this receiver
    long long m_effective = 0;  // per-stream DoF denominator: m if some direction is 1, else m+1
    bool contains_one = false;
};

/// Conditions 1-3 of the rational-alignment separability test, exact. Throws
/// COLLISION naming the offending pair if any two directions coincide (sign
/// ignored) within a set or across the union.
Separability check_separability(const std::vector<const DirectionSet*>& desired,
                                const std::vector<const DirectionSet*>& interference);

}  // namespace ia
