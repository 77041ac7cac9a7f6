// SPDX-License-Identifier: Apache-2.0
#include "ia/monomial.hpp"

#include <algorithm>
#include <cmath>

namespace ia {

MonomialDirection MonomialDirection::times(const MonomialDirection& other) const {
    MonomialDirection out;
    out.sign = sign * other.sign;
    out.exps.reserve(exps.size() + other.exps.size());
    std::size_t a = 0, b = 0;
    while (a < exps.size() && b < other.exps.size()) {
        if (exps[a].first < other.exps[b].first) {
            out.exps.push_back(exps[a++]);
        } else if (exps[a].first > other.exps[b].first) {
            out.exps.push_back(other.exps[b++]);
        } else {
            out.exps.emplace_back(exps[a].first, exps[a].second + other.exps[b].second);
            ++a, ++b;
        }
    }
    for (; a < exps.size(); ++a) out.exps.push_back(exps[a]);
    for (; b < other.exps.size(); ++b) out.exps.push_back(other.exps[b]);
    return out;
}

std::string MonomialDirection::key() const {
    std::string k;
    k.reserve(exps.size() * 8);
    for (const auto& [id, e] : exps) {
        k.append(reinterpret_cast<const char*>(&id), sizeof(id));
        k.append(reinterpret_cast<const char*>(&e), sizeof(e));
    }
    return k;
}

std::string MonomialDirection::to_text(const VariableRegistry& reg) const {
    std::string out = sign >= 0 ? "+" : "-";
    if (exps.empty()) return out + "1";
    bool first = true;
    for (const auto& [id, e] : exps) {
        if (!first) out += " ";
        first = false;
        out += reg.names.at(id) + "^" + std::to_string(e);
    }
    return out;
}

double MonomialDirection::value(const VariableRegistry& reg) const {
    double v = sign;
    for (const auto& [id, e] : exps) v *= std::pow(reg.values.at(id), e);
    return v;
}

Rational MonomialDirection::value(const std::vector<Rational>& symbol_values) const {
    Rational v = sign;
    for (const auto& [id, e] : exps) v *= rpow(symbol_values.at(id), static_cast<unsigned>(e));
    return v;
}

void DirectionSet::rebuild_index() {
    keys_.clear();
    keys_.reserve(members.size() * 2);
    for (const auto& m : members) keys_.insert(m.key());
}

bool DirectionSet::contains(const MonomialDirection& d) const { return keys_.count(d.key()) > 0; }

std::pair<DirectionSet, DirectionSet> make_monomial_sets(const std::vector<int>& vars, int n,
                                                         std::size_t cap) {
    if (vars.empty()) throw std::invalid_argument("variable list must be nonempty");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const auto count = ipow(BigInt(n + 1), static_cast<unsigned>(vars.size()));
    if (count > cap)
        throw scheme_error(errc::size_limit, "(n+1)^N = " + count.str() + " exceeds cap of " +
                                                 std::to_string(cap) + " directions");

    auto enumerate = [&vars](int bound) {
        DirectionSet set;
        set.vars = vars;
        set.exponent_bound = bound;
        std::vector<int> exps(vars.size(), 1);
        while (true) {
            MonomialDirection d;
            d.exps.reserve(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) d.exps.emplace_back(vars[i], exps[i]);
            std::sort(d.exps.begin(), d.exps.end());
            set.members.push_back(std::move(d));
            std::size_t i = 0;
            for (; i < exps.size(); ++i) {
                if (exps[i] < bound) {
                    ++exps[i];
                    break;
                }
                exps[i] = 1;
            }
            if (i == exps.size()) break;
        }
        set.rebuild_index();
        return set;
    };

    return {enumerate(n), enumerate(n + 1)};
}

bool verify_span_inclusion(const MonomialDirection& multiplier, const DirectionSet& v_set,
                           const DirectionSet& u_set) {
    for (const auto& v : v_set.members)
        if (!u_set.contains(multiplier.times(v))) return false;
    return true;
}

Separability check_separability(const std::vector<const DirectionSet*>& desired,
                                const std::vector<const DirectionSet*>& interference) {
    Separability out;
    std::unordered_set<std::string> seen;
    auto ingest = [&](const DirectionSet* set, const char* label, std::size_t set_idx) {
        for (std::size_t i = 0; i < set->members.size(); ++i) {
            const auto& d = set->members[i];
            if (d.is_one()) out.contains_one = true;
            if (!seen.insert(d.key()).second)
                throw scheme_error(errc::collision,
                                   std::string("duplicate direction in ") + label + " set " +
                                       std::to_string(set_idx) + " at member " + std::to_string(i));
            ++out.m;
        }
    };
    for (std::size_t s = 0; s < desired.size(); ++s) ingest(desired[s], "desired", s);
    for (std::size_t s = 0; s < interference.size(); ++s) ingest(interference[s], "interference", s);
    out.m_effective = out.contains_one ? out.m : out.m + 1;
    return out;
}

}  // namespace ia
