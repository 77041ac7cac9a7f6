// SPDX-License-Identifier: Apache-2.0
#include "ia/rational_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ia/rng.hpp"

namespace ia {

namespace {

long long checked_count(const BigInt& v, const char* what) {
    if (v > BigInt(std::numeric_limits<long long>::max()))
        throw scheme_error(errc::size_limit, std::string(what) + " exceeds 64-bit range");
    return static_cast<long long>(v);
}

long long pow_ll(long long base, unsigned exp, const char* what) {
    return checked_count(ipow(BigInt(base), exp), what);
}

DirectionSet multiplied_set(const MonomialDirection& mult, const DirectionSet& base) {
    DirectionSet out;
    out.vars = base.vars;
    out.exponent_bound = 0;
    out.members.reserve(base.members.size());
    for (const auto& m : base.members) out.members.push_back(mult.times(m));
    out.rebuild_index();
    return out;
}

double set_norm(const DirectionSet& set, const VariableRegistry& reg) {
    double s = 0.0;
    for (const auto& m : set.members) {
        const double v = m.value(reg);
        s += v * v;
    }
    return std::sqrt(s);
}

/// Power-scaling exponents: A = (1/lambda) P^{(m_n-1+2eps)/(2(m_n+eps))},
/// constellation bound P^{(1-eps)/(2(m_n+eps))}. Their sum is exactly 1/2.
void fill_power_scaling(RationalScheme& s) {
    const Rational m(s.m_n);
    const Rational denom = 2 * (m + s.epsilon);
    s.a_exponent = (m - 1 + 2 * s.epsilon) / denom;
    s.bound_exponent = (1 - s.epsilon) / denom;
    s.checks.add("power_exponent_identity", CheckKind::symbolic,
                 s.a_exponent + s.bound_exponent == Rational(1, 2) ? 1.0 : 0.0, 1.0,
                 CheckCmp::equals);
}

/// Runs separability at every (receiver, state) view and records m_n consistency.
void run_separability(RationalScheme& s) {
    long long violations = 0;
    long long max_m_eff = 0;
    std::string first_failure;
    for (std::size_t rx = 0; rx < s.views.size(); ++rx) {
        for (std::size_t st = 0; st < s.views[rx].size(); ++st) {
            const auto& view = s.views[rx][st];
            std::vector<DirectionSet> desired_storage;
            desired_storage.reserve(view.desired.size());
            for (const auto& g : view.desired) {
                MonomialDirection mult = MonomialDirection::variable(g.multiplier.id,
                                                                     g.multiplier.sign);
                desired_storage.push_back(multiplied_set(mult, s.sets[g.set_index]));
            }
            std::vector<const DirectionSet*> desired;
            for (const auto& d : desired_storage) desired.push_back(&d);
            std::vector<const DirectionSet*> interference;
            for (int u : view.interference_basis) interference.push_back(&s.sets[u]);
            try {
                const auto sep = check_separability(desired, interference);
                max_m_eff = std::max(max_m_eff, sep.m_effective);
            } catch (const scheme_error& e) {
                if (e.code() != errc::collision) throw;
                ++violations;
                if (first_failure.empty()) first_failure = e.what();
            }
        }
    }
    s.checks.add("separability", CheckKind::symbolic, static_cast<double>(violations), 0.0,
                 CheckCmp::equals);
    if (violations == 0)
        s.checks.add("m_n_consistency", CheckKind::symbolic,
                     max_m_eff == s.m_n ? 1.0 : 0.0, 1.0, CheckCmp::equals);
}

void add_cardinality_check(RationalScheme& s, const std::string& name, const DirectionSet& set,
                           long long expected) {
    s.checks.add("cardinality[" + name + "]", CheckKind::symbolic,
                 static_cast<double>(set.size()), static_cast<double>(expected), CheckCmp::equals);
}

}  // namespace

const char* rational_kind_name(RationalKind k) {
    switch (k) {
        case RationalKind::bc: return "bc_rational";
        case RationalKind::x: return "x_rational";
        case RationalKind::ic: return "ic_rational";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Compound BC, J1 < M <= J2.
// ---------------------------------------------------------------------------

RationalScheme build_bc_real_scheme(const ChannelRealization& ch, int n, const Rational& epsilon,
                                    std::size_t cap) {
    const auto& sc = ch.scenario;
    if (sc.network != Network::bc || sc.setting != Setting::real || sc.user_count != 2)
        throw scheme_error(errc::regime_mismatch, "requires a real 2-user BC realization");
    const int m_ant = sc.tx_count;
    const int j1 = sc.states[0];
    const int j2 = sc.states[1];
    if (j1 >= m_ant)
        throw scheme_error(errc::regime_mismatch,
                           "J1 >= M: user 1's rows leave no zero-forcing null space");
    if (j2 < m_ant)
        throw scheme_error(errc::regime_mismatch, "J2 < M is outside the Theorem 3 regime");

    RationalScheme s;
    s.kind = RationalKind::bc;
    s.scenario = sc;
    s.n = n;
    s.epsilon = epsilon;
    s.registry = ch.registry;

    std::vector<int> vars;
    for (int j = 0; j < j2; ++j)
        for (int a = 0; a < m_ant; ++a) vars.push_back(ch.symbols[1][j][a][0].id);
    const int gamma = static_cast<int>(vars.size());

    auto [v_set, u_set] = make_monomial_sets(vars, n, cap);
    const long long v_count = pow_ll(n, gamma, "n^Gamma");
    const long long u_count = pow_ll(n + 1, gamma, "(n+1)^Gamma");
    const long long user2_streams = (m_ant - 1) * v_count;
    s.m_n = 1 + u_count + user2_streams;

    // Generator directions G = [G0, G0^2, ...] with a fresh symbol.
    GaussianStream gen(sc.seed, rng_tag::generator);
    const int g0 = s.registry.add("G0", gen.next(), SymbolKind::generator);
    DirectionSet g_dirs;
    g_dirs.vars = {g0};
    for (long long k = 1; k <= user2_streams; ++k)
        g_dirs.members.push_back({{{g0, static_cast<int>(k)}}, +1});
    g_dirs.rebuild_index();

    s.sets = {std::move(v_set), std::move(u_set), std::move(g_dirs)};
    s.v_sets = {0};
    s.u_sets = {1};
    s.g_set = 2;

    add_cardinality_check(s, "V", s.sets[0], v_count);
    add_cardinality_check(s, "U", s.sets[1], u_count);

    // Zero-forcing beamformer for user 2's signal: null space of user 1's rows.
    Eigen::MatrixXd rows1(j1, m_ant);
    for (int j = 0; j < j1; ++j) rows1.row(j) = ch.rows[0][j].real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows1, Eigen::ComputeFullV);
    s.zf_beamformer = svd.matrixV().col(m_ant - 1);
    double zf_resid = 0.0;
    for (int j = 0; j < j1; ++j)
        zf_resid = std::max(zf_resid, std::abs(ch.rows[0][j].real().dot(s.zf_beamformer)) /
                                          ch.rows[0][j].norm());
    s.checks.add("user1_zero_forcing", CheckKind::zero_forcing, zf_resid, 1e-12, CheckCmp::below);

    // Effective user-2 scalars h'_{j2} = h_{j2}^{[2]} V^{[2]}, registered as fresh
    // opaque symbols (independence asserted by the construction, checked by value).
    std::vector<int> derived(j2);
    for (int j = 0; j < j2; ++j)
        derived[j] = s.registry.add("h'[" + std::to_string(j + 1) + "]",
                                    ch.rows[1][j].real().dot(s.zf_beamformer), SymbolKind::derived);

    // Alignment inclusions: every user-2 coefficient times V lands in U.
    long long inclusion_violations = 0;
    for (int var : vars)
        if (!verify_span_inclusion(MonomialDirection::variable(var), s.sets[0], s.sets[1]))
            ++inclusion_violations;
    s.checks.add("span_inclusions", CheckKind::symbolic,
                 static_cast<double>(inclusion_violations), 0.0, CheckCmp::equals);

    // Messages: user 1 split into M sub-messages, user 2 a single message.
    for (int a = 0; a < m_ant; ++a) {
        s.message_names.push_back("W1." + std::to_string(a + 1));
        s.streams_per_message.push_back(v_count);
    }
    s.message_names.push_back("W2");
    s.streams_per_message.push_back(user2_streams);

    s.views.resize(2);
    s.views[0].resize(j1);
    for (int j = 0; j < j1; ++j)
        for (int a = 0; a < m_ant; ++a)
            s.views[0][j].desired.push_back({ch.symbols[0][j][a][0], 0, a, true});
    s.views[1].resize(j2);
    for (int j = 0; j < j2; ++j) {
        auto& view = s.views[1][j];
        view.desired.push_back({SymbolRef{derived[j], +1}, s.g_set, m_ant, true});
        for (int a = 0; a < m_ant; ++a)
            view.interference.push_back({ch.symbols[1][j][a][0], 0, a, false});
        view.interference_basis = {1};
    }

    run_separability(s);
    s.finite_dof = Rational((2 * m_ant - 1) * v_count, s.m_n);
    s.dof_limit = Rational(2 * m_ant - 1, m_ant);
    s.lambda = std::sqrt(m_ant * std::pow(set_norm(s.sets[0], s.registry), 2) +
                         std::pow(set_norm(s.sets[2], s.registry), 2));
    fill_power_scaling(s);
    return s;
}

// ---------------------------------------------------------------------------
// Compound M x N X network.
// ---------------------------------------------------------------------------

RationalScheme build_x_scheme(const ChannelRealization& ch, int n, const Rational& epsilon,
                              std::size_t cap) {
    const auto& sc = ch.scenario;
    if (sc.network != Network::x || sc.setting != Setting::real)
        throw scheme_error(errc::regime_mismatch, "requires a real X realization");
    const int m_tx = sc.tx_count;
    const int n_rx = sc.user_count;

    RationalScheme s;
    s.kind = RationalKind::x;
    s.scenario = sc;
    s.n = n;
    s.epsilon = epsilon;
    s.registry = ch.registry;

    std::vector<long long> v_counts(n_rx), u_counts(n_rx);
    for (int j = 0; j < n_rx; ++j) {
        std::vector<int> vars;
        for (int r = 0; r < n_rx; ++r) {
            if (r == j) continue;
            for (int k = 0; k < sc.states[r]; ++k)
                for (int i = 0; i < m_tx; ++i) vars.push_back(ch.symbols[r][k][i][0].id);
        }
        auto [v_set, u_set] = make_monomial_sets(vars, n, cap);
        v_counts[j] = pow_ll(n, static_cast<unsigned>(vars.size()), "n^Gamma_j");
        u_counts[j] = pow_ll(n + 1, static_cast<unsigned>(vars.size()), "(n+1)^Gamma_j");
        add_cardinality_check(s, "V" + std::to_string(j + 1), v_set, v_counts[j]);
        add_cardinality_check(s, "U" + std::to_string(j + 1), u_set, u_counts[j]);
        s.sets.push_back(std::move(v_set));
        s.sets.push_back(std::move(u_set));
        s.v_sets.push_back(2 * j);
        s.u_sets.push_back(2 * j + 1);
    }

    long long max_m = 0;
    for (int j = 0; j < n_rx; ++j) {
        long long m = m_tx * v_counts[j];
        for (int l = 0; l < n_rx; ++l)
            if (l != j) m += u_counts[l];
        max_m = std::max(max_m, m);
    }
    s.m_n = 1 + max_m;

    // Alignment inclusions: every cross coefficient h^{[ri]}_{k_r} carries V^{[j]}
    // (r != j) into U^{[j]}.
    long long inclusion_violations = 0;
    for (int j = 0; j < n_rx; ++j)
        for (int r = 0; r < n_rx; ++r) {
            if (r == j) continue;
            for (int k = 0; k < sc.states[r]; ++k)
                for (int i = 0; i < m_tx; ++i)
                    if (!verify_span_inclusion(
                            MonomialDirection::variable(ch.symbols[r][k][i][0].id),
                            s.sets[s.v_sets[j]], s.sets[s.u_sets[j]]))
                        ++inclusion_violations;
        }
    s.checks.add("span_inclusions", CheckKind::symbolic,
                 static_cast<double>(inclusion_violations), 0.0, CheckCmp::equals);

    for (int j = 0; j < n_rx; ++j)
        for (int i = 0; i < m_tx; ++i) {
            s.message_names.push_back("W[" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                      "]");
            s.streams_per_message.push_back(v_counts[j]);
        }

    s.views.resize(n_rx);
    for (int j = 0; j < n_rx; ++j) {
        s.views[j].resize(sc.states[j]);
        for (int k = 0; k < sc.states[j]; ++k) {
            auto& view = s.views[j][k];
            for (int i = 0; i < m_tx; ++i)
                view.desired.push_back({ch.symbols[j][k][i][0], s.v_sets[j], j * m_tx + i, true});
            for (int l = 0; l < n_rx; ++l) {
                if (l == j) continue;
                for (int i = 0; i < m_tx; ++i)
                    view.interference.push_back(
                        {ch.symbols[j][k][i][0], s.v_sets[l], l * m_tx + i, false});
                view.interference_basis.push_back(s.u_sets[l]);
            }
        }
    }

    run_separability(s);
    long long num = 0;
    for (int j = 0; j < n_rx; ++j) num += v_counts[j];
    s.finite_dof = Rational(m_tx * num, s.m_n);
    s.dof_limit = Rational(static_cast<long long>(m_tx) * n_rx, m_tx + n_rx - 1);
    double lam2 = 0.0;
    for (int j = 0; j < n_rx; ++j) lam2 += std::pow(set_norm(s.sets[s.v_sets[j]], s.registry), 2);
    s.lambda = std::sqrt(lam2);
    fill_power_scaling(s);
    return s;
}

// ---------------------------------------------------------------------------
// Compound K-user interference channel.
// ---------------------------------------------------------------------------

RationalScheme build_ic_scheme(const ChannelRealization& ch, int n, const Rational& epsilon,
                               std::size_t cap, bool include_direct_links) {
    const auto& sc = ch.scenario;
    if (sc.network != Network::ic || sc.setting != Setting::real)
        throw scheme_error(errc::regime_mismatch, "requires a real IC realization");
    if (sc.tx_count != sc.user_count)
        throw scheme_error(errc::regime_mismatch, "IC needs one transmitter per receiver");
    const int k_users = sc.user_count;

    RationalScheme s;
    s.kind = RationalKind::ic;
    s.scenario = sc;
    s.n = n;
    s.epsilon = epsilon;
    s.registry = ch.registry;

    // Cross-link variables: distinct base symbols over all off-diagonal entries
    // (the complex->real reduction ties several entries to one symbol).
    std::vector<int> vars;
    std::unordered_set<int> seen;
    for (int j = 0; j < k_users; ++j)
        for (int k = 0; k < sc.states[j]; ++k)
            for (int i = 0; i < k_users; ++i) {
                if (i == j && !include_direct_links) continue;
                const int id = ch.symbols[j][k][i][0].id;
                if (seen.insert(id).second) vars.push_back(id);
            }
    const int gamma = static_cast<int>(vars.size());

    auto [v_set, u_set] = make_monomial_sets(vars, n, cap);
    const long long v_count = pow_ll(n, gamma, "n^Gamma");
    const long long u_count = pow_ll(n + 1, gamma, "(n+1)^Gamma");
    s.m_n = 1 + v_count + u_count;

    add_cardinality_check(s, "V", v_set, v_count);
    add_cardinality_check(s, "U", u_set, u_count);
    s.sets = {std::move(v_set), std::move(u_set)};
    s.v_sets = {0};
    s.u_sets = {1};

    // Alignment inclusions, sign-insensitive membership.
    long long inclusion_violations = 0;
    for (int j = 0; j < k_users; ++j)
        for (int k = 0; k < sc.states[j]; ++k)
            for (int i = 0; i < k_users; ++i) {
                if (i == j) continue;
                const auto ref = ch.symbols[j][k][i][0];
                if (!verify_span_inclusion(MonomialDirection::variable(ref.id, ref.sign),
                                           s.sets[0], s.sets[1]))
                    ++inclusion_violations;
            }
    s.checks.add("span_inclusions", CheckKind::symbolic,
                 static_cast<double>(inclusion_violations), 0.0, CheckCmp::equals);

    for (int i = 0; i < k_users; ++i) {
        s.message_names.push_back("W" + std::to_string(i + 1));
        s.streams_per_message.push_back(v_count);
    }

    s.views.resize(k_users);
    for (int j = 0; j < k_users; ++j) {
        s.views[j].resize(sc.states[j]);
        for (int k = 0; k < sc.states[j]; ++k) {
            auto& view = s.views[j][k];
            view.desired.push_back({ch.symbols[j][k][j][0], 0, j, true});
            for (int i = 0; i < k_users; ++i)
                if (i != j) view.interference.push_back({ch.symbols[j][k][i][0], 0, i, false});
            view.interference_basis = {1};
        }
    }

    run_separability(s);
    s.finite_dof = Rational(k_users * v_count, s.m_n);
    s.dof_limit = Rational(k_users, 2);
    s.lambda = set_norm(s.sets[0], s.registry);
    fill_power_scaling(s);
    return s;
}

// ---------------------------------------------------------------------------
// Complex IC -> 2K-user real IC with tied symbols.
// ---------------------------------------------------------------------------

ChannelRealization complex_ic_to_real_ic(const ChannelRealization& ch) {
    const auto& sc = ch.scenario;
    if (sc.network != Network::ic || sc.setting != Setting::complex_)
        throw scheme_error(errc::regime_mismatch, "requires a complex IC realization");
    if (sc.tx_count != sc.user_count)
        throw scheme_error(errc::regime_mismatch, "IC needs one transmitter per receiver");
    const int k = sc.user_count;

    ChannelRealization out;
    out.scenario = sc;
    out.scenario.setting = Setting::real;
    out.scenario.tx_count = 2 * k;
    out.scenario.user_count = 2 * k;
    out.scenario.states.resize(2 * k);
    for (int j = 0; j < k; ++j)
        out.scenario.states[2 * j] = out.scenario.states[2 * j + 1] = sc.states[j];
    out.registry = ch.registry;

    out.rows.resize(2 * k);
    out.symbols.resize(2 * k);
    for (int j = 0; j < k; ++j) {
        for (int u = 0; u < 2; ++u) {
            const int a = 2 * j + u;
            out.rows[a].resize(sc.states[j]);
            out.symbols[a].resize(sc.states[j]);
            for (int st = 0; st < sc.states[j]; ++st) {
                Eigen::RowVectorXcd row(2 * k);
                out.symbols[a][st].resize(2 * k);
                for (int i = 0; i < k; ++i) {
                    const std::complex<double> h = ch.rows[j][st](i);
                    const SymbolRef re = ch.symbols[j][st][i][0];
                    const SymbolRef im = ch.symbols[j][st][i][1];
                    // embedding block [[Re, -Im], [Im, Re]]
                    if (u == 0) {
                        row(2 * i) = h.real();
                        row(2 * i + 1) = -h.imag();
                        out.symbols[a][st][2 * i] = {re, SymbolRef{-1, +1}};
                        out.symbols[a][st][2 * i + 1] = {SymbolRef{im.id, -1}, SymbolRef{-1, +1}};
                    } else {
                        row(2 * i) = h.imag();
                        row(2 * i + 1) = h.real();
                        out.symbols[a][st][2 * i] = {im, SymbolRef{-1, +1}};
                        out.symbols[a][st][2 * i + 1] = {re, SymbolRef{-1, +1}};
                    }
                }
                out.rows[a][st] = row;
            }
        }
    }
    return out;
}

Rational finite_n_dof(const RationalScheme& scheme) { return scheme.finite_dof; }

}  // namespace ia
