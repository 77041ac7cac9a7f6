// SPDX-License-Identifier: Apache-2.0
#include "ia/channel.hpp"

#include <cmath>

#include "ia/rng.hpp"

namespace ia {

const char* errc_name(errc code) {
    switch (code) {
        case errc::singular_stack: return "SINGULAR_STACK";
        case errc::no_real_eigenvectors: return "NO_REAL_EIGENVECTORS";
        case errc::genericity_violation: return "GENERICITY_VIOLATION";
        case errc::regime_mismatch: return "REGIME_MISMATCH";
        case errc::size_limit: return "SIZE_LIMIT";
        case errc::collision: return "COLLISION";
        case errc::unsupported: return "UNSUPPORTED";
        case errc::dimension_mismatch: return "DIMENSION_MISMATCH";
        case errc::enum_limit: return "ENUM_LIMIT";
        case errc::unverified_scheme: return "UNVERIFIED_SCHEME";
        case errc::degenerate_fit: return "DEGENERATE_FIT";
    }
    return "UNKNOWN";
}

const char* network_name(Network n) {
    switch (n) {
        case Network::bc: return "bc";
        case Network::x: return "x";
        case Network::ic: return "ic";
    }
    return "?";
}

const char* setting_name(Setting s) { return s == Setting::real ? "real" : "complex"; }

void CompoundScenario::validate() const {
    if (tx_count < 1) throw std::invalid_argument("tx_count must be >= 1");
    if (user_count < 1) throw std::invalid_argument("user_count must be >= 1");
    if (static_cast<int>(states.size()) != user_count)
        throw std::invalid_argument("states list length must equal user_count");
    for (int j : states)
        if (j < 1) throw std::invalid_argument("every state count must be >= 1");
}

int VariableRegistry::add(const std::string& name, double value, SymbolKind kind) {
    if (index.count(name)) throw std::invalid_argument("duplicate registry symbol: " + name);
    for (double v : values)
        if (v == value)
            throw scheme_error(errc::genericity_violation,
                               "registry value collision at symbol " + name);
    const int id = static_cast<int>(names.size());
    names.push_back(name);
    values.push_back(value);
    kinds.push_back(kind);
    index.emplace(name, id);
    return id;
}

ChannelRealization sample_channel(const CompoundScenario& scenario) {
    scenario.validate();
    ChannelRealization ch;
    ch.scenario = scenario;
    ch.rows.resize(scenario.user_count);
    ch.symbols.resize(scenario.user_count);

    const bool cx = scenario.setting == Setting::complex_;
    const double scale = cx ? 1.0 / std::sqrt(2.0) : 1.0;

    for (int k = 0; k < scenario.user_count; ++k) {
        ch.rows[k].resize(scenario.states[k]);
        ch.symbols[k].resize(scenario.states[k]);
        for (int j = 0; j < scenario.states[k]; ++j) {
            Eigen::RowVectorXcd row(scenario.tx_count);
            ch.symbols[k][j].resize(scenario.tx_count);
            for (int m = 0; m < scenario.tx_count; ++m) {
                const double re = scale * counter_normal(scenario.seed, rng_tag::channel,
                                                         static_cast<std::uint64_t>(k),
                                                         static_cast<std::uint64_t>(j), 2 * m);
                const std::string base = "h[" + std::to_string(k + 1) + "][" +
                                         std::to_string(j + 1) + "," + std::to_string(m + 1) + "]";
                if (cx) {
                    const double im = scale * counter_normal(scenario.seed, rng_tag::channel,
                                                             static_cast<std::uint64_t>(k),
                                                             static_cast<std::uint64_t>(j),
                                                             2 * m + 1);
                    row(m) = std::complex<double>(re, im);
                    ch.symbols[k][j][m][0] = {ch.registry.add(base + "re", re, SymbolKind::channel), +1};
                    ch.symbols[k][j][m][1] = {ch.registry.add(base + "im", im, SymbolKind::channel), +1};
                } else {
                    row(m) = re;
                    ch.symbols[k][j][m][0] = {ch.registry.add(base, re, SymbolKind::channel), +1};
                    ch.symbols[k][j][m][1] = {-1, +1};
                }
            }
            ch.rows[k][j] = row;
        }
    }
    return ch;
}

Eigen::MatrixXd embed_complex_to_real(const Eigen::RowVectorXcd& row) {
    const int m = static_cast<int>(row.size());
    Eigen::MatrixXd out(2, 2 * m);
    for (int i = 0; i < m; ++i) {
        const double re = row(i).real();
        const double im = row(i).imag();
        out(0, 2 * i) = re;
        out(0, 2 * i + 1) = -im;
        out(1, 2 * i) = im;
        out(1, 2 * i + 1) = re;
    }
    return out;
}

Eigen::MatrixXd extend_channel(const Eigen::MatrixXd& row_embedding, int slots) {
    if (slots < 1) throw std::invalid_argument("slots must be >= 1");
    if (slots == 1) return row_embedding;
    const Eigen::Index r = row_embedding.rows();
    const Eigen::Index c = row_embedding.cols();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(r * slots, c * slots);
    for (int t = 0; t < slots; ++t) out.block(t * r, t * c, r, c) = row_embedding;
    return out;
}

Eigen::MatrixXcd extend_complex(const Eigen::RowVectorXcd& row, int slots) {
    if (slots < 1) throw std::invalid_argument("slots must be >= 1");
    const Eigen::Index c = row.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(slots, c * slots);
    for (int t = 0; t < slots; ++t) out.block(t, t * c, 1, c) = row;
    return out;
}

}  // namespace ia
