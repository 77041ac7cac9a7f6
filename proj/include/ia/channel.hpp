// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ia/errors.hpp"

namespace ia {

enum class Network { bc, x, ic };
enum class Setting { real, complex_ };

const char* network_name(Network n);
const char* setting_name(Setting s);

/// Finite-state compound scenario: who talks to whom, and how many states each
/// receiver's channel can be in.
struct CompoundScenario {
    Network network = Network::bc;
    Setting setting = Setting::real;
    int tx_count = 1;             // antennas at the transmitter (BC) or transmitter count (X/IC)
    int user_count = 1;           // receivers
    std::vector<int> states;      // states per receiver, length user_count
    std::uint64_t seed = 0;

    void validate() const;
};

enum class SymbolKind { channel, generator, derived };

/// Names every independently drawn real scalar. The symbolic engine reasons over
/// these ids; complex draws register their real and imaginary parts separately.
struct VariableRegistry {
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<SymbolKind> kinds;
    std::unordered_map<std::string, int> index;

    int add(const std::string& name, double value, SymbolKind kind);
    int size() const { return static_cast<int>(names.size()); }
};

/// Reference from a channel-matrix entry to its registry symbol. The sign matters
/// for the complex->real reduction, where -Im{h} entries share the Im{h} symbol.
struct SymbolRef {
    int id = -1;
    int sign = +1;
};

/// Sampled channel coefficients for every (user, state), plus the registry.
/// rows[k][j] is the 1 x tx_count coefficient row of user k under state j
/// (imaginary parts all zero in the real setting).
struct ChannelRealization {
    CompoundScenario scenario;
    std::vector<std::vector<Eigen::RowVectorXcd>> rows;
    VariableRegistry registry;
    // symbol ids per entry: [user][state][tx] -> {re, im}; im.id == -1 in the real setting
    std::vector<std::vector<std::vector<std::array<SymbolRef, 2>>>> symbols;
};

/// Deterministic function of the scenario (including its seed).
ChannelRealization sample_channel(const CompoundScenario& scenario);

/// Real embedding of a complex row: per antenna m the 2x2 block
/// [[Re h_m, -Im h_m], [Im h_m, Re h_m]].
Eigen::MatrixXd embed_complex_to_real(const Eigen::RowVectorXcd& row);

/// T-slot extension of an embedded row: block-diagonal with T copies, slot-major
/// stacking (slot s occupies rows [2s, 2s+2) and columns [2Ms, 2Ms+2M)).
Eigen::MatrixXd extend_channel(const Eigen::MatrixXd& row_embedding, int slots);

/// Complex-arithmetic T-slot extension (block diagonal with T copies of the row).
Eigen::MatrixXcd extend_complex(const Eigen::RowVectorXcd& row, int slots);

}  // namespace ia
