// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "ia/channel.hpp"
#include "ia/ledger.hpp"
#include "ia/monomial.hpp"
#include "ia/rational.hpp"

namespace ia {

enum class RationalKind { bc, x, ic };

const char* rational_kind_name(RationalKind k);

/// A message group arriving at some receiver: the channel-entry (or derived)
/// symbol scaling it, and the direction set it is multiplexed on.
struct StreamGroup {
    SymbolRef multiplier;
    int set_index = -1;  // index into RationalScheme::sets
    int message = -1;
    bool desired = false;
};

struct ReceiverStateView {
    std::vector<StreamGroup> desired;
    std::vector<StreamGroup> interference;   // actual interfering stream groups (PAM probe)
    std::vector<int> interference_basis;     // U set indices (separability)
};

/// Exact rational-dimension alignment scheme (Appendices D/E/F machinery).
struct RationalScheme {
    RationalKind kind = RationalKind::ic;
    CompoundScenario scenario;
    int n = 1;
    Rational epsilon = Rational(1, 10);
    long long m_n = 0;

    std::vector<DirectionSet> sets;   // V's, U's, and the generator set for the BC
    std::vector<int> v_sets;          // per alignment group (BC/IC: one; X: per receiver)
    std::vector<int> u_sets;
    int g_set = -1;                   // BC user-2 generator directions

    std::vector<std::string> message_names;
    std::vector<long long> streams_per_message;

    // [receiver][state] -> which stream groups arrive and along what
    std::vector<std::vector<ReceiverStateView>> views;

    VariableRegistry registry;        // realization registry extended with G0 / derived symbols
    Eigen::VectorXd zf_beamformer;    // BC only: V^[2], orthogonal to user 1's rows

    Rational finite_dof = 0;          // d(n), exact
    Rational dof_limit = 0;           // n -> infinity value
    Rational a_exponent = 0;          // P-exponent of the scaling factor A
    Rational bound_exponent = 0;      // P-exponent of the constellation bound
    double lambda = 0.0;              // norm constant of the power scaling

    VerificationLedger checks;        // exact symbolic checks + the BC zero-forcing residual

    long long total_streams() const {
        long long t = 0;
        for (long long v : streams_per_message) t += v;
        return t;
    }
};

/// Two-user real BC scheme for J1 < M <= J2. Gamma = J2*M monomial
/// variables from user 2's coefficients; user 1 split across antennas on V, user 2
/// zero-forced through the null space of user 1's rows on generator powers.
RationalScheme build_bc_real_scheme(const ChannelRealization& ch, int n,
                                    const Rational& epsilon = Rational(1, 10),
                                    std::size_t cap = kDefaultDirectionCap);

/// Real M x N X-network scheme: per-receiver V/U pairs
/// over all cross-receiver coefficients.
RationalScheme build_x_scheme(const ChannelRealization& ch, int n,
                              const Rational& epsilon = Rational(1, 10),
                              std::size_t cap = kDefaultDirectionCap);

/// Real K-user interference-channel scheme: one shared
/// V/U pair over all cross-link coefficients. include_direct_links injects the
/// direct-link symbols into the variable set (forces a separability collision;
/// used by the negative tests).
RationalScheme build_ic_scheme(const ChannelRealization& ch, int n,
                               const Rational& epsilon = Rational(1, 10),
                               std::size_t cap = kDefaultDirectionCap,
                               bool include_direct_links = false);

/// Complex K-user IC viewed as a 2K-user real IC whose 2x2
/// blocks follow the real embedding; repeated entries share base symbols with
/// signs. Feed the result to build_ic_scheme.
ChannelRealization complex_ic_to_real_ic(const ChannelRealization& ch);

/// d(n) as an exact rational.
Rational finite_n_dof(const RationalScheme& scheme);

}  // namespace ia
