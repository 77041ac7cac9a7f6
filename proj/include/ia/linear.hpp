// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "ia/channel.hpp"
#include "ia/ledger.hpp"
#include "ia/rational.hpp"

namespace ia {

enum class LinearKind {
    thm1,
    thm2,
    appc_ex1,
    appc_ex2,
    appc_ex3,
    appc_ex4,
    weingarten,
    many_to_one,
};

const char* linear_kind_name(LinearKind k);

/// A vector-space alignment scheme over one (possibly extended/embedded) channel
/// use. Channel matrices map the full transmit space to each receiver's space;
/// beamformer m injects message m's streams into the transmit space.
struct LinearScheme {
    LinearKind kind = LinearKind::thm1;
    Setting dof_setting = Setting::complex_;  // normalization used by dof_claimed and slopes
    bool complex_streams = false;             // streams carry complex symbols
    int slots = 1;

    std::vector<std::vector<Eigen::MatrixXcd>> channels;   // [user][state]: rx_dim x tx_dim
    std::vector<Eigen::MatrixXcd> beamformers;             // per message: tx_dim x streams
    std::vector<int> message_user;                         // decoding user of each message
    std::vector<int> message_tx;                           // power-constrained transmitter
    std::vector<std::vector<Eigen::MatrixXcd>> combiners;  // [user][state]: rx_dim x streams
    std::vector<int> streams;                              // per message

    Rational dof_claimed = 0;
    std::vector<Rational> per_user_dof;

    int total_streams() const {
        int s = 0;
        for (int v : streams) s += v;
        return s;
    }
};

/// Theorem-1 construction: complex MISO BC, M=2, J=[1,3], asymmetric (real-embedded)
/// signaling in a 4-dim real transmit space. 3 real streams, 3/2 complex DoF.
std::pair<LinearScheme, VerificationLedger> build_theorem1_scheme(const ChannelRealization& ch);

/// Theorem-2 construction: complex MISO BC, M=2, J=[3,3], 3-slot extension plus
/// real embedding (12-dim transmit space). 8 real streams over 3 slots, 4/3 DoF.
std::pair<LinearScheme, VerificationLedger> build_theorem2_scheme(const ChannelRealization& ch);

/// Negative control: the Theorem-2 alignment run with symmetric (native complex)
/// signaling over 3 extensions. The decodability matrix is rank-deficient for
/// every generic draw; the real-embedded variant on the same seed is full rank.
VerificationLedger check_symmetric_signaling_fails(const ChannelRealization& ch);

enum class AppCVariant { ex1, ex2, ex3, ex4 };

/// Generic compound MIMO BC channels for the appC examples (complex
/// entries), or a structured (real-embedded, quaternionic) realization.
struct MimoBcRealization {
    std::vector<std::vector<Eigen::MatrixXcd>> H;  // [user][state]: rx x tx
    bool real_valued = false;
    int slots = 1;  // channel uses spanned (structured extended inputs)
    std::uint64_t seed = 0;
};

MimoBcRealization sample_generic_mimo_bc(int rx, int tx, const std::vector<int>& states,
                                         std::uint64_t seed);

/// Real embedding of a complex MISO compound BC (2x2M blocks per state): the
/// quaternionic-structured input for the appC negative test.
MimoBcRealization structured_mimo_bc(const ChannelRealization& miso_complex);

/// Same, after a T-slot extension (block-diagonal copies of the embedding).
MimoBcRealization structured_mimo_bc_extended(const ChannelRealization& miso_complex, int slots);

/// The appC example schemes. J=3 variants reuse the Theorem-1/2 recipe on generic
/// matrices; J=4 variants align states 3 and 4 through eigenvectors of
/// B1^{-1} B3 B4^{-1} B2. Real-valued inputs demand real eigenvectors and raise
/// NO_REAL_EIGENVECTORS when fewer than 2 eigenvalues are real.
std::pair<LinearScheme, VerificationLedger> build_appendixC_scheme(const MimoBcRealization& ch,
                                                                   AppCVariant variant);

/// Identity/DFT combiner baseline over 5 channel extensions (M=2, J=[3,3]
/// complex). Protected space has 7 of 10 dimensions per user; 6/5 DoF.
std::pair<LinearScheme, VerificationLedger> build_weingarten_baseline(const ChannelRealization& ch);

/// 4-user many-to-one interference network, 2 tx / 4 rx antennas: interference
/// from transmitter 4 is aligned inside the span of interferers 2 and 3 at
/// receiver 1. Per-user DoF (2,1,1,1).
std::pair<LinearScheme, VerificationLedger> build_many_to_one_demo(
    std::uint64_t seed, std::optional<Eigen::Vector2d> forced_v4 = std::nullopt);

/// Re-runs every residual/rank/span check for a scheme. Pure function of the
/// scheme contents (the channels it was built against are embedded in it).
VerificationLedger verify_scheme(const LinearScheme& scheme);

/// Same, but first validates the scheme's stored matrices against the given
/// realization's dimensions; throws DIMENSION_MISMATCH on disagreement.
VerificationLedger verify_scheme(const ChannelRealization& ch, const LinearScheme& scheme);

/// Orthonormal basis of the orthogonal complement of col(A).
Eigen::MatrixXcd orth_complement(const Eigen::MatrixXcd& a);
Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& a);

}  // namespace ia
