// SPDX-License-Identifier: Apache-2.0
#include "ia/linear.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <limits>

#include "ia/rng.hpp"

namespace ia {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kSolveTol = 1e-12;

template <typename Mat>
double sigma_ratio(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

template <typename Mat>
int numeric_rank(const Mat& m, double tol = kRankTol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

template <typename Mat>
Mat orth_complement_impl(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    int rank = 0;
    if (s.size() > 0 && s(0) > 0.0)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > 1e-10 * s(0)) ++rank;
    return svd.matrixU().rightCols(a.rows() - rank);
}

/// Relative residual of x outside the column span of basis.
template <typename Mat, typename Vec>
double span_residual(const Mat& basis, const Vec& x) {
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
    const double nx = x.norm();
    if (nx == 0.0) return 0.0;
    return (x - q * (q.adjoint() * x)).norm() / nx;
}

template <typename Scalar>
Scalar draw_scalar(GaussianStream& g);

template <>
double draw_scalar<double>(GaussianStream& g) {
    return g.next();
}

template <>
std::complex<double> draw_scalar<std::complex<double>>(GaussianStream& g) {
    const double re = g.next();
    const double im = g.next();
    return std::complex<double>(re, im) / std::sqrt(2.0);
}

template <typename Mat>
Mat draw_matrix(GaussianStream& g, Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = draw_scalar<typename Mat::Scalar>(g);
    return m;
}

MatrixXcd to_cx(const MatrixXd& m) { return m.cast<std::complex<double>>(); }

/// Worst post-zero-forcing stream gain across all (user, state): the SNR per
/// stream is gain * per-stream power. Returns 0 for a singular desired matrix.
double min_post_zf_gain(const LinearScheme& s) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < s.channels.size(); ++u)
        for (std::size_t st = 0; st < s.channels[u].size(); ++st) {
            const MatrixXcd a = s.combiners[u][st].adjoint() * s.channels[u][st];
            const MatrixXcd noise = s.combiners[u][st].adjoint() * s.combiners[u][st];
            for (std::size_t m = 0; m < s.beamformers.size(); ++m) {
                if (s.message_user[m] != static_cast<int>(u)) continue;
                const MatrixXcd d = a * s.beamformers[m];
                if (d.cols() == 0) continue;
                if (sigma_ratio(d) < 1e-14) return 0.0;
                const MatrixXcd w = d.inverse();
                const MatrixXcd post = w * noise * w.adjoint();
                for (Eigen::Index i = 0; i < post.rows(); ++i)
                    worst = std::min(worst, 1.0 / post(i, i).real());
            }
        }
    return std::isfinite(worst) ? worst : 0.0;
}

// The constructions leave their auxiliary combiner draws free ("generate
// randomly"); each builder evaluates this many seeded candidates and keeps the
// one with the largest worst-case stream gain.
constexpr int kDrawCandidates = 16;

void require_scenario(const ChannelRealization& ch, Setting setting, int tx, int users,
                      const std::vector<int>& states, const char* what) {
    const auto& sc = ch.scenario;
    if (sc.network != Network::bc || sc.setting != setting || sc.tx_count != tx ||
        sc.user_count != users || sc.states != states)
        throw scheme_error(errc::regime_mismatch, std::string(what));
}

}  // namespace

const char* linear_kind_name(LinearKind k) {
    switch (k) {
        case LinearKind::thm1: return "thm1";
        case LinearKind::thm2: return "thm2";
        case LinearKind::appc_ex1: return "appC_ex1";
        case LinearKind::appc_ex2: return "appC_ex2";
        case LinearKind::appc_ex3: return "appC_ex3";
        case LinearKind::appc_ex4: return "appC_ex4";
        case LinearKind::weingarten: return "weingarten";
        case LinearKind::many_to_one: return "many_to_one";
    }
    return "?";
}

Eigen::MatrixXcd orth_complement(const Eigen::MatrixXcd& a) { return orth_complement_impl(a); }
Eigen::MatrixXd orth_complement(const Eigen::MatrixXd& a) { return orth_complement_impl(a); }

// ---------------------------------------------------------------------------
// Theorem 1: M=2, J=[1,3], real embedding to a 2x4 / 4-dim transmit space.
// ---------------------------------------------------------------------------

std::pair<LinearScheme, VerificationLedger> build_theorem1_scheme(const ChannelRealization& ch) {
    require_scenario(ch, Setting::complex_, 2, 2, {1, 3},
                     "theorem 1 scheme requires complex BC with M=2, J=[1,3]");

    const MatrixXd h1 = embed_complex_to_real(ch.rows[0][0]);
    std::vector<MatrixXd> h2(3);
    for (int j = 0; j < 3; ++j) h2[j] = embed_complex_to_real(ch.rows[1][j]);

    MatrixXd stack(4, 4);
    stack << h2[0].transpose(), h2[1].transpose();
    if (sigma_ratio(stack) < kSolveTol)
        throw scheme_error(errc::singular_stack, "[H1^T H2^T] stack of user 2 is singular");
    const auto solver = stack.colPivHouseholderQr();
    const MatrixXd h1t = h1.transpose();
    const VectorXd u2 = orth_complement(h1t).col(0);  // 4x1

    auto assemble = [&](const VectorXd& v3) {
        const VectorXd w = solver.solve(h2[2].transpose() * v3);
        VectorXd v1 = w.head(2).normalized();
        VectorXd v2 = w.tail(2).normalized();
        MatrixXd protected2(4, 2);
        protected2 << h2[0].transpose() * v1, h2[1].transpose() * v2;
        const MatrixXd u1 = orth_complement(protected2);  // 4x2

        LinearScheme s;
        s.kind = LinearKind::thm1;
        s.dof_setting = Setting::complex_;
        s.complex_streams = false;
        s.slots = 1;
        s.channels = {{to_cx(h1)}, {to_cx(h2[0]), to_cx(h2[1]), to_cx(h2[2])}};
        s.beamformers = {to_cx(u1), to_cx(u2)};
        s.message_user = {0, 1};
        s.message_tx = {0, 0};
        s.combiners = {{to_cx(MatrixXd::Identity(2, 2))}, {to_cx(v1), to_cx(v2), to_cx(v3)}};
        s.streams = {2, 1};
        s.dof_claimed = Rational(3, 2);
        s.per_user_dof = {Rational(1), Rational(1, 2)};
        return s;
    };

    GaussianStream aux(ch.scenario.seed, rng_tag::aux_combiner);
    LinearScheme best;
    double best_gain = -1.0;
    for (int c = 0; c < kDrawCandidates; ++c) {
        const VectorXd v3 = VectorXd(draw_matrix<MatrixXd>(aux, 2, 1)).normalized();
        LinearScheme s = assemble(v3);
        const double gain = min_post_zf_gain(s);
        if (gain > best_gain) {
            best_gain = gain;
            best = std::move(s);
        }
    }
    return {best, verify_scheme(best)};
}

// ---------------------------------------------------------------------------
// Theorem 2: M=2, J=[3,3], 3-slot extension + embedding (12-dim transmit space).
// ---------------------------------------------------------------------------

std::pair<LinearScheme, VerificationLedger> build_theorem2_scheme(const ChannelRealization& ch) {
    require_scenario(ch, Setting::complex_, 2, 2, {3, 3},
                     "theorem 2 scheme requires complex BC with M=2, J=[3,3]");

    std::vector<std::vector<MatrixXd>> h(2, std::vector<MatrixXd>(3));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j) h[k][j] = extend_channel(embed_complex_to_real(ch.rows[k][j]), 3);

    std::vector<Eigen::ColPivHouseholderQR<MatrixXd>> solvers;
    for (int k = 0; k < 2; ++k) {
        MatrixXd stack(12, 12);
        stack << h[k][0].transpose(), h[k][1].transpose();
        if (sigma_ratio(stack) < kSolveTol)
            throw scheme_error(errc::singular_stack, "[H1^T H2^T] stack is singular");
        solvers.emplace_back(stack);
    }

    auto assemble = [&](const MatrixXd& v31, const MatrixXd& v32) {
        std::vector<std::vector<MatrixXd>> v(2, std::vector<MatrixXd>(3));
        for (int k = 0; k < 2; ++k) {
            const MatrixXd& v3 = k == 0 ? v31 : v32;
            const MatrixXd w = solvers[k].solve(h[k][2].transpose() * v3);
            v[k][0] = w.topRows(6);
            v[k][1] = w.bottomRows(6);
            v[k][2] = v3;
        }
        std::vector<MatrixXd> protected_space(2);
        for (int k = 0; k < 2; ++k) {
            protected_space[k].resize(12, 8);
            protected_space[k] << h[k][0].transpose() * v[k][0], h[k][1].transpose() * v[k][1];
        }
        LinearScheme s;
        s.kind = LinearKind::thm2;
        s.dof_setting = Setting::complex_;
        s.complex_streams = false;
        s.slots = 3;
        s.channels.resize(2);
        s.combiners.resize(2);
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 3; ++j) {
                s.channels[k].push_back(to_cx(h[k][j]));
                s.combiners[k].push_back(to_cx(v[k][j]));
            }
        s.beamformers = {to_cx(orth_complement(protected_space[1])),
                         to_cx(orth_complement(protected_space[0]))};
        s.message_user = {0, 1};
        s.message_tx = {0, 0};
        s.streams = {4, 4};
        s.dof_claimed = Rational(4, 3);
        s.per_user_dof = {Rational(2, 3), Rational(2, 3)};
        return s;
    };

    GaussianStream aux(ch.scenario.seed, rng_tag::aux_combiner);
    LinearScheme best;
    double best_gain = -1.0;
    for (int c = 0; c < kDrawCandidates; ++c) {
        const MatrixXd v31 = draw_matrix<MatrixXd>(aux, 6, 4);
        const MatrixXd v32 = draw_matrix<MatrixXd>(aux, 6, 4);
        LinearScheme s = assemble(v31, v32);
        const double gain = min_post_zf_gain(s);
        if (gain > best_gain) {
            best_gain = gain;
            best = std::move(s);
        }
    }
    return {best, verify_scheme(best)};
}

// ---------------------------------------------------------------------------
// Symmetric-signaling failure demonstration.
// ---------------------------------------------------------------------------

VerificationLedger check_symmetric_signaling_fails(const ChannelRealization& ch) {
    require_scenario(ch, Setting::complex_, 2, 2, {3, 3},
                     "symmetric-signaling check requires complex BC with M=2, J=[3,3]");

    VerificationLedger ledger;

    // Native complex arithmetic, 3 extensions, no asymmetric split.
    std::vector<std::vector<MatrixXcd>> hc(2, std::vector<MatrixXcd>(3));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j) hc[k][j] = extend_complex(ch.rows[k][j], 3);  // 3x6

    GaussianStream aux(ch.scenario.seed, rng_tag::aux_combiner);
    const MatrixXcd v31 = draw_matrix<MatrixXcd>(aux, 3, 2);
    const MatrixXcd v32 = draw_matrix<MatrixXcd>(aux, 3, 2);

    MatrixXcd stack(6, 6);
    stack << hc[0][0].adjoint(), hc[0][1].adjoint();
    if (sigma_ratio(stack) < kSolveTol)
        throw scheme_error(errc::singular_stack, "complex [H1^H H2^H] stack is singular");
    const MatrixXcd w = stack.colPivHouseholderQr().solve(hc[0][2].adjoint());
    const MatrixXcd b1 = w.topRows(3);
    const MatrixXcd b2 = w.bottomRows(3);

    // The channel structure forces B_m = b_m * I; record how close we are.
    const double structure_dev =
        std::max((b1 - b1(0, 0) * MatrixXcd::Identity(3, 3)).norm() / b1.norm(),
                 (b2 - b2(0, 0) * MatrixXcd::Identity(3, 3)).norm() / b2.norm());
    ledger.add("symmetric_B_scalar_structure", CheckKind::rank, structure_dev, 1e-9,
               CheckCmp::below);

    MatrixXcd m67 = MatrixXcd::Zero(6, 6);
    m67.block(0, 0, 3, 2) = b1 * v31;
    m67.block(3, 2, 3, 2) = b2 * v31;
    m67.block(0, 4, 3, 2) = v32;
    m67.block(3, 4, 3, 2) = v32;
    const int deficiency = 6 - numeric_rank(m67);
    ledger.add("symmetric_decodability_deficiency", CheckKind::span_dimension,
               static_cast<double>(deficiency), 0.5, CheckCmp::above);

    // Contrast: the asymmetric (real-embedded) variant on the same seed is full rank.
    std::vector<std::vector<MatrixXd>> h(2, std::vector<MatrixXd>(3));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j) h[k][j] = extend_channel(embed_complex_to_real(ch.rows[k][j]), 3);
    GaussianStream aux2(ch.scenario.seed, rng_tag::aux_combiner);
    const MatrixXd rv31 = draw_matrix<MatrixXd>(aux2, 6, 4);
    const MatrixXd rv32 = draw_matrix<MatrixXd>(aux2, 6, 4);
    MatrixXd rstack(12, 12);
    rstack << h[0][0].transpose(), h[0][1].transpose();
    const MatrixXd rw = rstack.colPivHouseholderQr().solve(h[0][2].transpose());
    MatrixXd rm = MatrixXd::Zero(12, 12);
    rm.block(0, 0, 6, 4) = rw.topRows(6) * rv31;
    rm.block(6, 4, 6, 4) = rw.bottomRows(6) * rv31;
    rm.block(0, 8, 6, 4) = rv32;
    rm.block(6, 8, 6, 4) = rv32;
    ledger.add("asymmetric_decodability_full_rank", CheckKind::rank, sigma_ratio(rm), kRankTol,
               CheckCmp::above);

    return ledger;
}

// ---------------------------------------------------------------------------
// Generic compound MIMO BC examples (J=4 uses the eigen-alignment recipe).
// ---------------------------------------------------------------------------

MimoBcRealization sample_generic_mimo_bc(int rx, int tx, const std::vector<int>& states,
                                         std::uint64_t seed) {
    MimoBcRealization out;
    out.real_valued = false;
    out.seed = seed;
    out.H.resize(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        for (int j = 0; j < states[k]; ++j) {
            MatrixXcd m(rx, tx);
            for (int r = 0; r < rx; ++r)
                for (int c = 0; c < tx; ++c) {
                    const double re = counter_normal(seed, rng_tag::mimo_channel, k, j,
                                                     static_cast<std::uint64_t>(2 * (r * tx + c)));
                    const double im = counter_normal(seed, rng_tag::mimo_channel, k, j,
                                                     static_cast<std::uint64_t>(2 * (r * tx + c) + 1));
                    m(r, c) = std::complex<double>(re, im) / std::sqrt(2.0);
                }
            out.H[k].push_back(m);
        }
    return out;
}

MimoBcRealization structured_mimo_bc(const ChannelRealization& miso_complex) {
    if (miso_complex.scenario.setting != Setting::complex_)
        throw scheme_error(errc::regime_mismatch, "structured embedding needs a complex MISO BC");
    MimoBcRealization out;
    out.real_valued = true;
    out.seed = miso_complex.scenario.seed;
    out.H.resize(miso_complex.rows.size());
    for (std::size_t k = 0; k < miso_complex.rows.size(); ++k)
        for (const auto& row : miso_complex.rows[k])
            out.H[k].push_back(to_cx(embed_complex_to_real(row)));
    return out;
}

MimoBcRealization structured_mimo_bc_extended(const ChannelRealization& miso_complex, int slots) {
    MimoBcRealization out = structured_mimo_bc(miso_complex);
    out.slots = slots;
    for (auto& user : out.H)
        for (auto& m : user) m = to_cx(extend_channel(m.real(), slots));
    return out;
}

namespace {

/// Usable eigenvectors of d, normalized. Real-valued inputs demand real
/// eigenvalues (|Im| <= kEigRealTol * |lambda|) and realified eigenvectors;
/// NO_REAL_EIGENVECTORS when fewer than 2 eigenvalues qualify.
std::vector<VectorXcd> usable_eigenvectors(const MatrixXcd& d, bool real_valued) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(d);
    if (es.info() != Eigen::Success)
        throw scheme_error(errc::genericity_violation, "eigendecomposition failed");
    const VectorXcd lam = es.eigenvalues();
    std::vector<VectorXcd> out;
    int real_count = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const bool is_real = std::abs(lam(i).imag()) <= kEigRealTol * std::abs(lam(i));
        if (is_real) ++real_count;
        if (real_valued && !is_real) continue;
        VectorXcd v = es.eigenvectors().col(i);
        if (real_valued) {
            // real matrix + real eigenvalue: the eigenvector is real up to phase
            Eigen::Index imax = 0;
            v.cwiseAbs().maxCoeff(&imax);
            v *= std::conj(v(imax)) / std::abs(v(imax));
            v = to_cx(v.real());
        }
        out.push_back(v.normalized());
    }
    if (real_valued && real_count < 2)
        throw scheme_error(errc::no_real_eigenvectors,
                           "only " + std::to_string(real_count) +
                               " real eigenvalues; the alignment needs real eigenvectors");
    if (out.size() < 2) throw scheme_error(errc::no_real_eigenvectors, "not enough eigenvectors");
    return out;
}

void require_invertible(const MatrixXcd& m, const char* what) {
    if (sigma_ratio(m) < kSolveTol) throw scheme_error(errc::genericity_violation, what);
}

}  // namespace

std::pair<LinearScheme, VerificationLedger> build_appendixC_scheme(const MimoBcRealization& ch,
                                                                   AppCVariant variant) {
    const bool single_state_user1 = variant == AppCVariant::ex1 || variant == AppCVariant::ex3;
    const int j2 = (variant == AppCVariant::ex1 || variant == AppCVariant::ex2) ? 3 : 4;

    if (ch.H.size() != 2) throw scheme_error(errc::regime_mismatch, "two users required");
    const int rx = static_cast<int>(ch.H[0][0].rows());
    const int tx = static_cast<int>(ch.H[0][0].cols());
    if (tx != 2 * rx)
        throw scheme_error(errc::regime_mismatch, "transmit dimension must be twice receive");
    if (single_state_user1) {
        if (rx != 2) throw scheme_error(errc::regime_mismatch, "examples 1/3 use 2 rx antennas");
        if (ch.H[0].size() != 1 || static_cast<int>(ch.H[1].size()) != j2)
            throw scheme_error(errc::regime_mismatch, "examples 1/3 require J=[1,J2]");
    } else {
        if ((2 * rx) % 3 != 0)
            throw scheme_error(errc::regime_mismatch, "examples 2/4 need tx divisible by 3");
        if (static_cast<int>(ch.H[0].size()) != j2 || static_cast<int>(ch.H[1].size()) != j2)
            throw scheme_error(errc::regime_mismatch, "examples 2/4 require J=[J,J]");
    }

    GaussianStream aux(ch.seed, rng_tag::aux_combiner);
    auto draw = [&](Eigen::Index r, Eigen::Index c) {
        return ch.real_valued ? to_cx(draw_matrix<MatrixXd>(aux, r, c))
                              : draw_matrix<MatrixXcd>(aux, r, c);
    };

    LinearScheme s;
    s.kind = single_state_user1 ? (j2 == 3 ? LinearKind::appc_ex1 : LinearKind::appc_ex3)
                                : (j2 == 3 ? LinearKind::appc_ex2 : LinearKind::appc_ex4);
    s.dof_setting = Setting::complex_;
    s.complex_streams = !ch.real_valued;
    s.slots = ch.slots;
    s.channels = ch.H;
    s.message_user = {0, 1};
    s.message_tx = {0, 0};
    s.combiners.resize(2);

    if (single_state_user1) {
        // User 2 picks one combining vector per state; user 1 keeps its whole space.
        const auto& h2 = ch.H[1];
        MatrixXcd stack(tx, tx);
        stack << h2[0].adjoint(), h2[1].adjoint();
        if (sigma_ratio(stack) < kSolveTol)
            throw scheme_error(errc::singular_stack, "[H1^H H2^H] stack of user 2 is singular");
        const auto solver = stack.colPivHouseholderQr();
        const VectorXcd u2 = orth_complement(MatrixXcd(ch.H[0][0].adjoint())).col(0);

        MatrixXcd b1, b2, b3, b4;
        std::vector<VectorXcd> v3_options;
        if (j2 == 3) {
            for (int c = 0; c < kDrawCandidates; ++c)
                v3_options.push_back(VectorXcd(draw(rx, 1)).normalized());
        } else {
            const MatrixXcd b12 = solver.solve(MatrixXcd(h2[2].adjoint()));
            const MatrixXcd b34 = solver.solve(MatrixXcd(h2[3].adjoint()));
            b1 = b12.topRows(rx);
            b2 = b12.bottomRows(rx);
            b3 = b34.topRows(rx);
            b4 = b34.bottomRows(rx);
            require_invertible(b1, "B1 singular");
            require_invertible(b3, "B3 singular");
            require_invertible(b4, "B4 singular");
            const MatrixXcd d =
                b1.colPivHouseholderQr().solve(MatrixXcd(b3 * b4.colPivHouseholderQr().solve(b2)));
            v3_options = usable_eigenvectors(d, ch.real_valued);
        }

        auto assemble = [&](const VectorXcd& v3) {
            std::vector<VectorXcd> v(j2);
            v[2] = v3;
            if (j2 == 3) {
                const VectorXcd w = solver.solve(h2[2].adjoint() * v3);
                v[0] = w.head(rx);
                v[1] = w.tail(rx);
            } else {
                v[0] = b1 * v3;
                v[1] = b2 * v3;
                v[3] = b3.colPivHouseholderQr().solve(MatrixXcd(b1 * v3));
            }
            MatrixXcd protected2(tx, 2);
            protected2 << h2[0].adjoint() * v[0], h2[1].adjoint() * v[1];
            LinearScheme out = s;
            out.beamformers = {orth_complement(protected2), u2};
            out.combiners[0] = {MatrixXcd::Identity(rx, rx)};
            for (auto& vj : v) out.combiners[1].push_back(vj.normalized());
            out.streams = {2, 1};
            out.dof_claimed = Rational(3);
            out.per_user_dof = {Rational(2), Rational(1)};
            return out;
        };

        double best_gain = -1.0;
        LinearScheme best;
        for (const auto& v3 : v3_options) {
            LinearScheme candidate = assemble(v3);
            const double gain = min_post_zf_gain(candidate);
            if (gain > best_gain) {
                best_gain = gain;
                best = std::move(candidate);
            }
        }
        s = std::move(best);
    } else {
        const int nstreams = 2 * rx / 3;
        std::vector<Eigen::ColPivHouseholderQR<MatrixXcd>> solvers;
        for (int k = 0; k < 2; ++k) {
            MatrixXcd stack(tx, tx);
            stack << ch.H[k][0].adjoint(), ch.H[k][1].adjoint();
            if (sigma_ratio(stack) < kSolveTol)
                throw scheme_error(errc::singular_stack, "[H1^H H2^H] stack is singular");
            solvers.emplace_back(stack);
        }

        // Candidate V3 choices per user: seeded draws (J=3) or eigenvector
        // combinations of B1^{-1} B3 B4^{-1} B2 (J=4).
        std::vector<std::vector<MatrixXcd>> v3_options(2);
        std::vector<std::array<MatrixXcd, 4>> b(2);
        if (j2 == 3) {
            for (int c = 0; c < kDrawCandidates; ++c)
                for (int k = 0; k < 2; ++k) v3_options[k].push_back(draw(rx, nstreams));
        } else {
            for (int k = 0; k < 2; ++k) {
                const MatrixXcd b12 = solvers[k].solve(MatrixXcd(ch.H[k][2].adjoint()));
                const MatrixXcd b34 = solvers[k].solve(MatrixXcd(ch.H[k][3].adjoint()));
                b[k] = {b12.topRows(rx), b12.bottomRows(rx), b34.topRows(rx), b34.bottomRows(rx)};
                require_invertible(b[k][0], "B1 singular");
                require_invertible(b[k][2], "B3 singular");
                require_invertible(b[k][3], "B4 singular");
                const MatrixXcd d = b[k][0].colPivHouseholderQr().solve(
                    MatrixXcd(b[k][2] * b[k][3].colPivHouseholderQr().solve(b[k][1])));
                const auto vecs = usable_eigenvectors(d, ch.real_valued);
                if (static_cast<int>(vecs.size()) < nstreams)
                    throw scheme_error(errc::no_real_eigenvectors, "not enough eigenvectors");
                for (std::size_t a = 0; a < vecs.size(); ++a)
                    for (std::size_t bb = a + 1; bb < vecs.size(); ++bb) {
                        MatrixXcd v3(rx, 2);
                        v3 << vecs[a], vecs[bb];
                        v3_options[k].push_back(v3);
                    }
            }
        }

        auto assemble = [&](const MatrixXcd& v30, const MatrixXcd& v31) {
            std::vector<std::vector<MatrixXcd>> v(2);
            for (int k = 0; k < 2; ++k) {
                const MatrixXcd& v3 = k == 0 ? v30 : v31;
                v[k].resize(j2);
                v[k][2] = v3;
                if (j2 == 3) {
                    const MatrixXcd w = solvers[k].solve(ch.H[k][2].adjoint() * v3);
                    v[k][0] = w.topRows(rx);
                    v[k][1] = w.bottomRows(rx);
                } else {
                    v[k][0] = b[k][0] * v3;
                    v[k][1] = b[k][1] * v3;
                    v[k][3] = b[k][2].colPivHouseholderQr().solve(MatrixXcd(b[k][0] * v3));
                }
            }
            std::vector<MatrixXcd> protected_space(2);
            for (int k = 0; k < 2; ++k) {
                protected_space[k].resize(tx, 2 * nstreams);
                protected_space[k] << ch.H[k][0].adjoint() * v[k][0],
                    ch.H[k][1].adjoint() * v[k][1];
            }
            LinearScheme out = s;
            out.beamformers = {orth_complement(protected_space[1]),
                               orth_complement(protected_space[0])};
            for (int k = 0; k < 2; ++k)
                for (auto& vj : v[k]) out.combiners[k].push_back(vj);
            out.streams = {nstreams, nstreams};
            const int denom = (ch.real_valued ? 2 : 1) * ch.slots;
            out.dof_claimed = Rational(2 * nstreams, denom);
            out.per_user_dof = {Rational(nstreams, denom), Rational(nstreams, denom)};
            return out;
        };

        double best_gain = -1.0;
        LinearScheme best;
        if (j2 == 3) {
            for (int c = 0; c < kDrawCandidates; ++c) {
                LinearScheme candidate = assemble(v3_options[0][c], v3_options[1][c]);
                const double gain = min_post_zf_gain(candidate);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = std::move(candidate);
                }
            }
        } else {
            for (const auto& a : v3_options[0])
                for (const auto& bb : v3_options[1]) {
                    LinearScheme candidate = assemble(a, bb);
                    const double gain = min_post_zf_gain(candidate);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best = std::move(candidate);
                    }
                }
        }
        s = std::move(best);
    }
    return {s, verify_scheme(s)};
}

// ---------------------------------------------------------------------------
// Weingarten identity/DFT baseline over 5 extensions.
// ---------------------------------------------------------------------------

std::pair<LinearScheme, VerificationLedger> build_weingarten_baseline(const ChannelRealization& ch) {
    require_scenario(ch, Setting::complex_, 2, 2, {3, 3},
                     "Weingarten baseline requires complex BC with M=2, J=[3,3]");
    constexpr int T = 5;

    MatrixXcd dft(T, T);
    for (int a = 0; a < T; ++a)
        for (int b = 0; b < T; ++b)
            dft(a, b) = std::polar(1.0 / std::sqrt(double(T)), -2.0 * std::numbers::pi * a * b / T);

    LinearScheme s;
    s.kind = LinearKind::weingarten;
    s.dof_setting = Setting::complex_;
    s.complex_streams = true;
    s.slots = T;
    s.channels.resize(2);
    s.combiners.resize(2);
    std::vector<MatrixXcd> protected_space(2, MatrixXcd(2 * T, 9));
    for (int k = 0; k < 2; ++k) {
        const MatrixXcd base = k == 0 ? MatrixXcd(MatrixXcd::Identity(T, T)) : dft;
        for (int j = 0; j < 3; ++j) {
            const MatrixXcd h = extend_complex(ch.rows[k][j], T);  // 5x10
            MatrixXcd comb(T, 3);
            comb << base.col(0), base.col(1), base.col(2 + j);
            s.channels[k].push_back(h);
            s.combiners[k].push_back(comb);
            protected_space[k].block(0, 3 * j, 2 * T, 3) = h.adjoint() * comb;
        }
    }
    s.beamformers = {orth_complement(protected_space[1]), orth_complement(protected_space[0])};
    s.message_user = {0, 1};
    s.message_tx = {0, 0};
    s.streams = {3, 3};
    s.dof_claimed = Rational(6, 5);
    s.per_user_dof = {Rational(3, 5), Rational(3, 5)};
    return {s, verify_scheme(s)};
}

// ---------------------------------------------------------------------------
// Many-to-one reciprocity demo.
// ---------------------------------------------------------------------------

std::pair<LinearScheme, VerificationLedger> build_many_to_one_demo(
    std::uint64_t seed, std::optional<Eigen::Vector2d> forced_v4) {
    GaussianStream g(seed, rng_tag::mimo_channel);
    std::vector<MatrixXd> h1(4);  // channels from every transmitter to receiver 1
    for (auto& m : h1) m = draw_matrix<MatrixXd>(g, 4, 2);
    std::vector<MatrixXd> hd(4);  // direct channels of receivers 2..4
    for (int j = 1; j < 4; ++j) hd[j] = draw_matrix<MatrixXd>(g, 4, 2);

    GaussianStream aux(seed, rng_tag::aux_combiner);
    VectorXd v4 = forced_v4 ? VectorXd(*forced_v4) : VectorXd(draw_matrix<MatrixXd>(aux, 2, 1));
    if (v4.norm() < 1e-12)
        throw scheme_error(errc::genericity_violation, "zero beamformer v4 rejected");
    v4.normalize();

    MatrixXd stack(4, 4);
    stack << h1[1], h1[2];
    if (sigma_ratio(stack) < kSolveTol)
        throw scheme_error(errc::singular_stack, "[H12 H13] stack is singular");
    const VectorXd w = stack.colPivHouseholderQr().solve(h1[3] * v4);
    VectorXd v2 = w.head(2);
    VectorXd v3 = w.tail(2);
    v2.normalize();
    v3.normalize();

    LinearScheme s;
    s.kind = LinearKind::many_to_one;
    s.dof_setting = Setting::real;
    s.complex_streams = false;
    s.slots = 1;

    // Transmit space = 4 transmitters x 2 antennas, stacked.
    MatrixXd rx1(4, 8);
    rx1 << h1[0], h1[1], h1[2], h1[3];
    s.channels.push_back({to_cx(rx1)});
    for (int j = 1; j < 4; ++j) {
        MatrixXd row = MatrixXd::Zero(4, 8);
        row.block(0, 2 * j, 4, 2) = hd[j];
        s.channels.push_back({to_cx(row)});
    }

    auto lift = [](const MatrixXd& b, int tx_index) {
        MatrixXd out = MatrixXd::Zero(8, b.cols());
        out.block(2 * tx_index, 0, 2, b.cols()) = b;
        return out;
    };
    s.beamformers = {to_cx(lift(MatrixXd::Identity(2, 2), 0)), to_cx(lift(v2, 1)),
                     to_cx(lift(v3, 2)), to_cx(lift(v4, 3))};
    s.message_user = {0, 1, 2, 3};
    s.message_tx = {0, 1, 2, 3};
    s.streams = {2, 1, 1, 1};

    MatrixXd interference(4, 2);
    interference << h1[1] * v2, h1[2] * v3;
    s.combiners.push_back({to_cx(orth_complement(interference))});
    for (int j = 1; j < 4; ++j) s.combiners.push_back({to_cx(MatrixXd((hd[j] * (j == 1 ? v2 : j == 2 ? v3 : v4)).normalized()))});

    s.dof_claimed = Rational(5);
    s.per_user_dof = {Rational(2), Rational(1), Rational(1), Rational(1)};
    return {s, verify_scheme(s)};
}

// ---------------------------------------------------------------------------
// Verification: generic residual/rank checks plus kind-specific span checks.
// ---------------------------------------------------------------------------

namespace {

void generic_checks(const LinearScheme& s, VerificationLedger& ledger) {
    for (std::size_t u = 0; u < s.channels.size(); ++u) {
        for (std::size_t st = 0; st < s.channels[u].size(); ++st) {
            const MatrixXcd a = s.combiners[u][st].adjoint() * s.channels[u][st];
            const double a_norm = a.norm();
            double worst_resid = 0.0;
            bool has_interference = false;
            for (std::size_t m = 0; m < s.beamformers.size(); ++m) {
                const MatrixXcd eff = a * s.beamformers[m];
                if (s.message_user[m] == static_cast<int>(u)) {
                    if (eff.cols() == 0) continue;
                    ledger.add("desired_rank[u" + std::to_string(u + 1) + ",s" +
                                   std::to_string(st + 1) + "]",
                               CheckKind::rank, sigma_ratio(eff), kRankTol, CheckCmp::above);
                } else if (eff.size() > 0) {
                    has_interference = true;
                    worst_resid = std::max(worst_resid, a_norm == 0.0 ? 0.0 : eff.norm() / a_norm);
                }
            }
            if (has_interference)
                ledger.add("zf[u" + std::to_string(u + 1) + ",s" + std::to_string(st + 1) + "]",
                           CheckKind::zero_forcing, worst_resid, kResidualTol, CheckCmp::below);
        }
    }
}

void thm1_checks(const LinearScheme& s, VerificationLedger& ledger) {
    const MatrixXd h1 = s.channels[0][0].real();
    std::vector<MatrixXd> h2(3);
    std::vector<VectorXd> v(3);
    for (int j = 0; j < 3; ++j) {
        h2[j] = s.channels[1][j].real();
        v[j] = s.combiners[1][j].real().col(0);
    }
    MatrixXd protected2(4, 2);
    protected2 << h2[0].transpose() * v[0], h2[1].transpose() * v[1];
    ledger.add("alignment_residual", CheckKind::zero_forcing,
               span_residual(protected2, VectorXd(h2[2].transpose() * v[2])), kResidualTol,
               CheckCmp::below);
    MatrixXd eq47(4, 4);
    eq47 << h1.transpose(), protected2;
    ledger.add("decodability_stack_rank", CheckKind::rank, sigma_ratio(eq47), kRankTol, CheckCmp::above);
}

void thm2_checks(const LinearScheme& s, VerificationLedger& ledger) {
    std::vector<MatrixXd> protected_space(2);
    for (int k = 0; k < 2; ++k) {
        protected_space[k].resize(12, 8);
        protected_space[k] << s.channels[k][0].real().transpose() * s.combiners[k][0].real(),
            s.channels[k][1].real().transpose() * s.combiners[k][1].real();
        const MatrixXd aligned = s.channels[k][2].real().transpose() * s.combiners[k][2].real();
        double resid = 0.0;
        for (int c = 0; c < aligned.cols(); ++c)
            resid = std::max(resid, span_residual(protected_space[k], VectorXd(aligned.col(c))));
        ledger.add("alignment_residual[u" + std::to_string(k + 1) + "]", CheckKind::zero_forcing,
                   resid, kResidualTol, CheckCmp::below);
    }
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j) {
            MatrixXd eq62(12, 12);
            eq62 << protected_space[1 - k],
                s.channels[k][j].real().transpose() * s.combiners[k][j].real();
            ledger.add("decodability_rank[u" + std::to_string(k + 1) + ",s" + std::to_string(j + 1) + "]",
                       CheckKind::rank, sigma_ratio(eq62), kRankTol, CheckCmp::above);
        }
}

void weingarten_checks(const LinearScheme& s, VerificationLedger& ledger) {
    for (int k = 0; k < 2; ++k) {
        MatrixXcd protected_space(10, 9);
        for (int j = 0; j < 3; ++j)
            protected_space.block(0, 3 * j, 10, 3) =
                s.channels[k][j].adjoint() * s.combiners[k][j];
        ledger.add("protected_dim[u" + std::to_string(k + 1) + "]", CheckKind::span_dimension,
                   static_cast<double>(numeric_rank(protected_space)), 7.0, CheckCmp::equals);
    }
}

void appc_checks(const LinearScheme& s, VerificationLedger& ledger) {
    const bool single_state_user1 =
        s.kind == LinearKind::appc_ex1 || s.kind == LinearKind::appc_ex3;
    const bool real_valued = !s.complex_streams;
    const int users_with_multi = single_state_user1 ? 1 : 2;
    for (int k = 2 - users_with_multi; k < 2; ++k) {
        const auto& h = s.channels[k];
        const auto& v = s.combiners[k];
        const int nstreams = static_cast<int>(v[0].cols());
        const int j2 = static_cast<int>(h.size());
        MatrixXcd protected_space(h[0].cols(), 2 * nstreams);
        protected_space << h[0].adjoint() * v[0], h[1].adjoint() * v[1];
        MatrixXcd stacked(h[0].cols(), j2 * nstreams);
        double resid = 0.0;
        for (int j = 0; j < j2; ++j) {
            const MatrixXcd cols = h[j].adjoint() * v[j];
            stacked.block(0, j * nstreams, h[0].cols(), nstreams) = cols;
            if (j >= 2)
                for (int c = 0; c < cols.cols(); ++c)
                    resid = std::max(resid, span_residual(protected_space, VectorXcd(cols.col(c))));
        }
        ledger.add("alignment_residual[u" + std::to_string(k + 1) + "]", CheckKind::zero_forcing,
                   resid, kResidualTol, CheckCmp::below);
        ledger.add("protected_stack_dim[u" + std::to_string(k + 1) + "]",
                   CheckKind::span_dimension, static_cast<double>(numeric_rank(stacked)),
                   static_cast<double>(2 * nstreams), CheckCmp::equals);

        // Eigen-reality diagnostic for the J=4 recipe, recomputed from the channels.
        if (j2 == 4) {
            MatrixXcd stack(h[0].cols(), h[0].cols());
            stack << h[0].adjoint(), h[1].adjoint();
            const MatrixXcd b12 = stack.colPivHouseholderQr().solve(MatrixXcd(h[2].adjoint()));
            const MatrixXcd b34 = stack.colPivHouseholderQr().solve(MatrixXcd(h[3].adjoint()));
            const Eigen::Index rx = h[0].rows();
            const MatrixXcd d = b12.topRows(rx).colPivHouseholderQr().solve(
                MatrixXcd(b34.topRows(rx) *
                          b34.bottomRows(rx).colPivHouseholderQr().solve(b12.bottomRows(rx))));
            Eigen::ComplexEigenSolver<MatrixXcd> es(d);
            int real_count = 0;
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                if (std::abs(es.eigenvalues()(i).imag()) <=
                    kEigRealTol * std::abs(es.eigenvalues()(i)))
                    ++real_count;
            const double usable = real_valued ? real_count : static_cast<double>(d.rows());
            ledger.add("eigen_usable_count[u" + std::to_string(k + 1) + "]",
                       CheckKind::eigen_reality, usable, static_cast<double>(nstreams) - 0.5,
                       CheckCmp::above);
        }
    }
    // User-1-side decodability stacks.
    if (single_state_user1) {
        const MatrixXcd h1t = s.channels[0][0].adjoint();
        MatrixXcd protected2(h1t.rows(), 2);
        protected2 << s.channels[1][0].adjoint() * s.combiners[1][0],
            s.channels[1][1].adjoint() * s.combiners[1][1];
        MatrixXcd eq47(h1t.rows(), h1t.cols() + 2);
        eq47 << h1t, protected2;
        ledger.add("decodability_stack_rank", CheckKind::rank, sigma_ratio(eq47), kRankTol, CheckCmp::above);
        for (std::size_t j = 0; j < s.channels[1].size(); ++j) {
            MatrixXcd m(h1t.rows(), h1t.cols() + 1);
            m << h1t, s.channels[1][j].adjoint() * s.combiners[1][j];
            ledger.add("decodability_rank[s" + std::to_string(j + 1) + "]", CheckKind::rank,
                       sigma_ratio(m), kRankTol, CheckCmp::above);
        }
    } else {
        for (int k = 0; k < 2; ++k) {
            const int other = 1 - k;
            const int nstreams = static_cast<int>(s.combiners[k][0].cols());
            MatrixXcd protected_other(s.channels[other][0].cols(), 2 * nstreams);
            protected_other << s.channels[other][0].adjoint() * s.combiners[other][0],
                s.channels[other][1].adjoint() * s.combiners[other][1];
            for (std::size_t j = 0; j < s.channels[k].size(); ++j) {
                MatrixXcd m(protected_other.rows(), 3 * nstreams);
                m << protected_other, s.channels[k][j].adjoint() * s.combiners[k][j];
                ledger.add("decodability_rank[u" + std::to_string(k + 1) + ",s" + std::to_string(j + 1) +
                               "]",
                           CheckKind::rank, sigma_ratio(m), kRankTol, CheckCmp::above);
            }
        }
    }
}

void many_to_one_checks(const LinearScheme& s, VerificationLedger& ledger) {
    const MatrixXd rx1 = s.channels[0][0].real();
    auto block = [&](int i) { return MatrixXd(rx1.block(0, 2 * i, 4, 2)); };
    const VectorXd v2 = s.beamformers[1].real().block(2, 0, 2, 1);
    const VectorXd v3 = s.beamformers[2].real().block(4, 0, 2, 1);
    const VectorXd v4 = s.beamformers[3].real().block(6, 0, 2, 1);
    MatrixXd interference(4, 2);
    interference << block(1) * v2, block(2) * v3;
    MatrixXd all3(4, 3);
    all3 << interference, block(3) * v4;
    ledger.add("interference_span_dim", CheckKind::span_dimension,
               static_cast<double>(numeric_rank(all3)), 2.0, CheckCmp::equals);
    ledger.add("alignment_residual", CheckKind::zero_forcing,
               span_residual(interference, VectorXd(block(3) * v4)), kResidualTol, CheckCmp::below);
    MatrixXd stack(4, 4);
    stack << block(0) * s.beamformers[0].real().topRows(2), interference;
    ledger.add("stack_rank", CheckKind::span_dimension, static_cast<double>(numeric_rank(stack)),
               4.0, CheckCmp::equals);
}

}  // namespace

VerificationLedger verify_scheme(const LinearScheme& s) {
    VerificationLedger ledger;
    if (s.total_streams() == 0) return ledger;  // vacuous pass
    generic_checks(s, ledger);
    switch (s.kind) {
        case LinearKind::thm1: thm1_checks(s, ledger); break;
        case LinearKind::thm2: thm2_checks(s, ledger); break;
        case LinearKind::weingarten: weingarten_checks(s, ledger); break;
        case LinearKind::appc_ex1:
        case LinearKind::appc_ex2:
        case LinearKind::appc_ex3:
        case LinearKind::appc_ex4: appc_checks(s, ledger); break;
        case LinearKind::many_to_one: many_to_one_checks(s, ledger); break;
    }
    return ledger;
}

VerificationLedger verify_scheme(const ChannelRealization& ch, const LinearScheme& s) {
    if (static_cast<int>(s.channels.size()) != ch.scenario.user_count)
        throw scheme_error(errc::dimension_mismatch, "user count differs from the realization");
    for (int u = 0; u < ch.scenario.user_count; ++u)
        if (static_cast<int>(s.channels[u].size()) != ch.scenario.states[u])
            throw scheme_error(errc::dimension_mismatch, "state count differs from the realization");
    return verify_scheme(s);
}

}  // namespace ia
