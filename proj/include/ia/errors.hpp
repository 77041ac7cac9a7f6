// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ia {

/// Error taxonomy shared by the construction and verification engines.
enum class errc {
    singular_stack,        // alignment stack [H_1^T H_2^T] numerically singular (degenerate draw)
    no_real_eigenvectors,  // J=4 eigen recipe on a real-valued channel lacks enough real eigenvalues
    genericity_violation,  // a matrix that must be invertible for generic channels is singular
    regime_mismatch,       // scenario outside the regime a scheme is defined for
    size_limit,            // monomial set would exceed the configured direction cap
    collision,             // two directions that must be distinct coincide
    unsupported,           // DoF value not established by the source results
    dimension_mismatch,    // scheme and channel dimensions disagree
    enum_limit,            // constellation enumeration would exceed the point cap
    unverified_scheme,     // rate sweep requested for a scheme whose ledger has failures
    degenerate_fit,        // slope fit on a non-increasing power grid
};

const char* errc_name(errc code);

class scheme_error : public std::runtime_error {
  public:
    scheme_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

}  // namespace ia
