// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>

#include "ia/dof.hpp"
#include "ia/linear.hpp"
#include "ia/linksim.hpp"
#include "ia/rational_scheme.hpp"

namespace ia {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

Json rational_to_json(const Rational& r);
Json ledger_to_json(const VerificationLedger& ledger);
Json scenario_to_json(const CompoundScenario& sc);
CompoundScenario scenario_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json linear_scheme_to_json(const LinearScheme& s);
LinearScheme linear_scheme_from_json(const Json& j);

Json rational_scheme_to_json(const RationalScheme& s);

Json probe_to_json(const ConstellationProbe& p);
Json report_to_json(const DoFReport& r);

std::string sweep_to_csv(const RateSweep& sweep);

/// FNV-1a hash of the canonical (sorted-key) dump; embedded in every report.
std::string config_hash(const Json& config);

}  // namespace ia
