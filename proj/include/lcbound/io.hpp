#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "lcbound/bounds.hpp"
#include "lcbound/lattice_dist.hpp"
#include "lcbound/majorization.hpp"
#include "lcbound/verify.hpp"

namespace lcb {

using json = nlohmann::json;

// Distribution specs: {"family": "bernoulli", "p": 0.5}, {"family": "explicit", "offset": -1, "pmf": [...]}, ...
DistributionSpec distribution_spec_from_json(const json& j);
json to_json(const DistributionSpec& spec);

/// Explicit-family encoding of a distribution (pmf printed round-trip exact).
json to_json(const LatticeDistribution& d);

/// Coefficients are strings "p/q" or JSON integers; floats are rejected.
Rational rational_from_json(const json& j);

using ParsedInput = std::variant<WeightedSumSpec, LatticeDistribution>;

/// A distribution object, or {"coefficients": [...], "components": [...]}.
/// Missing coefficients default to all ones. Throws std::invalid_argument.
ParsedInput parse_spec(std::string_view text);
ParsedInput parse_spec(const json& j);

std::string serialize(const WeightedSumSpec& spec);
std::string serialize(const LatticeDistribution& d);

json to_json(const BoundReport& report);
json to_json(const StochasticMatrixCertificate& cert);
json to_json(const CaseRecord& record);
json to_json(const VerificationReport& report);

/// One row per case; same ids as the JSON report.
void write_csv(std::ostream& os, const VerificationReport& report);

/// Applies JSON overrides (same keys as the SweepConfig fields) onto `config`.
void apply_config_json(SweepConfig& config, const json& j);

std::string to_string(CaseStatus status);
std::string to_string(Direction direction);

}  // namespace lcb
