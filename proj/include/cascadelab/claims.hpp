#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cascadelab::claims {

// One checkable statement from the source framework: the value it asserts and
// the tolerance at which this artifact calls a measurement consistent with it.
// The registry is the single versioned table for these; subcommands attach
// measurements, the discrepancy report joins the two.
struct ClaimSpec {
    std::string_view id;
    std::string_view description;
    double reference_value;
    double tolerance;
};

// A measurement produced by a run. expected/tolerance overrides are for
// claims whose reference value depends on the run configuration (e.g. a decay
// exponent derived from the configured constants); fixed claims leave them
// empty and take both from the registry.
struct Claim {
    std::string id;
    double measured = 0.0;
    std::optional<double> expected_override;
    std::optional<double> tolerance_override;
    std::string detail;
};

struct Verdict {
    double expected = 0.0;
    double tolerance = 0.0;
    double abs_delta = 0.0;
    bool consistent = false;
    bool known = true; // false when the id is missing from the registry and no override is given
};

const std::vector<ClaimSpec>& registry();
const ClaimSpec* find(std::string_view id);
Verdict evaluate(const Claim& claim);

} // namespace cascadelab::claims
