#pragma once

#include <string>
#include <vector>

#include "ffms/core_model.hpp"
#include "ffms/fabric.hpp"

namespace ffms {

enum class FailureMode { fabric_tear, stitch_failure, ballooning };
enum class FailureSeverity { advisory, critical };

struct FailureCheck {
    FailureMode mode;
    FailureSeverity severity;
    bool flagged;
    double margin;  // dimensionless adequacy ratio; < 1 means inadequate
    std::string detail;
};

struct FailureReport {
    std::vector<FailureCheck> checks;  // one entry per mode, always present

    std::vector<FailureCheck> flagged() const;
    bool any_flagged() const;
    bool any_critical() const;
    const FailureCheck& check(FailureMode mode) const;
};

/// Screen an actuator at an operating pressure against the three observed
/// failure modes:
///  - stitch_failure: stitch line load p*r_o vs rated thread strength
///    (margin = strength/load), critical;
///  - ballooning: radially under-constrained tube, from the assembly
///    classification or cross-stitch spacing wider than r_o, critical;
///  - fabric_tear: weave density below the ~300 thread count guidance,
///    advisory only (no quantitative tearing model).
/// Raising pressure never removes a flag.
FailureReport check_failures(const ActuatorSpec& actuator, double operating_pressure_pa);

/// Same screen against an externally supplied (audited/extended) rule table.
FailureReport check_failures(const ActuatorSpec& actuator, double operating_pressure_pa,
                             const RuleTable& table);

std::string to_string(FailureMode mode);
std::string to_string(FailureSeverity severity);

}  // namespace ffms
