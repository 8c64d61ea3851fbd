#include "ffms/design_rules.hpp"

#include <limits>
#include <stdexcept>

namespace ffms {

std::vector<FailureCheck> FailureReport::flagged() const {
    std::vector<FailureCheck> out;
    for (const auto& c : checks)
        if (c.flagged) out.push_back(c);
    return out;
}

bool FailureReport::any_flagged() const {
    for (const auto& c : checks)
        if (c.flagged) return true;
    return false;
}

bool FailureReport::any_critical() const {
    for (const auto& c : checks)
        if (c.flagged && c.severity == FailureSeverity::critical) return true;
    return false;
}

const FailureCheck& FailureReport::check(FailureMode mode) const {
    for (const auto& c : checks)
        if (c.mode == mode) return c;
    throw std::logic_error("FailureReport: missing mode entry");
}

FailureReport check_failures(const ActuatorSpec& actuator, double operating_pressure_pa) {
    return check_failures(actuator, operating_pressure_pa, RuleTable::builtin());
}

FailureReport check_failures(const ActuatorSpec& actuator, double operating_pressure_pa,
                             const RuleTable& table) {
    if (operating_pressure_pa < 0.0)
        throw std::domain_error("check_failures: pressure must be >= 0");

    const FabricAssembly& fab = actuator.assembly;
    FailureReport report;

    // Stitch line load vs rated thread strength.
    {
        const double load =
            stitch_line_load_n_per_m(operating_pressure_pa, actuator.tube.outer_radius_m);
        const double margin =
            load > 0.0 ? fab.thread_strength_n_per_m / load
                       : std::numeric_limits<double>::infinity();
        FailureCheck c;
        c.mode = FailureMode::stitch_failure;
        c.severity = FailureSeverity::critical;
        c.flagged = margin < 1.0;
        c.margin = margin;
        c.detail = "stitch line load " + std::to_string(load) + " N/m vs rated " +
                   std::to_string(fab.thread_strength_n_per_m) + " N/m";
        report.checks.push_back(c);
    }

    // Ballooning: under-constrained radius, from the rule table or from cross
    // stitches spaced wider than the tube radius.
    {
        const AssemblyClassification cls = classify_assembly(fab, table);
        const bool wide_cross_gaps = fab.stitch_pattern == StitchPattern::cross &&
                                     fab.stitch_spacing_m > actuator.tube.outer_radius_m;
        FailureCheck c;
        c.mode = FailureMode::ballooning;
        c.severity = FailureSeverity::critical;
        c.flagged = cls.radial_risk == RadialRisk::high || wide_cross_gaps;
        c.margin = actuator.tube.outer_radius_m / fab.stitch_spacing_m;
        c.detail = cls.radial_risk == RadialRisk::high
                       ? "assembly classified with high radial risk: " + cls.notes
                       : (wide_cross_gaps ? "cross stitch spacing exceeds the tube radius"
                                          : "radial constraint adequate");
        report.checks.push_back(c);
    }

    // Fabric tearing: advisory only, keyed on weave density.
    {
        constexpr double kMinThreadCount = 300.0;
        FailureCheck c;
        c.mode = FailureMode::fabric_tear;
        c.severity = FailureSeverity::advisory;
        c.flagged = fab.fabric_thread_count < kMinThreadCount;
        c.margin = fab.fabric_thread_count / kMinThreadCount;
        c.detail = c.flagged ? "weave density below the recommended 300 thread count"
                             : "weave density adequate";
        report.checks.push_back(c);
    }

    return report;
}

std::string to_string(FailureMode mode) {
    switch (mode) {
        case FailureMode::fabric_tear: return "fabric_tear";
        case FailureMode::stitch_failure: return "stitch_failure";
        case FailureMode::ballooning: return "ballooning";
    }
    return "?";
}

std::string to_string(FailureSeverity severity) {
    return severity == FailureSeverity::advisory ? "advisory" : "critical";
}

}  // namespace ffms
