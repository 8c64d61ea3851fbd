#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ffms {

/// One model-vs-reference comparison row.
struct RegressionRow {
    std::string id;
    std::string quantity;
    double model_value = 0.0;
    std::optional<double> reference_value;
    std::string units;
    std::string note;
};

struct RegressionReport {
    std::vector<RegressionRow> rows;
    std::vector<std::string> observations;  // qualitative pass/fail style lines
};

/// Recompute every bundled regression: force ranges, zero-force pressure,
/// compression chain, efficiency formulas, hydrostat identity, kinematics
/// fit, transient latency and loop-area ordering, and rule-table verdicts.
/// Deterministic: same build, same bytes.
RegressionReport build_regression_report();

std::string report_to_markdown(const RegressionReport& report);
std::string report_to_json_text(const RegressionReport& report);

}  // namespace ffms
