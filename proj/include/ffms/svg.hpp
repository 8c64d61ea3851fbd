#pragma once

#include <span>
#include <string>
#include <vector>

namespace ffms {

/// Minimal self-contained SVG emission: line charts and heat maps. No
/// plotting dependency; output is a single standalone <svg> document.
namespace svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

/// values[row][col]; rows map to the y axis (top to bottom), columns to x.
std::string heat_map(const std::string& title, const std::vector<std::vector<double>>& values,
                     double x0, double dx, const std::string& x_label,
                     const std::string& col_label);

}  // namespace svg
}  // namespace ffms
