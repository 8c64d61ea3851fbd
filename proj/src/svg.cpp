#include "ffms/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ffms {
namespace svg {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string header(const std::string& title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
                      "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
                      std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           title + "</text>\n";
    return out;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
    Range xr, yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.grow(v);
        for (double v : s.y) yr.grow(v);
    }
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) {
        return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };

    std::string out = header(title);
    out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
           std::to_string(kMarginTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(plot_h) + "\" fill=\"none\" stroke=\"#999\"/>\n";

    // axis tick labels: ends only
    out += "<text x=\"" + num(px(xr.lo)) + "\" y=\"" + num(kHeight - kMarginBottom + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + num(xr.lo) + "</text>\n";
    out += "<text x=\"" + num(px(xr.hi)) + "\" y=\"" + num(kHeight - kMarginBottom + 18) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(xr.hi) +
           "</text>\n";
    out += "<text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(py(yr.lo)) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(yr.lo) +
           "</text>\n";
    out += "<text x=\"" + num(kMarginLeft - 8) + "\" y=\"" + num(py(yr.hi)) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(yr.hi) +
           "</text>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" +
           std::to_string(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + std::to_string(kHeight / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           std::to_string(kHeight / 2) + ")\">" + y_label + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        std::string pts;
        const std::size_t n = std::min(s.x.size(), s.y.size());
        // thin dense series so the file stays small
        const std::size_t stride = std::max<std::size_t>(1, n / 2000);
        for (std::size_t i = 0; i < n; i += stride)
            pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft + 10) + "\" y=\"" +
               std::to_string(kMarginTop + 16 + 16 * static_cast<int>(si)) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" +
               s.label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string heat_map(const std::string& title, const std::vector<std::vector<double>>& values,
                     double x0, double dx, const std::string& x_label,
                     const std::string& col_label) {
    std::string out = header(title);
    if (values.empty() || values[0].empty()) return out + "</svg>\n";

    Range vr;
    for (const auto& row : values)
        for (double v : row) vr.grow(v);
    if (!(vr.hi > vr.lo)) vr.hi = vr.lo + 1.0;

    const std::size_t n_rows = values.size();
    const std::size_t n_cols = values[0].size();
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const std::size_t stride = std::max<std::size_t>(1, n_rows / 800);

    const double cell_w = plot_w / static_cast<double>((n_rows + stride - 1) / stride);
    const double cell_h = plot_h / static_cast<double>(n_cols);

    std::size_t drawn = 0;
    for (std::size_t i = 0; i < n_rows; i += stride, ++drawn) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            const double t = (values[i][j] - vr.lo) / (vr.hi - vr.lo);
            const int r = static_cast<int>(255 * t);
            const int b = static_cast<int>(255 * (1.0 - t));
            out += "<rect x=\"" + num(kMarginLeft + drawn * cell_w) + "\" y=\"" +
                   num(kMarginTop + j * cell_h) + "\" width=\"" + num(cell_w + 0.5) +
                   "\" height=\"" + num(cell_h) + "\" fill=\"rgb(" + std::to_string(r) +
                   ",80," + std::to_string(b) + ")\"/>\n";
        }
    }
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" +
           std::to_string(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
           " (" + num(x0) + " to " + num(x0 + dx * static_cast<double>(n_rows - 1)) +
           ")</text>\n";
    out += "<text x=\"16\" y=\"" + std::to_string(kHeight / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           std::to_string(kHeight / 2) + ")\">" + col_label + "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace svg
}  // namespace ffms
