#include "ffms/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffms {

std::string format_double(double value) {
    char buf[40];
    if (value == static_cast<double>(static_cast<long long>(value)) &&
        std::abs(value) < 1.0e15) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(value));
        return buf;
    }
    // Shortest form that parses back to the same double: try increasing
    // precision until the round trip is exact.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, value);
        if (std::strtod(buf, nullptr) == value) return buf;
    }
    return buf;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    traj.validate();
    std::string out = "t";
    for (std::size_t k = 1; k <= traj.channel_count(); ++k) {
        const std::string idx = std::to_string(k);
        out += ",p_" + idx + ",V_" + idx + ",L_" + idx + ",F_" + idx;
    }
    out += "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.time_s[i]);
        for (const auto& ch : traj.channels) {
            out += "," + format_double(ch.pressure_pa[i]);
            out += "," + format_double(ch.volume_m3[i]);
            out += "," + format_double(ch.length_m[i]);
            out += "," + format_double(ch.force_n[i]);
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number in CSV: '" + s + "'");
    return v;
}

}  // namespace

Trajectory trajectory_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty trajectory CSV");

    const std::vector<std::string> header = split(line, ',');
    if (header.empty() || header[0] != "t" || (header.size() - 1) % 4 != 0)
        throw std::invalid_argument("trajectory CSV must start with header t,p_1,V_1,L_1,F_1,...");
    const std::size_t n_channels = (header.size() - 1) / 4;
    for (std::size_t k = 0; k < n_channels; ++k) {
        const std::string idx = std::to_string(k + 1);
        const std::size_t base = 1 + 4 * k;
        if (header[base] != "p_" + idx || header[base + 1] != "V_" + idx ||
            header[base + 2] != "L_" + idx || header[base + 3] != "F_" + idx)
            throw std::invalid_argument("unexpected trajectory CSV column '" + header[base] +
                                        "'");
    }

    Trajectory traj;
    traj.channels.resize(n_channels);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size())
            throw std::invalid_argument("trajectory CSV row width mismatch");
        traj.time_s.push_back(parse_double(cells[0]));
        for (std::size_t k = 0; k < n_channels; ++k) {
            const std::size_t base = 1 + 4 * k;
            traj.channels[k].pressure_pa.push_back(parse_double(cells[base]));
            traj.channels[k].volume_m3.push_back(parse_double(cells[base + 1]));
            traj.channels[k].length_m.push_back(parse_double(cells[base + 2]));
            traj.channels[k].force_n.push_back(parse_double(cells[base + 3]));
        }
    }
    if (traj.time_s.size() >= 2) traj.dt_s = traj.time_s[1] - traj.time_s[0];
    return traj;
}

namespace {

const char* series_header(TestKind kind) {
    switch (kind) {
        case TestKind::tensile: return "true_strain,stress_pa";
        case TestKind::volume_displacement: return "delta_length_m,delta_volume_m3";
        case TestKind::work_cycle: return "volume_m3,pressure_pa";
    }
    return "";
}

}  // namespace

std::string test_series_to_csv(const TestSeries& series) {
    std::string out = series_header(series.kind);
    out += "\n";
    for (std::size_t i = 0; i < series.x.size(); ++i)
        out += format_double(series.x[i]) + "," + format_double(series.y[i]) + "\n";
    return out;
}

TestSeries test_series_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty test series CSV");

    // trajectory exports import directly as work cycles
    if (line.rfind("t,p_1,", 0) == 0) return work_cycle_series(trajectory_from_csv(text));

    TestSeries series;
    if (line == series_header(TestKind::tensile))
        series.kind = TestKind::tensile;
    else if (line == series_header(TestKind::volume_displacement))
        series.kind = TestKind::volume_displacement;
    else if (line == series_header(TestKind::work_cycle))
        series.kind = TestKind::work_cycle;
    else
        throw std::invalid_argument("unknown test series header '" + line + "'");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != 2) throw std::invalid_argument("test series rows must be x,y");
        series.x.push_back(parse_double(cells[0]));
        series.y.push_back(parse_double(cells[1]));
    }
    return series;
}

std::string garment_map_to_csv(const GarmentMap& map) {
    std::string out = "t";
    const std::size_t n_seg = map.stats.size();
    for (std::size_t s = 1; s <= n_seg; ++s) out += ",pc_" + std::to_string(s);
    out += "\n";
    for (std::size_t i = 0; i < map.compression_pa.size(); ++i) {
        out += format_double(map.time_s[i]);
        for (std::size_t s = 0; s < n_seg; ++s)
            out += "," + format_double(map.compression_pa[i][s]);
        out += "\n";
    }
    return out;
}

std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("table row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += format_double(row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ffms
