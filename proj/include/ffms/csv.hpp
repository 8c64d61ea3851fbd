#pragma once

#include <string>
#include <vector>

#include "ffms/estimation.hpp"
#include "ffms/garment.hpp"
#include "ffms/hydraulics.hpp"

namespace ffms {

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double value);

/// Trajectory CSV schema: header `t,p_1,V_1,L_1,F_1,...` with one column
/// group per channel, SI units, one row per time step.
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);

/// TestSeries CSV: `x,y` data under a typed header naming the quantities
/// (`true_strain,stress_pa` or `delta_length_m,delta_volume_m3` or
/// `volume_m3,pressure_pa`). Text in the Trajectory CSV schema imports
/// directly as a work-cycle series.
std::string test_series_to_csv(const TestSeries& series);
TestSeries test_series_from_csv(const std::string& text);

/// Space-time compression map: rows = time, columns = segments.
std::string garment_map_to_csv(const GarmentMap& map);

/// Generic table writer used by sweeps and reports.
std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ffms
