#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ffms/core_model.hpp"
#include "ffms/fluid.hpp"
#include "ffms/hydraulics.hpp"

namespace ffms {

/// Rigid cylindrical limb model: one actuator band wraps each segment.
struct LimbProfile {
    struct Segment {
        double position_m = 0.0;  // axial position along the limb
        double radius_m = 0.0;
    };
    std::vector<Segment> segments;

    void validate() const;  // radii > 0, positions strictly increasing
};

/// Per-segment pressure waveforms forming a traveling compression wave.
struct PeristalsisSchedule {
    struct SegmentWave {
        double period_s = 0.0;
        double phase_offset_s = 0.0;
        double p_low_pa = 0.0;
        double p_high_pa = 0.0;
        WaveShape shape = WaveShape::sine;
    };
    std::vector<SegmentWave> segments;

    double pressure_pa(std::size_t segment, double t) const;
    void validate() const;
};

/// Compressive pressure on each limb segment for given per-segment fluid
/// pressures: F_ext from the quasi-static model at the band pre-strain,
/// clamped at zero where the band goes slack (a wrap cannot push), then
/// p_c = h*F_ext/(r_c*A_M).
std::vector<double> wrap_compression(const ActuatorSpec& actuator, const LimbProfile& limb,
                                     std::span<const double> fluid_pressure_pa);

/// Uniformly phase-shifted waveforms: segment i leads by i*period/n along
/// the chosen direction (+1 ascending positions, -1 descending).
/// Throws std::domain_error for fewer than 2 segments.
PeristalsisSchedule schedule_peristalsis(int n_segments, double period_s, int direction,
                                         double p_low_pa, double p_high_pa,
                                         WaveShape shape = WaveShape::sine);

struct GarmentMap {
    double dt_s = 0.0;
    std::vector<double> time_s;
    std::vector<std::vector<double>> compression_pa;  // [time][segment]

    struct SegmentStats {
        double peak_pa = 0.0;
        double fraction_above_haptic = 0.0;
        double fraction_above_cuff = 0.0;
    };
    std::vector<SegmentStats> stats;
    double haptic_threshold_pa = 0.0;
    double cuff_threshold_pa = 0.0;
    std::vector<std::string> warnings;  // thin-band validity warnings per segment
};

struct GarmentOptions {
    double duration_s = 0.0;  // 0: two schedule periods
    double dt_s = 1.0e-3;
    double haptic_threshold_pa = 4.0e3;   // palpable haptic feedback
    double cuff_threshold_pa = 12.0e3;    // blood-pressure-cuff-like compression
    double volume_slope_m2 = 0.0;         // 0: geometric bore area
};

/// Drive each segment's band through the transient engine with its schedule
/// waveform and map the resulting channel pressures to compressive pressure.
/// The report tallies per-segment time fractions above the two thresholds.
GarmentMap simulate_garment(const PeristalsisSchedule& schedule, const ActuatorSpec& actuator,
                            const FluidModel& fluid, const LimbProfile& limb,
                            const GarmentOptions& options = {});

}  // namespace ffms
