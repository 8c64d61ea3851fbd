#include "ffms/garment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ffms/errors.hpp"

namespace ffms {

void LimbProfile::validate() const {
    if (segments.empty()) throw std::invalid_argument("LimbProfile: needs >= 1 segment");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!(segments[i].radius_m > 0.0))
            throw std::invalid_argument("LimbProfile: radii must be > 0");
        if (i > 0 && !(segments[i].position_m > segments[i - 1].position_m))
            throw std::invalid_argument("LimbProfile: positions must be strictly increasing");
    }
}

void PeristalsisSchedule::validate() const {
    if (segments.empty()) throw std::invalid_argument("PeristalsisSchedule: empty schedule");
    for (const auto& s : segments) {
        if (!(s.period_s > 0.0))
            throw std::invalid_argument("PeristalsisSchedule: period must be > 0");
        if (s.p_low_pa < 0.0 || s.p_high_pa < s.p_low_pa)
            throw std::invalid_argument(
                "PeristalsisSchedule: need 0 <= p_low <= p_high");
    }
}

double PeristalsisSchedule::pressure_pa(std::size_t segment, double t) const {
    const SegmentWave& w = segments.at(segment);
    DriveWaveform wave;
    wave.kind = DriveKind::pressure;
    wave.shape = w.shape;
    wave.offset = 0.5 * (w.p_high_pa + w.p_low_pa);
    wave.amplitude = 0.5 * (w.p_high_pa - w.p_low_pa);
    wave.frequency_hz = 1.0 / w.period_s;
    wave.phase_s = w.phase_offset_s;
    return wave.value(t);
}

std::vector<double> wrap_compression(const ActuatorSpec& actuator, const LimbProfile& limb,
                                     std::span<const double> fluid_pressure_pa) {
    limb.validate();
    if (fluid_pressure_pa.size() != limb.segments.size())
        throw std::invalid_argument(
            "wrap_compression: one fluid pressure per limb segment required");

    std::vector<double> compression(limb.segments.size());
    for (std::size_t i = 0; i < limb.segments.size(); ++i) {
        const double f_ext =
            external_force_n(actuator, actuator.pre_strain, fluid_pressure_pa[i]);
        // A nose-to-tail wrap can only squeeze; slack bands push nothing.
        const double pulling = std::max(0.0, f_ext);
        compression[i] =
            compression_pressure_pa(pulling, actuator, limb.segments[i].radius_m);
    }
    return compression;
}

PeristalsisSchedule schedule_peristalsis(int n_segments, double period_s, int direction,
                                         double p_low_pa, double p_high_pa, WaveShape shape) {
    if (n_segments < 2)
        throw std::domain_error("schedule_peristalsis: needs >= 2 segments");
    if (!(period_s > 0.0)) throw std::domain_error("schedule_peristalsis: period must be > 0");
    if (direction != 1 && direction != -1)
        throw std::domain_error("schedule_peristalsis: direction must be +1 or -1");
    if (p_low_pa < 0.0 || p_high_pa < p_low_pa)
        throw std::domain_error("schedule_peristalsis: need 0 <= p_low <= p_high");

    PeristalsisSchedule schedule;
    schedule.segments.resize(static_cast<std::size_t>(n_segments));
    for (int i = 0; i < n_segments; ++i) {
        const int step = direction == 1 ? i : (n_segments - i) % n_segments;
        PeristalsisSchedule::SegmentWave w;
        w.period_s = period_s;
        w.phase_offset_s = period_s * static_cast<double>(step) / n_segments;
        w.p_low_pa = p_low_pa;
        w.p_high_pa = p_high_pa;
        w.shape = shape;
        schedule.segments[static_cast<std::size_t>(i)] = w;
    }
    return schedule;
}

GarmentMap simulate_garment(const PeristalsisSchedule& schedule, const ActuatorSpec& actuator,
                            const FluidModel& fluid, const LimbProfile& limb,
                            const GarmentOptions& options) {
    schedule.validate();
    limb.validate();
    actuator.validate();
    if (schedule.segments.size() != limb.segments.size())
        throw std::invalid_argument(
            "simulate_garment: schedule and limb segment counts differ");

    const double duration =
        options.duration_s > 0.0 ? options.duration_s : 2.0 * schedule.segments[0].period_s;

    GarmentMap map;
    map.dt_s = options.dt_s;
    map.haptic_threshold_pa = options.haptic_threshold_pa;
    map.cuff_threshold_pa = options.cuff_threshold_pa;

    const std::size_t n_seg = limb.segments.size();
    std::vector<std::vector<double>> per_segment(n_seg);

    ChannelNetwork net = build_network(actuator, fluid);
    if (options.volume_slope_m2 > 0.0) net.volume_slope_m2 = options.volume_slope_m2;

    // Garment schedules run on second-scale periods while the channel time
    // constant R*C can sit well under a millisecond, so integrate on a
    // substep inside the requested output grid to stay in the explicit
    // scheme's stability region.
    double r_min = segment_resistance(net.segments[0], fluid);
    for (const auto& seg : net.segments)
        r_min = std::min(r_min, segment_resistance(seg, fluid));
    double p_min = schedule.segments[0].p_low_pa;
    double anchor_max = 0.0;
    for (std::size_t s = 0; s < n_seg; ++s) {
        p_min = std::min(p_min, schedule.segments[s].p_low_pa);
        anchor_max = std::max(anchor_max, schedule.segments[s].p_high_pa);
    }
    const double gain =
        actuator.fluid_area_m2() /
        (actuator.tube.elastic_modulus_pa * actuator.tube_area_m2());
    const double capacity = net.volume_slope_m2 *
                            actuator.tube.rest_length_m * std::exp(actuator.pre_strain);
    const double anchor = max_pressure_pa(actuator, actuator.pre_strain);
    const double c_min =
        capacity * gain * std::exp((p_min - std::max(anchor, anchor_max)) * gain);
    double dt_stable = 0.2 * r_min * c_min;
    if (net.topology == Routing::series) dt_stable *= 0.25;
    if (!(dt_stable > 0.0) || options.dt_s / dt_stable > 1.0e6)
        throw IntegrationError(
            "garment output grid would need over 1e6 substeps per sample; reduce dt_s "
            "or soften the network");
    const int substeps =
        std::max(1, static_cast<int>(std::ceil(options.dt_s / dt_stable)));
    const double dt_int = options.dt_s / substeps;

    std::size_t n_samples = 0;
    for (std::size_t s = 0; s < n_seg; ++s) {
        const auto& w = schedule.segments[s];
        DriveWaveform drive;
        drive.kind = DriveKind::pressure;
        drive.shape = w.shape;
        drive.offset = 0.5 * (w.p_high_pa + w.p_low_pa);
        drive.amplitude = 0.5 * (w.p_high_pa - w.p_low_pa);
        drive.frequency_hz = 1.0 / w.period_s;
        drive.phase_s = w.phase_offset_s;

        // All segments share the pre-strain equilibrium anchor so the bands
        // are interchangeable up to the schedule phase; the start-up
        // transient decays over the (millisecond) channel time constant.
        SimulationOptions sim;
        sim.dt_s = dt_int;
        sim.duration_s = duration;
        sim.mode = SimulationMode::isometric_force;

        const Trajectory traj = simulate_transient(net, actuator, fluid, drive, sim);
        n_samples = (traj.size() - 1) / static_cast<std::size_t>(substeps) + 1;

        std::vector<double>& pc = per_segment[s];
        pc.resize(n_samples);
        const double r_c = limb.segments[s].radius_m;
        if (s == 0) map.time_s.resize(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const std::size_t src = i * static_cast<std::size_t>(substeps);
            const double f_ext = external_force_n(actuator, actuator.pre_strain,
                                                  traj.mean_pressure_pa(src));
            pc[i] = compression_pressure_pa(std::max(0.0, f_ext), actuator, r_c);
            if (s == 0) map.time_s[i] = traj.time_s[src];
        }

        if (auto warn = compression_validity_warning(r_c, actuator.effective_thickness_m))
            map.warnings.push_back("segment " + std::to_string(s) + ": " + *warn);
    }

    map.compression_pa.assign(n_samples, std::vector<double>(n_seg, 0.0));
    map.stats.resize(n_seg);
    for (std::size_t s = 0; s < n_seg; ++s) {
        GarmentMap::SegmentStats& st = map.stats[s];
        std::size_t above_haptic = 0, above_cuff = 0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double pc = per_segment[s][i];
            map.compression_pa[i][s] = pc;
            st.peak_pa = std::max(st.peak_pa, pc);
            if (pc > options.haptic_threshold_pa) ++above_haptic;
            if (pc > options.cuff_threshold_pa) ++above_cuff;
        }
        st.fraction_above_haptic = static_cast<double>(above_haptic) / n_samples;
        st.fraction_above_cuff = static_cast<double>(above_cuff) / n_samples;
    }
    return map;
}

}  // namespace ffms
