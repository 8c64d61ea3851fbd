#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ffms/core_model.hpp"
#include "ffms/fluid.hpp"

namespace ffms {

/// One tube acting as both conduit (flow resistance) and storage element.
struct ChannelSegment {
    TubeSpec tube;
    double conduit_length_m = 0.0;  // hydraulic path length through this segment
};

/// Lumped tube network. Series routing threads one flow path through all
/// segments; parallel routing feeds every segment from a common manifold.
struct ChannelNetwork {
    std::vector<ChannelSegment> segments;
    Routing topology = Routing::parallel;
    double volume_slope_m2 = 0.0;  // A_eff: volume stored per unit length change, per channel
    double dead_volume_m3 = 0.0;   // supply/manifold volume that produces no motion

    std::size_t channel_count() const { return segments.size(); }
    void validate() const;
};

/// Poiseuille resistance of one segment: 8*(mu*rho)*L/(pi*r_i^4).
double segment_resistance(const ChannelSegment& segment, const FluidModel& fluid);

/// Assemble the network implied by an actuator: one segment per tube, conduit
/// length equal to the tube rest length, volume slope defaulting to the
/// geometric bore area pi*r_i^2.
ChannelNetwork build_network(const ActuatorSpec& actuator, const FluidModel& fluid);

/// Kinematic volume-length map. Volume below dead_volume produces no motion;
/// beyond it, length grows linearly at 1/(channel_count*A_eff).
/// Throws std::domain_error for negative delta_volume.
double volume_to_length(const ChannelNetwork& net, double delta_volume_m3);

/// Exact inverse of volume_to_length on delta_length >= 0.
double length_to_volume(const ChannelNetwork& net, double delta_length_m);

enum class DriveKind { pressure, displacement };
enum class WaveShape { constant, sine, trapezoid };

/// Source waveform. For pressure drives the value is a gauge pressure [Pa];
/// for displacement (syringe) drives it is an injected volume [m^3] and the
/// source prescribes its analytic rate of change. A syringe stroke converts
/// to volume via its piston area before it gets here.
struct DriveWaveform {
    DriveKind kind = DriveKind::pressure;
    WaveShape shape = WaveShape::constant;
    double offset = 0.0;     // Pa or m^3
    double amplitude = 0.0;  // Pa or m^3
    double frequency_hz = 0.0;
    double phase_s = 0.0;         // time shift; value(t) = f(t - phase_s)
    double ramp_fraction = 0.25;  // trapezoid ramp time as a fraction of the period

    double value(double t) const;
    double rate(double t) const;  // analytic d(value)/dt
    double period_s() const;      // 0 when aperiodic (constant shape or f = 0)

    void validate() const;
};

struct TrajectoryChannel {
    std::vector<double> pressure_pa;
    std::vector<double> volume_m3;  // stored volume relative to the initial state
    std::vector<double> length_m;
    std::vector<double> force_n;
};

/// Uniform-grid record of a transient run, one state tuple per channel plus
/// source-side energy bookkeeping.
struct Trajectory {
    double dt_s = 0.0;
    double drive_period_s = 0.0;  // 0 = aperiodic drive
    std::vector<double> time_s;
    std::vector<TrajectoryChannel> channels;
    std::vector<double> drive_value;         // source waveform samples
    std::vector<double> source_pressure_pa;  // pressure at the supply port
    std::vector<double> source_volume_m3;    // cumulative injected volume
    std::vector<double> input_work_j;        // cumulative integral of p_src dV_src
    std::vector<double> viscous_loss_j;      // cumulative sum of q^2 R losses

    std::size_t size() const { return time_s.size(); }
    std::size_t channel_count() const { return channels.size(); }
    double total_volume_m3(std::size_t i) const;
    double total_force_n(std::size_t i) const;
    double mean_pressure_pa(std::size_t i) const;

    void validate() const;
};

enum class SimulationMode {
    isometric_force,    // ends clamped at the pre-strain; force output
    free_displacement,  // unloaded; length output
};

struct SimulationOptions {
    double dt_s = 1.0e-3;
    double duration_s = 1.0;
    SimulationMode mode = SimulationMode::isometric_force;
    /// Initial channel pressure. Default: the pre-strain equilibrium pressure
    /// max_pressure_pa(actuator, pre_strain), i.e. the pre-pressurized state.
    std::optional<double> initial_pressure_pa;
};

/// Fixed-step 4th-order integration of the channel states. Each channel is a
/// quasi-static elastic storage element (pressure-volume relation from the
/// core force model, plus isothermal gas compliance in gas mode) fed through
/// its Poiseuille resistance path. Throws IntegrationError on divergence and
/// std::invalid_argument when dt > duration/100.
Trajectory simulate_transient(const ChannelNetwork& net, const ActuatorSpec& actuator,
                              const FluidModel& fluid, const DriveWaveform& drive,
                              const SimulationOptions& options);

/// Lag of the force response behind the pressure measured at the supply
/// port, from the peak of the normalized cross-correlation over lags in
/// [0, period/2], first period discarded as transient. Throws LatencyError
/// for aperiodic trajectories or fewer than two recorded periods.
double estimate_latency_s(const Trajectory& traj);

/// Same estimator on explicit sample arrays.
double estimate_latency_s(std::span<const double> drive, std::span<const double> response,
                          double dt_s, double period_s);

/// Quasi-static stored volume of one channel at gauge pressure p, measured
/// from the anchor pressure (stored volume 0 at p = anchor):
///   V(p) = A_eff * L_pre * (exp((p - p0)*A_fluid/(E*A_tube)) - 1)
/// with L_pre the pre-strained active length. Exposed for calibration chains
/// (e.g. band pressure after a known withdrawal).
double channel_volume_at_pressure(const ActuatorSpec& actuator, double volume_slope_m2,
                                  double pressure_pa);

/// Inverse of channel_volume_at_pressure.
double channel_pressure_at_volume(const ActuatorSpec& actuator, double volume_slope_m2,
                                  double volume_m3);

}  // namespace ffms
