#include "ffms/hydraulics.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ffms/errors.hpp"

namespace ffms {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FluidModel::validate() const {
    if (!(kinematic_viscosity_m2s > 0.0))
        throw std::invalid_argument("FluidModel: kinematic_viscosity must be > 0");
    if (!(density_kgm3 > 0.0)) throw std::invalid_argument("FluidModel: density must be > 0");
    if (mode == FluidMode::isothermal_gas && !(reference_pressure_pa > 0.0))
        throw std::invalid_argument("FluidModel: gas mode requires reference_pressure > 0");
}

FluidModel FluidModel::water() {
    return FluidModel{1.0e-6, 1000.0, FluidMode::incompressible, 101325.0};
}

FluidModel FluidModel::air() {
    return FluidModel{1.5e-5, 1.2, FluidMode::isothermal_gas, 101325.0};
}

void ChannelNetwork::validate() const {
    if (segments.empty()) throw std::invalid_argument("ChannelNetwork: needs >= 1 segment");
    for (const auto& s : segments) {
        s.tube.validate();
        if (s.conduit_length_m < 0.0)
            throw std::invalid_argument("ChannelNetwork: conduit_length must be >= 0");
    }
    if (!(volume_slope_m2 > 0.0))
        throw std::invalid_argument("ChannelNetwork: volume_slope must be > 0");
    if (dead_volume_m3 < 0.0)
        throw std::invalid_argument("ChannelNetwork: dead_volume must be >= 0");
}

double segment_resistance(const ChannelSegment& segment, const FluidModel& fluid) {
    const double r = segment.tube.inner_radius_m;
    return 8.0 * fluid.dynamic_viscosity_pas() * segment.conduit_length_m / (kPi * r * r * r * r);
}

ChannelNetwork build_network(const ActuatorSpec& actuator, const FluidModel& fluid) {
    actuator.validate();
    fluid.validate();
    ChannelNetwork net;
    net.topology = actuator.routing;
    net.volume_slope_m2 = actuator.tube.fluid_area_m2();
    net.dead_volume_m3 = 0.0;
    net.segments.assign(static_cast<std::size_t>(actuator.tube_count),
                        ChannelSegment{actuator.tube, actuator.tube.rest_length_m});
    return net;
}

double volume_to_length(const ChannelNetwork& net, double delta_volume_m3) {
    if (delta_volume_m3 < 0.0)
        throw std::domain_error("volume_to_length: negative volume would drive length "
                                "below the rest origin");
    const double moving = std::max(0.0, delta_volume_m3 - net.dead_volume_m3);
    return moving / (static_cast<double>(net.channel_count()) * net.volume_slope_m2);
}

double length_to_volume(const ChannelNetwork& net, double delta_length_m) {
    if (delta_length_m < 0.0)
        throw std::domain_error("length_to_volume: delta_length must be >= 0");
    return net.dead_volume_m3 +
           static_cast<double>(net.channel_count()) * net.volume_slope_m2 * delta_length_m;
}

// ---------------------------------------------------------------------------
// Drive waveform
// ---------------------------------------------------------------------------

namespace {

// Unit-period trapezoid in [-1, 1]: ramp up over `r`, hold, ramp down over
// `r`, hold. Phase u in [0, 1).
double trapezoid_value(double u, double r) {
    if (u < r) return -1.0 + 2.0 * u / r;
    if (u < 0.5) return 1.0;
    if (u < 0.5 + r) return 1.0 - 2.0 * (u - 0.5) / r;
    return -1.0;
}

double trapezoid_rate(double u, double r) {
    if (u < r) return 2.0 / r;
    if (u < 0.5) return 0.0;
    if (u < 0.5 + r) return -2.0 / r;
    return 0.0;
}

double wrap_unit(double x) {
    double u = x - std::floor(x);
    return u < 0.0 ? u + 1.0 : u;
}

}  // namespace

void DriveWaveform::validate() const {
    if (shape != WaveShape::constant && !(frequency_hz > 0.0))
        throw std::invalid_argument("DriveWaveform: periodic shapes need frequency > 0");
    if (shape == WaveShape::trapezoid && !(ramp_fraction > 0.0 && ramp_fraction <= 0.5))
        throw std::invalid_argument("DriveWaveform: ramp_fraction must be in (0, 0.5]");
}

double DriveWaveform::value(double t) const {
    switch (shape) {
        case WaveShape::constant: return offset;
        case WaveShape::sine:
            return offset + amplitude * std::sin(2.0 * kPi * frequency_hz * (t - phase_s));
        case WaveShape::trapezoid:
            return offset +
                   amplitude * trapezoid_value(wrap_unit(frequency_hz * (t - phase_s)),
                                               ramp_fraction);
    }
    return offset;
}

double DriveWaveform::rate(double t) const {
    switch (shape) {
        case WaveShape::constant: return 0.0;
        case WaveShape::sine:
            return amplitude * 2.0 * kPi * frequency_hz *
                   std::cos(2.0 * kPi * frequency_hz * (t - phase_s));
        case WaveShape::trapezoid:
            return amplitude * frequency_hz *
                   trapezoid_rate(wrap_unit(frequency_hz * (t - phase_s)), ramp_fraction);
    }
    return 0.0;
}

double DriveWaveform::period_s() const {
    if (shape == WaveShape::constant || !(frequency_hz > 0.0)) return 0.0;
    return 1.0 / frequency_hz;
}

// ---------------------------------------------------------------------------
// Trajectory
// ---------------------------------------------------------------------------

double Trajectory::total_volume_m3(std::size_t i) const {
    double v = 0.0;
    for (const auto& c : channels) v += c.volume_m3[i];
    return v;
}

double Trajectory::total_force_n(std::size_t i) const {
    double f = 0.0;
    for (const auto& c : channels) f += c.force_n[i];
    return f;
}

double Trajectory::mean_pressure_pa(std::size_t i) const {
    double p = 0.0;
    for (const auto& c : channels) p += c.pressure_pa[i];
    return p / static_cast<double>(channels.size());
}

void Trajectory::validate() const {
    if (!(dt_s > 0.0)) throw std::invalid_argument("Trajectory: dt must be > 0");
    const std::size_t n = time_s.size();
    for (const auto& c : channels) {
        if (c.pressure_pa.size() != n || c.volume_m3.size() != n || c.length_m.size() != n ||
            c.force_n.size() != n)
            throw std::invalid_argument("Trajectory: channel arrays must share one length");
    }
}

// ---------------------------------------------------------------------------
// Channel storage element
// ---------------------------------------------------------------------------

namespace {

// Quasi-static pressure-volume element of one channel. The tube's internal
// stretch equilibrates with the channel pressure, so stored volume follows
//   V(p) = A_eff * L_pre * (exp((p - p0) * A_fluid / (E * A_tube)) - 1)
// anchored at the initial pressure p0. Gas mode adds isothermal storage of
// the gas column on top of the mechanical term.
class ChannelElement {
public:
    ChannelElement(const ActuatorSpec& actuator, double volume_slope_m2,
                   const FluidModel& fluid, double anchor_pressure_pa)
        : gas_(fluid.mode == FluidMode::isothermal_gas),
          ambient_pa_(fluid.reference_pressure_pa),
          anchor_pa_(anchor_pressure_pa) {
        const double strain_gain =
            actuator.fluid_area_m2() /
            (actuator.tube.elastic_modulus_pa * actuator.tube_area_m2());
        inv_gain_ = strain_gain;
        pre_length_m_ = actuator.tube.rest_length_m * std::exp(actuator.pre_strain);
        capacity_m3_ = volume_slope_m2 * pre_length_m_;
        column_m3_ = actuator.fluid_area_m2() * pre_length_m_;
    }

    // Mechanical stored volume relative to the anchor state.
    double mech_volume_at(double pressure_pa) const {
        return capacity_m3_ * std::expm1((pressure_pa - anchor_pa_) * inv_gain_);
    }

    double mech_extension_at(double pressure_pa) const {
        return pre_length_m_ * std::expm1((pressure_pa - anchor_pa_) * inv_gain_);
    }

    double pre_length_m() const { return pre_length_m_; }

    // Gauge pressure given the state variable: stored volume for liquids,
    // stored reference-condition gas volume for gas mode.
    double pressure_at(double state) const {
        if (!gas_) {
            const double x = 1.0 + state / capacity_m3_;
            if (x <= 0.0)
                throw IntegrationError("channel withdrawn past its stored volume");
            return anchor_pa_ + std::log(x) / inv_gain_;
        }
        return gas_pressure_at(state);
    }

    // Gas state at the anchor pressure, in reference-condition volume units.
    double gas_reference_state() const {
        return column_m3_ * (anchor_pa_ + ambient_pa_) / ambient_pa_;
    }

private:
    // (p + ambient) * V_cavity(p), strictly increasing where the cavity is
    // open; NaN where the cavity volume would be negative.
    double gas_forward(double p) const {
        const double cavity = column_m3_ + mech_volume_at(p);
        if (cavity <= 0.0) return std::numeric_limits<double>::quiet_NaN();
        return (p + ambient_pa_) * cavity;
    }

    double gas_pressure_at(double state) const {
        // Solve gas_forward(p) = (S0 + state) * ambient for p: bracket the
        // monotone root, then bisect with Newton steps clipped to the bracket.
        const double target = (gas_reference_state() + state) * ambient_pa_;
        if (target <= 0.0) throw IntegrationError("gas channel emptied");

        double lo = anchor_pa_, hi = anchor_pa_;
        double width = std::max(1.0e3, 0.1 * std::abs(anchor_pa_));
        for (int i = 0; i < 200; ++i) {
            const double f_lo = gas_forward(lo);
            if (!std::isnan(f_lo) && f_lo <= target) break;
            lo -= width;
            width *= 2.0;
        }
        width = std::max(1.0e3, 0.1 * std::abs(anchor_pa_));
        for (int i = 0; i < 200; ++i) {
            const double f_hi = gas_forward(hi);
            if (!std::isnan(f_hi) && f_hi >= target) break;
            hi += width;
            width *= 2.0;
        }
        if (!(gas_forward(lo) <= target) || !(gas_forward(hi) >= target))
            throw IntegrationError("gas channel state outside the solvable range");

        double p = 0.5 * (lo + hi);
        for (int i = 0; i < 100; ++i) {
            const double cavity = column_m3_ + mech_volume_at(p);
            const double f = (p + ambient_pa_) * cavity - target;
            if (f > 0.0)
                hi = p;
            else
                lo = p;
            const double dcav =
                capacity_m3_ * inv_gain_ * std::exp((p - anchor_pa_) * inv_gain_);
            const double df = cavity + (p + ambient_pa_) * dcav;
            double next = p - f / df;
            if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - p) < 1.0e-10 * (std::abs(next) + 1.0)) return next;
            p = next;
        }
        throw IntegrationError("gas pressure solve did not converge");
    }

    bool gas_;
    double ambient_pa_;
    double anchor_pa_;
    double inv_gain_;      // A_fluid / (E * A_tube)
    double pre_length_m_;  // pre-strained active length
    double capacity_m3_;   // A_eff * L_pre
    double column_m3_;     // fluid column volume A_fluid * L_pre
};

}  // namespace

double channel_volume_at_pressure(const ActuatorSpec& actuator, double volume_slope_m2,
                                  double pressure_pa) {
    const double anchor = max_pressure_pa(actuator, actuator.pre_strain);
    ChannelElement el(actuator, volume_slope_m2, FluidModel::water(), anchor);
    return el.mech_volume_at(pressure_pa);
}

double channel_pressure_at_volume(const ActuatorSpec& actuator, double volume_slope_m2,
                                  double volume_m3) {
    const double anchor = max_pressure_pa(actuator, actuator.pre_strain);
    ChannelElement el(actuator, volume_slope_m2, FluidModel::water(), anchor);
    return el.pressure_at(volume_m3);
}

// ---------------------------------------------------------------------------
// Transient simulation
// ---------------------------------------------------------------------------

namespace {

struct NetworkDynamics {
    const ChannelNetwork& net;
    const DriveWaveform& drive;
    std::vector<ChannelElement> elements;
    std::vector<double> resistance;
    std::size_t n;

    // State layout: [V_1..V_n, injected_volume, input_work, viscous_loss]
    struct Flows {
        std::vector<double> channel_flow_in;  // net inflow per channel
        double source_flow = 0.0;
        double source_pressure = 0.0;
        double loss_rate = 0.0;
    };

    Flows evaluate(double t, const std::vector<double>& state) const {
        Flows f;
        f.channel_flow_in.assign(n, 0.0);
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = elements[k].pressure_at(state[k]);

        if (net.topology == Routing::series) {
            // source -> R1 -> node1 -> R2 -> node2 -> ... -> Rn -> node n
            std::vector<double> q(n, 0.0);
            if (drive.kind == DriveKind::displacement) {
                q[0] = drive.rate(t);
                f.source_pressure = p[0] + q[0] * resistance[0];
            } else {
                f.source_pressure = drive.value(t);
                q[0] = (f.source_pressure - p[0]) / resistance[0];
            }
            for (std::size_t j = 1; j < n; ++j) q[j] = (p[j - 1] - p[j]) / resistance[j];
            for (std::size_t j = 0; j < n; ++j) {
                f.channel_flow_in[j] = q[j] - (j + 1 < n ? q[j + 1] : 0.0);
                f.loss_rate += q[j] * q[j] * resistance[j];
            }
            f.source_flow = q[0];
        } else {
            // common manifold -> per-channel R_k -> node k
            if (drive.kind == DriveKind::displacement) {
                const double qs = drive.rate(t);
                double sum_inv_r = 0.0, sum_p_over_r = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    sum_inv_r += 1.0 / resistance[k];
                    sum_p_over_r += p[k] / resistance[k];
                }
                const double manifold = (qs + sum_p_over_r) / sum_inv_r;
                f.source_pressure = manifold;
                for (std::size_t k = 0; k < n; ++k) {
                    const double qk = (manifold - p[k]) / resistance[k];
                    f.channel_flow_in[k] = qk;
                    f.loss_rate += qk * qk * resistance[k];
                }
                f.source_flow = qs;
            } else {
                f.source_pressure = drive.value(t);
                for (std::size_t k = 0; k < n; ++k) {
                    const double qk = (f.source_pressure - p[k]) / resistance[k];
                    f.channel_flow_in[k] = qk;
                    f.loss_rate += qk * qk * resistance[k];
                    f.source_flow += qk;
                }
            }
        }
        return f;
    }

    void derivative(double t, const std::vector<double>& state,
                    std::vector<double>& dstate) const {
        const Flows f = evaluate(t, state);
        for (std::size_t k = 0; k < n; ++k) dstate[k] = f.channel_flow_in[k];
        dstate[n] = f.source_flow;
        dstate[n + 1] = f.source_pressure * f.source_flow;
        dstate[n + 2] = f.loss_rate;
    }
};

void record_sample(Trajectory& traj, const NetworkDynamics& dyn, const ActuatorSpec& actuator,
                   const SimulationOptions& options, double t,
                   const std::vector<double>& state) {
    const std::size_t n = dyn.n;
    const NetworkDynamics::Flows f = dyn.evaluate(t, state);

    traj.time_s.push_back(t);
    traj.drive_value.push_back(dyn.drive.value(t));
    traj.source_pressure_pa.push_back(f.source_pressure);
    traj.source_volume_m3.push_back(state[n]);
    traj.input_work_j.push_back(state[n + 1]);
    traj.viscous_loss_j.push_back(state[n + 2]);

    const double e = actuator.tube.elastic_modulus_pa;
    const double a_tube = actuator.tube_area_m2();
    const double a_fluid = actuator.fluid_area_m2();
    for (std::size_t k = 0; k < n; ++k) {
        const double p = dyn.elements[k].pressure_at(state[k]);
        TrajectoryChannel& ch = traj.channels[k];
        ch.pressure_pa.push_back(p);
        ch.volume_m3.push_back(state[k]);
        if (options.mode == SimulationMode::isometric_force) {
            ch.length_m.push_back(dyn.elements[k].pre_length_m());
            ch.force_n.push_back(e * actuator.pre_strain * a_tube - p * a_fluid);
        } else {
            const double ext = dyn.elements[k].mech_extension_at(p);
            const double length = dyn.elements[k].pre_length_m() + ext;
            ch.length_m.push_back(length);
            const double strain = std::log(length / actuator.tube.rest_length_m);
            ch.force_n.push_back(e * strain * a_tube - p * a_fluid);
        }
    }
}

// All-zero-resistance networks equilibrate instantly; evaluate the
// quasi-static state directly instead of integrating.
Trajectory simulate_lossless(const ChannelNetwork& net, const ActuatorSpec& actuator,
                             const FluidModel& fluid, const DriveWaveform& drive,
                             const SimulationOptions& options, double anchor_pa) {
    const std::size_t n = net.channel_count();
    std::vector<ChannelElement> elements(
        n, ChannelElement(actuator, net.volume_slope_m2, fluid, anchor_pa));

    Trajectory traj;
    traj.dt_s = options.dt_s;
    traj.drive_period_s = drive.period_s();
    traj.channels.resize(n);

    const std::size_t steps =
        static_cast<std::size_t>(std::llround(options.duration_s / options.dt_s));
    const double drive0 = drive.value(0.0);
    double work = 0.0;
    double prev_p = 0.0, prev_v = 0.0;

    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * options.dt_s;
        double p;
        if (drive.kind == DriveKind::pressure) {
            p = drive.value(t);
        } else {
            // shared pressure: identical channels split the injected volume
            const double injected = drive.value(t) - drive0;
            p = elements[0].pressure_at(injected / static_cast<double>(n));
        }
        double v_total = 0.0;
        const double e = actuator.tube.elastic_modulus_pa;
        traj.time_s.push_back(t);
        traj.drive_value.push_back(drive.value(t));
        traj.source_pressure_pa.push_back(p);
        for (std::size_t k = 0; k < n; ++k) {
            const double vol = elements[k].mech_volume_at(p);
            v_total += vol;
            TrajectoryChannel& ch = traj.channels[k];
            ch.pressure_pa.push_back(p);
            ch.volume_m3.push_back(vol);
            if (options.mode == SimulationMode::isometric_force) {
                ch.length_m.push_back(elements[k].pre_length_m());
                ch.force_n.push_back(e * actuator.pre_strain * actuator.tube_area_m2() -
                                     p * actuator.fluid_area_m2());
            } else {
                const double ext = elements[k].mech_extension_at(p);
                const double length = elements[k].pre_length_m() + ext;
                ch.length_m.push_back(length);
                const double strain = std::log(length / actuator.tube.rest_length_m);
                ch.force_n.push_back(e * strain * actuator.tube_area_m2() -
                                     p * actuator.fluid_area_m2());
            }
        }
        if (i > 0) work += 0.5 * (p + prev_p) * (v_total - prev_v);
        traj.source_volume_m3.push_back(v_total);
        traj.input_work_j.push_back(work);
        traj.viscous_loss_j.push_back(0.0);
        prev_p = p;
        prev_v = v_total;
    }
    return traj;
}

}  // namespace

Trajectory simulate_transient(const ChannelNetwork& net, const ActuatorSpec& actuator,
                              const FluidModel& fluid, const DriveWaveform& drive,
                              const SimulationOptions& options) {
    net.validate();
    actuator.validate();
    fluid.validate();
    drive.validate();
    if (!(options.duration_s > 0.0))
        throw std::invalid_argument("simulate_transient: duration must be > 0");
    if (options.dt_s > options.duration_s / 100.0)
        throw std::invalid_argument("simulate_transient: dt must be <= duration/100");

    const double anchor = options.initial_pressure_pa
                              ? *options.initial_pressure_pa
                              : max_pressure_pa(actuator, actuator.pre_strain);

    const std::size_t n = net.channel_count();
    std::vector<double> resistance(n);
    bool all_lossless = true;
    for (std::size_t k = 0; k < n; ++k) {
        resistance[k] = segment_resistance(net.segments[k], fluid);
        if (resistance[k] > 0.0) all_lossless = false;
        else if (resistance[k] < 0.0)
            throw std::invalid_argument("simulate_transient: negative resistance");
    }
    if (all_lossless)
        return simulate_lossless(net, actuator, fluid, drive, options, anchor);
    for (double r : resistance)
        if (r == 0.0)
            throw std::invalid_argument(
                "simulate_transient: mixed zero and nonzero segment resistances");

    NetworkDynamics dyn{net, drive,
                        std::vector<ChannelElement>(
                            n, ChannelElement(actuator, net.volume_slope_m2, fluid, anchor)),
                        std::move(resistance), n};

    Trajectory traj;
    traj.dt_s = options.dt_s;
    traj.drive_period_s = drive.period_s();
    traj.channels.resize(n);

    // State: channel volumes start at the anchor pressure (all zeros), plus
    // the three bookkeeping integrals.
    std::vector<double> state(n + 3, 0.0);
    std::vector<double> k1(n + 3), k2(n + 3), k3(n + 3), k4(n + 3), tmp(n + 3);

    const std::size_t steps =
        static_cast<std::size_t>(std::llround(options.duration_s / options.dt_s));
    const double dt = options.dt_s;

    record_sample(traj, dyn, actuator, options, 0.0, state);

    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;

        dyn.derivative(t, state, k1);
        for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * dt * k1[j];
        dyn.derivative(t + 0.5 * dt, tmp, k2);
        for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * dt * k2[j];
        dyn.derivative(t + 0.5 * dt, tmp, k3);
        for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + dt * k3[j];
        dyn.derivative(t + dt, tmp, k4);
        for (std::size_t j = 0; j < state.size(); ++j)
            state[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) norm += std::abs(state[k]);
        if (!std::isfinite(norm) || norm > 1.0e3)
            throw IntegrationError("state diverged at t=" + std::to_string(t + dt) +
                                   " s with dt=" + std::to_string(dt) +
                                   " s; reduce the step size");

        record_sample(traj, dyn, actuator, options, t + dt, state);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Latency estimation
// ---------------------------------------------------------------------------

double estimate_latency_s(std::span<const double> drive, std::span<const double> response,
                          double dt_s, double period_s) {
    if (!(period_s > 0.0)) throw LatencyError("latency needs a periodic drive");
    if (drive.size() != response.size())
        throw LatencyError("drive and response must share one grid");
    const std::size_t per_period = static_cast<std::size_t>(std::llround(period_s / dt_s));
    if (per_period < 8) throw LatencyError("period too short for the sample grid");
    if (drive.size() < 2 * per_period)
        throw LatencyError("latency needs at least two full drive periods");

    // Discard the first period as transient.
    const std::size_t start = per_period;
    const std::size_t max_lag = per_period / 2;
    const std::size_t usable = drive.size() - start - max_lag;
    if (usable < per_period / 2) throw LatencyError("latency window too short");

    auto stats = [&](std::span<const double> s, std::size_t offset, std::size_t count) {
        double mean = 0.0;
        for (std::size_t i = 0; i < count; ++i) mean += s[offset + i];
        mean /= static_cast<double>(count);
        return mean;
    };

    const double d_mean = stats(drive, start, usable);

    double best_corr = 0.0;
    std::size_t best_lag = 0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const double r_mean = stats(response, start + lag, usable);
        double num = 0.0, dd = 0.0, rr = 0.0;
        for (std::size_t i = 0; i < usable; ++i) {
            const double a = drive[start + i] - d_mean;
            const double b = response[start + lag + i] - r_mean;
            num += a * b;
            dd += a * a;
            rr += b * b;
        }
        if (dd <= 0.0 || rr <= 0.0) throw LatencyError("constant signal; latency undefined");
        const double corr = std::abs(num) / std::sqrt(dd * rr);
        if (corr > best_corr) {
            best_corr = corr;
            best_lag = lag;
        }
    }
    return static_cast<double>(best_lag) * dt_s;
}

double estimate_latency_s(const Trajectory& traj) {
    if (!(traj.drive_period_s > 0.0))
        throw LatencyError("trajectory has no periodic drive metadata");
    // The drive-side signal is the pressure at the supply port (where a
    // sensor sits in practice). For a prescribed-flow source the stored
    // volume tracks the source exactly by conservation, so the measurable
    // lag is the force response falling behind the port pressure.
    std::vector<double> force(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) force[i] = traj.total_force_n(i);
    return estimate_latency_s(traj.source_pressure_pa, force, traj.dt_s,
                              traj.drive_period_s);
}

}  // namespace ffms
