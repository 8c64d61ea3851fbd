#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ffms/errors.hpp"
#include "ffms/estimation.hpp"
#include "ffms/hydraulics.hpp"
#include "test_fixtures.hpp"

using namespace ffms;
using ffms::testing::random_spec;
using ffms::testing::reference_10ch;
using ffms::testing::reference_3ch;

namespace {

ChannelNetwork fitted_network(const ActuatorSpec& actuator, const FluidModel& fluid) {
    ChannelNetwork net = build_network(actuator, fluid);
    net.volume_slope_m2 = 1.765e-5;  // fitted volume-length slope
    return net;
}

DriveWaveform volume_sine(double amplitude_m3, double frequency_hz) {
    DriveWaveform d;
    d.kind = DriveKind::displacement;
    d.shape = WaveShape::sine;
    d.offset = 0.0;
    d.amplitude = amplitude_m3;
    d.frequency_hz = frequency_hz;
    return d;
}

DriveWaveform pressure_const(double pressure_pa) {
    DriveWaveform d;
    d.kind = DriveKind::pressure;
    d.shape = WaveShape::constant;
    d.offset = pressure_pa;
    return d;
}

}  // namespace

TEST_CASE("volume-length kinematics") {
    ChannelNetwork net = fitted_network(reference_3ch(), FluidModel::water());

    SUBCASE("reference endpoints: 4.5 mL over three channels gives 85 mm") {
        CHECK(volume_to_length(net, 4.5e-6) ==
              doctest::Approx(4.5e-6 / (3 * 1.765e-5)).epsilon(1e-12));
        CHECK(volume_to_length(net, 4.5e-6) == doctest::Approx(0.085).epsilon(2e-3));
    }

    SUBCASE("dead volume offsets the origin") {
        net.dead_volume_m3 = 1.0e-6;
        CHECK(volume_to_length(net, 1.0e-6) == 0.0);
        CHECK(volume_to_length(net, 0.5e-6) == 0.0);
    }

    SUBCASE("linearity") {
        const double full = volume_to_length(net, 4.5e-6);
        CHECK(volume_to_length(net, 2.25e-6) == doctest::Approx(0.5 * full).epsilon(1e-12));
    }

    SUBCASE("negative volume is a domain error") {
        CHECK_THROWS_AS(volume_to_length(net, -1e-9), std::domain_error);
        CHECK_THROWS_AS(length_to_volume(net, -1e-9), std::domain_error);
    }

    SUBCASE("round trip to 1e-12") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> dl(0.0, 0.5);
        std::uniform_real_distribution<double> dead(0.0, 2e-6);
        for (int i = 0; i < 200; ++i) {
            net.dead_volume_m3 = dead(rng);
            const double length = dl(rng);
            const double back = volume_to_length(net, length_to_volume(net, length));
            CHECK(back == doctest::Approx(length).epsilon(1e-12));
        }
    }
}

TEST_CASE("network assembly and resistance") {
    const ActuatorSpec a3 = reference_3ch();
    const FluidModel water = FluidModel::water();

    const ChannelNetwork net = build_network(a3, water);
    CHECK(net.channel_count() == 3);
    CHECK(net.topology == Routing::parallel);
    CHECK(net.volume_slope_m2 == doctest::Approx(a3.tube.fluid_area_m2()).epsilon(1e-12));

    // per-segment Poiseuille resistance for water in the 0.8 mm bore
    CHECK(segment_resistance(net.segments[0], water) ==
          doctest::Approx(7.61e8).epsilon(2e-3));

    // series resistance adds up
    const ActuatorSpec a10 = reference_10ch();
    const ChannelNetwork net10 = build_network(a10, water);
    CHECK(net10.topology == Routing::series);
    double total = 0.0;
    for (const auto& seg : net10.segments) total += segment_resistance(seg, water);
    CHECK(total == doctest::Approx(10.0 * segment_resistance(net10.segments[0], water))
                       .epsilon(1e-12));
}

TEST_CASE("drive waveforms") {
    DriveWaveform sine = volume_sine(2.0, 0.5);
    CHECK(sine.value(0.0) == doctest::Approx(0.0));
    CHECK(sine.value(0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sine.period_s() == doctest::Approx(2.0));
    // analytic rate matches finite differences
    const double h = 1e-7;
    for (double t : {0.1, 0.3, 0.77, 1.9}) {
        const double fd = (sine.value(t + h) - sine.value(t - h)) / (2 * h);
        CHECK(sine.rate(t) == doctest::Approx(fd).epsilon(1e-6));
    }

    DriveWaveform trap;
    trap.kind = DriveKind::pressure;
    trap.shape = WaveShape::trapezoid;
    trap.offset = 10.0;
    trap.amplitude = 4.0;
    trap.frequency_hz = 1.0;
    trap.ramp_fraction = 0.25;
    CHECK(trap.value(0.0) == doctest::Approx(6.0));    // ramp start, low
    CHECK(trap.value(0.25) == doctest::Approx(14.0));  // top of ramp
    CHECK(trap.value(0.4) == doctest::Approx(14.0));   // hold high
    CHECK(trap.value(0.8) == doctest::Approx(6.0));    // hold low
    CHECK(trap.value(1.25) == doctest::Approx(14.0));  // periodic

    DriveWaveform bad = trap;
    bad.frequency_hz = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("a single segment responds identically in series and parallel") {
    ActuatorSpec a = reference_3ch();
    a.tube_count = 1;
    const FluidModel water = FluidModel::water();

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 5.0;
    const DriveWaveform drive = volume_sine(1.0e-6, 0.4);

    a.routing = Routing::series;
    const Trajectory t_series =
        simulate_transient(fitted_network(a, water), a, water, drive, opts);
    a.routing = Routing::parallel;
    const Trajectory t_parallel =
        simulate_transient(fitted_network(a, water), a, water, drive, opts);

    REQUIRE(t_series.size() == t_parallel.size());
    for (std::size_t i = 0; i < t_series.size(); i += 101) {
        CHECK(t_series.channels[0].pressure_pa[i] ==
              doctest::Approx(t_parallel.channels[0].pressure_pa[i]).epsilon(1e-12));
        CHECK(t_series.source_pressure_pa[i] ==
              doctest::Approx(t_parallel.source_pressure_pa[i]).epsilon(1e-12));
    }
}

TEST_CASE("constant pressure drive relaxes to the quasi-static state") {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(a, water);

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 5.0;
    opts.mode = SimulationMode::isometric_force;

    const Trajectory traj =
        simulate_transient(net, a, water, pressure_const(550e3), opts);
    const std::size_t last = traj.size() - 1;

    // all channels end at the drive pressure, force matches the affine model
    for (const auto& ch : traj.channels)
        CHECK(ch.pressure_pa[last] == doctest::Approx(550e3).epsilon(1e-6));
    CHECK(traj.total_force_n(last) ==
          doctest::Approx(external_force_n(a, 0.8, 550e3)).epsilon(1e-3));

    SUBCASE("halving dt moves the terminal state by less than 0.1%") {
        SimulationOptions fine = opts;
        fine.dt_s = 0.5e-3;
        const Trajectory traj2 =
            simulate_transient(net, a, water, pressure_const(550e3), fine);
        const double v1 = traj.total_volume_m3(last);
        const double v2 = traj2.total_volume_m3(traj2.size() - 1);
        CHECK(std::abs(v2 - v1) <= 1e-3 * std::abs(v1));
    }

    SUBCASE("free displacement mode terminal length matches the kinematic map") {
        SimulationOptions disp = opts;
        disp.mode = SimulationMode::free_displacement;
        ActuatorSpec relaxed = a;
        relaxed.pre_strain = 0.0;  // start from the unpressurized rest state
        const ChannelNetwork rnet = fitted_network(relaxed, water);
        const Trajectory t2 =
            simulate_transient(rnet, relaxed, water, pressure_const(200e3), disp);
        const std::size_t e = t2.size() - 1;
        const double dv = t2.total_volume_m3(e);
        const double dl = t2.channels[0].length_m[e] - t2.channels[0].length_m[0];
        CHECK(dl == doctest::Approx(volume_to_length(rnet, dv)).epsilon(1e-6));
    }
}

TEST_CASE("incompressible flow conserves volume") {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(a, water);

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 5.0;

    const Trajectory traj =
        simulate_transient(net, a, water, volume_sine(3.0e-6, 0.4), opts);
    for (std::size_t i = 0; i < traj.size(); i += 100) {
        const double stored = traj.total_volume_m3(i);
        const double injected = traj.source_volume_m3[i];
        CHECK(std::abs(stored - injected) <= 1e-9 * (std::abs(injected) + 1e-9));
    }
}

TEST_CASE("loop area collapses as the drive slows") {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(a, water);

    auto loop_area_at = [&](double freq) {
        SimulationOptions opts;
        opts.dt_s = 1e-3;
        opts.duration_s = 2.0 / freq;
        const Trajectory traj =
            simulate_transient(net, a, water, volume_sine(1.5e-6, freq), opts);
        // pressure-force loop over the second period
        const std::size_t start = traj.size() / 2;
        std::vector<double> p, f;
        for (std::size_t i = start; i < traj.size(); ++i) {
            p.push_back(traj.source_pressure_pa[i]);
            f.push_back(traj.total_force_n(i));
        }
        return std::abs(loop_area(p, f));
    };

    const double area_fast = loop_area_at(0.5);
    const double area_mid = loop_area_at(0.1);
    const double area_slow = loop_area_at(0.02);
    CHECK(area_fast > area_mid);
    CHECK(area_mid > area_slow);
    CHECK(area_slow < 0.05 * area_fast);
}

TEST_CASE("latency estimation on constructed signals") {
    const double dt = 1e-3;
    const double period = 5.0;
    std::vector<double> drive, shifted, same;
    for (int i = 0; i < 15000; ++i) {
        const double t = i * dt;
        drive.push_back(std::sin(2 * std::numbers::pi * 0.2 * t));
        shifted.push_back(std::sin(2 * std::numbers::pi * 0.2 * (t - 0.1)));
        same.push_back(drive.back());
    }
    CHECK(estimate_latency_s(same, same, dt, period) == doctest::Approx(0.0));
    CHECK(estimate_latency_s(drive, shifted, dt, period) ==
          doctest::Approx(0.100).epsilon(0.02));
    CHECK_THROWS_AS(estimate_latency_s(drive, shifted, dt, 0.0), LatencyError);
    std::vector<double> short_sig(drive.begin(), drive.begin() + 6000);
    CHECK_THROWS_AS(
        estimate_latency_s(short_sig, short_sig, dt, period), LatencyError);
}

TEST_CASE("series response lags more than parallel") {
    const FluidModel water = FluidModel::water();

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 15.0;

    const ActuatorSpec a10 = reference_10ch();
    const ChannelNetwork net10 = fitted_network(a10, water);
    const Trajectory t_series =
        simulate_transient(net10, a10, water, volume_sine(3.0e-6, 0.2), opts);
    const double lag_series = estimate_latency_s(t_series);

    const ActuatorSpec a3 = reference_3ch();
    const ChannelNetwork net3 = fitted_network(a3, water);
    const Trajectory t_par =
        simulate_transient(net3, a3, water, volume_sine(3.0e-6, 0.2), opts);
    const double lag_parallel = estimate_latency_s(t_par);

    CHECK(lag_series > lag_parallel);
    // ~100 ms observed on the 10-channel prototype at 0.2 Hz
    CHECK(lag_series >= 0.05);
    CHECK(lag_series <= 0.2);
}

TEST_CASE("gas channels settle at the drive pressure with the quasi-static force") {
    const ActuatorSpec a = reference_3ch();
    FluidModel air = FluidModel::air();
    const ChannelNetwork net = fitted_network(a, air);

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 8.0;
    const Trajectory traj = simulate_transient(net, a, air, pressure_const(500e3), opts);
    const std::size_t last = traj.size() - 1;
    for (const auto& ch : traj.channels)
        CHECK(ch.pressure_pa[last] == doctest::Approx(500e3).epsilon(1e-6));
    CHECK(traj.total_force_n(last) ==
          doctest::Approx(external_force_n(a, 0.8, 500e3)).epsilon(1e-3));

    SUBCASE("depressurizing releases the compression volume on top of the stretch") {
        const double mech = 3.0 * channel_volume_at_pressure(a, 1.765e-5, 500e3);
        CHECK(mech < 0.0);  // below the anchor pressure the tube gives volume back
        CHECK(traj.total_volume_m3(last) < mech);  // the expanding gas gives back more
    }
}

TEST_CASE("gas drive dissipates at least as much as water per cycle") {
    const ActuatorSpec a = reference_3ch();
    const ChannelNetwork net_w = fitted_network(a, FluidModel::water());
    FluidModel air = FluidModel::air();
    // match the flow resistance so only compressibility differs
    air.kinematic_viscosity_m2s =
        FluidModel::water().dynamic_viscosity_pas() / air.density_kgm3;
    const ChannelNetwork net_a = fitted_network(a, air);

    DriveWaveform drive;
    drive.kind = DriveKind::pressure;
    drive.shape = WaveShape::sine;
    drive.offset = 450e3;
    drive.amplitude = 150e3;
    drive.frequency_hz = 0.5;

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 6.0;
    opts.initial_pressure_pa = 450e3;

    auto cycle_loss = [&](const ChannelNetwork& net, const FluidModel& fluid) {
        const Trajectory traj = simulate_transient(net, a, fluid, drive, opts);
        // input work over the last full period
        const std::size_t per = static_cast<std::size_t>(std::llround(2.0 / opts.dt_s));
        return traj.input_work_j.back() - traj.input_work_j[traj.size() - 1 - per];
    };

    const double loss_water = cycle_loss(net_w, FluidModel::water());
    const double loss_air = cycle_loss(net_a, air);
    CHECK(loss_air >= loss_water);
    CHECK(loss_water > 0.0);
}

TEST_CASE("zero-resistance network shows no hysteresis") {
    ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    ChannelNetwork net = fitted_network(a, water);
    for (auto& seg : net.segments) seg.conduit_length_m = 0.0;  // lossless limit

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 4.0;

    auto pv_area = [](const Trajectory& traj) {
        // loop over the last full period in the source plane
        const std::size_t start = traj.size() / 2;
        std::vector<double> p, v;
        for (std::size_t i = start; i < traj.size(); ++i) {
            p.push_back(traj.source_pressure_pa[i]);
            v.push_back(traj.total_volume_m3(i));
        }
        return std::abs(loop_area(p, v));
    };

    SUBCASE("displacement drive") {
        const Trajectory traj =
            simulate_transient(net, a, water, volume_sine(1.5e-6, 0.5), opts);
        CHECK(pv_area(traj) < 1e-9);
        CHECK(traj.viscous_loss_j.back() == 0.0);
    }

    SUBCASE("pressure drive") {
        DriveWaveform drive;
        drive.kind = DriveKind::pressure;
        drive.shape = WaveShape::sine;
        drive.offset = 500e3;
        drive.amplitude = 100e3;
        drive.frequency_hz = 0.5;
        const Trajectory traj = simulate_transient(net, a, water, drive, opts);
        CHECK(pv_area(traj) < 1e-9);
    }

    SUBCASE("mixed zero and nonzero resistances are rejected") {
        net.segments[1].conduit_length_m = 0.1;
        CHECK_THROWS_AS(simulate_transient(net, a, water, volume_sine(1e-6, 0.5), opts),
                        std::invalid_argument);
    }
}

TEST_CASE("instability is reported with the step size") {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    ChannelNetwork net = fitted_network(a, water);
    // make the element so stiff relative to dt that explicit stepping blows up
    net.volume_slope_m2 = 1e-12;

    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 1.0;
    CHECK_THROWS_AS(
        simulate_transient(net, a, water, volume_sine(1e-6, 1.0), opts), IntegrationError);
}

TEST_CASE("dt coarser than duration/100 is rejected") {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(a, water);
    SimulationOptions opts;
    opts.dt_s = 0.1;
    opts.duration_s = 1.0;
    CHECK_THROWS_AS(simulate_transient(net, a, water, pressure_const(1e5), opts),
                    std::invalid_argument);
}
