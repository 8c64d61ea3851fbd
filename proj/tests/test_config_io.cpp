#include <doctest.h>

#include <stdexcept>

#include "ffms/config.hpp"
#include "ffms/csv.hpp"
#include "ffms/errors.hpp"
#include "test_fixtures.hpp"

using namespace ffms;

namespace {

const char* kMinimalConfig = R"json({
  "comment": "minimal valid configuration",
  "actuator": {
    "tube": {
      "inner_radius_m": 0.8e-3,
      "outer_radius_m": 1.6e-3,
      "rest_length_m": 0.1224,
      "elastic_modulus_pa": 1.1e6
    },
    "tube_count": 3,
    "pre_strain": 0.8,
    "routing": "parallel",
    "effective_thickness_m": 4.7e-3,
    "sheet_cross_section_m2": 1.1844e-4,
    "fluid_area_override_m2": 7.7e-6,
    "tube_area_override_m2": 5.9e-6,
    "assembly": {
      "fabric": "non_stretch",
      "stitch_pattern": "side",
      "stitch_style": "straight",
      "wrinkled": true,
      "thread_strength_n_per_m": 2000.0,
      "conduit_width_m": 5.0e-3,
      "stitch_spacing_m": 1.0e-3
    }
  },
  "fluid": {
    "kinematic_viscosity_m2_s": 1.0e-6,
    "density_kg_m3": 1000.0,
    "mode": "incompressible"
  },
  "network": { "volume_slope_m2": 1.765e-5 },
  "drive": {
    "kind": "displacement",
    "shape": "sine",
    "amplitude_m3": 3.6e-6,
    "frequency_hz": 0.2
  },
  "simulation": { "dt_s": 1e-3, "duration_s": 2.0, "mode": "isometric_force" }
})json";

}  // namespace

TEST_CASE("config parses and carries the SI values through") {
    const RunConfig cfg = RunConfig::from_json_text(kMinimalConfig);
    CHECK(cfg.actuator.tube_count == 3);
    CHECK(cfg.actuator.fluid_area_m2() == doctest::Approx(7.7e-6));
    CHECK(cfg.fluid.mode == FluidMode::incompressible);
    CHECK(cfg.drive.has_value());
    CHECK(cfg.drive->amplitude == doctest::Approx(3.6e-6));
    const ChannelNetwork net = cfg.make_network();
    CHECK(net.volume_slope_m2 == doctest::Approx(1.765e-5));
    CHECK(net.channel_count() == 3);
}

TEST_CASE("dump-config output reparses equal") {
    const RunConfig cfg = RunConfig::from_json_text(kMinimalConfig);
    const std::string dumped = cfg.to_json_text();
    const RunConfig again = RunConfig::from_json_text(dumped);
    CHECK(again.to_json_text() == dumped);
}

TEST_CASE("unknown keys are rejected with a JSON pointer") {
    std::string text = kMinimalConfig;
    text.replace(text.find("\"tube_count\""), 12, "\"tube_spares\": 2, \"tube_count\"");
    try {
        (void)RunConfig::from_json_text(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/actuator/tube_spares");
    }

    // a misspelled required key reports as missing, against the right block
    std::string missing = kMinimalConfig;
    missing.replace(missing.find("\"tube_count\""), 12, "\"tube_countt\"");
    try {
        (void)RunConfig::from_json_text(missing);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/actuator/tube_count");
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
}

TEST_CASE("invalid values carry the block pointer") {
    std::string text = kMinimalConfig;
    text.replace(text.find("\"tube_count\": 3"), 15, "\"tube_count\": 0");
    try {
        (void)RunConfig::from_json_text(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/actuator");
    }
}

TEST_CASE("piston spec converts to a volume amplitude") {
    std::string text = kMinimalConfig;
    text.replace(text.find("\"amplitude_m3\": 3.6e-6"), 22,
                 "\"piston_area_m2\": 1.767e-4, \"piston_stroke_m\": 0.02");
    const RunConfig cfg = RunConfig::from_json_text(text);
    CHECK(cfg.drive->amplitude == doctest::Approx(1.767e-4 * 0.02));
}

TEST_CASE("trajectory CSV round trip") {
    const ActuatorSpec a = ffms::testing::reference_3ch();
    const FluidModel water = FluidModel::water();
    ChannelNetwork net = build_network(a, water);
    net.volume_slope_m2 = 1.765e-5;
    DriveWaveform drive;
    drive.kind = DriveKind::pressure;
    drive.shape = WaveShape::sine;
    drive.offset = 500e3;
    drive.amplitude = 100e3;
    drive.frequency_hz = 1.0;
    SimulationOptions opts;
    opts.dt_s = 1e-3;
    opts.duration_s = 1.0;
    const Trajectory traj = simulate_transient(net, a, water, drive, opts);

    const std::string csv = trajectory_to_csv(traj);
    const Trajectory back = trajectory_from_csv(csv);
    REQUIRE(back.size() == traj.size());
    REQUIRE(back.channel_count() == traj.channel_count());
    for (std::size_t k = 0; k < traj.channel_count(); ++k) {
        for (std::size_t i = 0; i < traj.size(); i += 37) {
            CHECK(back.channels[k].pressure_pa[i] == traj.channels[k].pressure_pa[i]);
            CHECK(back.channels[k].volume_m3[i] == traj.channels[k].volume_m3[i]);
            CHECK(back.channels[k].force_n[i] == traj.channels[k].force_n[i]);
        }
    }
    // identical content serializes to identical bytes
    CHECK(trajectory_to_csv(back) == csv);
}

TEST_CASE("trajectory CSV schema is enforced") {
    CHECK_THROWS_AS(trajectory_from_csv("time,p\n1,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(trajectory_from_csv("t,p_1,V_1,L_1,X_1\n1,2,3,4,5\n"),
                    std::invalid_argument);
}

TEST_CASE("test series CSV round trip with typed headers") {
    TestSeries s;
    s.kind = TestKind::volume_displacement;
    s.x = {0.0, 0.0425, 0.085};
    s.y = {0.0, 2.25e-6, 4.5e-6};
    const TestSeries back = test_series_from_csv(test_series_to_csv(s));
    CHECK(back.kind == TestKind::volume_displacement);
    REQUIRE(back.x.size() == 3);
    CHECK(back.y[2] == 4.5e-6);
    CHECK_THROWS_AS(test_series_from_csv("a,b\n1,2\n"), std::invalid_argument);
}

TEST_CASE("trajectory CSV imports as a work-cycle series") {
    Trajectory traj;
    traj.dt_s = 0.1;
    TrajectoryChannel ch;
    for (int i = 0; i < 8; ++i) {
        ch.pressure_pa.push_back(1e5 + 1e3 * i);
        ch.volume_m3.push_back(1e-6 * i);
        ch.length_m.push_back(0.1);
        ch.force_n.push_back(0.0);
        traj.time_s.push_back(0.1 * i);
    }
    traj.channels.push_back(ch);
    traj.channels.push_back(ch);  // two identical channels

    const TestSeries s = test_series_from_csv(trajectory_to_csv(traj));
    CHECK(s.kind == TestKind::work_cycle);
    REQUIRE(s.x.size() == 8);
    CHECK(s.x[3] == doctest::Approx(2 * 3e-6));     // total volume
    CHECK(s.y[3] == doctest::Approx(1.03e5));       // mean pressure
}

TEST_CASE("shortest round-trip float formatting") {
    for (double v : {0.0, 1.0, 10.0, -3.25, 0.1, 1.765e-5, 674285.7142857142,
                     1.0 / 3.0, 2.553654e-12}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(10.0) == "10");
    CHECK(format_double(0.0) == "0");
}
