#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffms/core_model.hpp"
#include "ffms/estimation.hpp"
#include "ffms/garment.hpp"
#include "ffms/hydraulics.hpp"
#include "ffms/optimizer.hpp"

namespace ffms {

struct FitConfig {
    enum class Kind { modulus, volume_slope };
    Kind kind = Kind::modulus;
    std::string input_csv;
    double strain_window_lo = 0.0;
    double strain_window_hi = 1.0;
    int channel_count = 1;
};

struct DesignConfig {
    DesignRequirements requirements;
    Catalog catalog;
    SolveOptions options;
};

struct GarmentConfig {
    LimbProfile limb;
    int n_segments = 0;
    double period_s = 0.0;
    int direction = 1;
    double p_low_pa = 0.0;
    double p_high_pa = 0.0;
    WaveShape shape = WaveShape::sine;
    GarmentOptions options;
};

struct SweepAxis {
    std::string pointer;  // JSON pointer into the config, e.g. /actuator/pre_strain
    std::vector<double> values;
};

struct SweepConfig {
    std::vector<SweepAxis> axes;
};

struct CompressionBench {
    double external_force_n = 0.0;
    double cylinder_radius_m = 0.0;
    double contact_area_m2 = 0.0;
};

struct CheckConfig {
    double operating_pressure_pa = 0.0;
};

/// Parsed run configuration. Every quantity key carries its SI unit in the
/// name; unknown keys are rejected with a JSON pointer to the offender.
struct RunConfig {
    ActuatorSpec actuator;
    FluidModel fluid;
    double network_volume_slope_m2 = 0.0;  // 0: geometric default
    double network_dead_volume_m3 = 0.0;
    std::optional<DriveWaveform> drive;
    std::optional<SimulationOptions> simulation;
    std::optional<FitConfig> fit;
    std::optional<DesignConfig> design;
    std::optional<GarmentConfig> garment;
    std::optional<SweepConfig> sweep;
    std::optional<CompressionBench> compression;
    std::optional<CheckConfig> check;
    std::string rules_table_path;  // empty: built-in stitch/fabric rule table
    std::uint64_t seed = 0;

    /// Network for this configuration: built from the actuator, with the
    /// configured volume slope / dead volume applied on top.
    ChannelNetwork make_network() const;

    /// Normalized JSON (defaults filled, canonical keys); reparses equal.
    std::string to_json_text() const;

    static RunConfig from_json_text(const std::string& text);  // throws ConfigError
    static RunConfig from_file(const std::string& path);
};

}  // namespace ffms
