#pragma once

namespace ffms {

enum class FluidMode { incompressible, isothermal_gas };

/// Working-fluid properties. Gas mode models isothermal ideal-gas
/// compressibility referenced to `reference_pressure_pa` (absolute ambient).
struct FluidModel {
    double kinematic_viscosity_m2s = 1.0e-6;
    double density_kgm3 = 1000.0;
    FluidMode mode = FluidMode::incompressible;
    double reference_pressure_pa = 101325.0;  // absolute; used in gas mode only

    double dynamic_viscosity_pas() const { return kinematic_viscosity_m2s * density_kgm3; }

    void validate() const;  // throws std::invalid_argument

    static FluidModel water();
    static FluidModel air();
};

}  // namespace ffms
