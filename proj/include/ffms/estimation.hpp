#pragma once

#include <span>
#include <vector>

#include "ffms/fluid.hpp"
#include "ffms/hydraulics.hpp"

namespace ffms {

enum class TestKind { tensile, volume_displacement, work_cycle };

/// Imported measurement series. x/y meaning per kind:
///   tensile:             x = true strain [-],      y = stress [Pa]
///   volume_displacement: x = length change [m],    y = volume change [m^3]
///   work_cycle:          x = volume [m^3],         y = pressure [Pa]
struct TestSeries {
    TestKind kind = TestKind::tensile;
    std::vector<double> x;
    std::vector<double> y;
    double load_mass_kg = 0.0;
    double lift_speed_m_s = 0.0;
    FluidMode fluid_mode = FluidMode::incompressible;

    /// >= 3 samples; x strictly increasing for tensile and volume_displacement.
    void validate() const;
};

struct ModulusFit {
    double elastic_modulus_pa = 0.0;
    double rms_residual_pa = 0.0;
    int points_used = 0;
};

/// Least-squares slope of stress vs true strain through the origin,
/// restricted to the strain window. Throws FitError with fewer than 3
/// in-window points.
ModulusFit fit_modulus(const TestSeries& series, double strain_window_lo,
                       double strain_window_hi);

struct VolumeSlopeFit {
    double volume_slope_m2 = 0.0;  // A_eff per channel
    double dead_volume_m3 = 0.0;
    double r_squared = 0.0;
};

/// Affine least-squares fit dV = N*A_eff*dL + dead_volume.
/// Throws FitError on degenerate (constant) series.
VolumeSlopeFit fit_volume_slope(const TestSeries& series, int channel_count);

struct CycleWork {
    double extension_work_j = 0.0;   // W+, integral of p dV over dV > 0
    double withdrawal_work_j = 0.0;  // W-, signed, over dV < 0
    double input_work_j = 0.0;       // W+ + W-
    double potential_energy_j = 0.0; // U_g = m*g*h
};

inline constexpr double kStandardGravity = 9.80665;  // m/s^2

/// Fluidic work split over one closed working cycle (trapezoid rule on the
/// sample grid). Throws CycleError when the cycle does not close within 1%
/// of the state range.
CycleWork cycle_work(std::span<const double> pressure_pa, std::span<const double> volume_m3,
                     double load_mass_kg, double lift_height_m);

/// Same, on a trajectory: pressure = per-sample channel mean, volume = channel total.
CycleWork cycle_work(const Trajectory& traj, double load_mass_kg, double lift_height_m);

enum class EfficiencyFormula {
    corrected,  // R = U_g / W_in
    legacy,     // R = (U_g + |W-|) / W+; inflates R by counting recovered input work as output
};

struct Efficiency {
    double value = 0.0;
    bool erroneous_formula = false;  // set for the legacy formula
};

/// Throws std::domain_error when the required denominator is not positive.
Efficiency efficiency(const CycleWork& work, EfficiencyFormula formula);

enum class LoopPlane { pressure_volume, pressure_force, volume_force };

/// Signed shoelace area of a closed loop: integral of x dy around the polygon.
double loop_area(std::span<const double> x, std::span<const double> y);

/// Loop area of a closed trajectory in the chosen state plane
/// (pressure_volume yields the cycle input work in joules).
/// Throws CycleError when the loop does not close.
double hysteresis_area(const Trajectory& traj, LoopPlane plane);

/// Fractional decay of per-cycle peak displacement: (first - last)/first.
/// Throws std::domain_error for an empty or zero-start series.
double displacement_drift(std::span<const double> peak_displacements_m);

/// Work-cycle series from a recorded trajectory: x = total stored volume,
/// y = mean channel pressure, per sample.
TestSeries work_cycle_series(const Trajectory& traj);

enum class ReferenceCycleKind { hydraulic, pneumatic };

struct ReferenceCycleData {
    Trajectory traj;
    double load_mass_kg = 0.0;
    double lift_height_m = 0.0;
};

/// Synthetic closed work cycles for efficiency-formula regression. These are
/// constructed rectangles in the p-V plane, not measurements: the hydraulic
/// cycle is solved so that R_corrected = 0.46 and R_legacy = 0.83 exactly
/// (W+ = 1 J, W- = -37/54 J, U_g = 0.46*17/54 J); the pneumatic cycle so
/// that R_corrected = 0.25 (W+ = 1 J, W- = -0.5 J, U_g = 0.125 J).
ReferenceCycleData reference_cycle(ReferenceCycleKind kind);

}  // namespace ffms
