#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffms/fabric.hpp"
#include "ffms/fluid.hpp"

namespace ffms {

/// One hollow elastic tube: geometry and material, SI units throughout.
struct TubeSpec {
    double inner_radius_m = 0.0;
    double outer_radius_m = 0.0;
    double rest_length_m = 0.0;
    double elastic_modulus_pa = 0.0;

    /// Wall cross section pi*(r_o^2 - r_i^2) carrying the elastic load.
    double tube_area_m2() const;
    /// Bore cross section pi*r_i^2 carrying the fluid pressure.
    double fluid_area_m2() const;
    /// Tube-fabric contact area 2*pi*r_o*L over the rest length.
    double tube_fabric_area_m2() const;

    void validate() const;  // throws std::invalid_argument
};

enum class Routing { series, parallel };

/// One sheet actuator: N identical tubes in a fabric assembly.
///
/// The area overrides exist because measured cross sections of real tube
/// stock do not always match the nominal radii; regression configs carry the
/// measured values while the default derivation stays purely geometric.
struct ActuatorSpec {
    TubeSpec tube;
    int tube_count = 1;        // N
    double pre_strain = 0.0;   // true strain at the working pre-tension, >= 0
    FabricAssembly assembly;
    Routing routing = Routing::series;
    double effective_thickness_m = 0.0;   // h, sheet thickness
    double sheet_cross_section_m2 = 0.0;  // A_M, sheet cross section normal to the tube axis
    double friction_coefficient = 0.0;    // zeta; 0 = tube-fabric friction neglected
    std::optional<double> fluid_area_override_m2;
    std::optional<double> tube_area_override_m2;

    double fluid_area_m2() const;  // override if present, else geometric
    double tube_area_m2() const;

    void validate() const;
};

/// Instantaneous operating state of an actuator.
struct OperatingPoint {
    double pressure_pa = 0.0;    // gauge
    double true_strain = 0.0;
    double flow_rate_m3s = 0.0;  // signed; positive = into the actuator

    void validate() const;
};

// Strain range over which the linear-elastic modulus fit is trusted.
inline constexpr double kStrainValidMin = 0.0;
inline constexpr double kStrainValidMax = 1.0;

/// True (logarithmic) strain ln(length/rest_length).
/// Throws std::domain_error for non-positive lengths.
double true_strain(double length_m, double rest_length_m);

/// Net axial elastic force of the stretched tubes: N*E*eps*A_tube.
double elastic_force_n(const ActuatorSpec& actuator, double strain);

/// Net axial force produced by the fluid pressure: N*p*A_fluid.
double fluid_force_n(const ActuatorSpec& actuator, double pressure_pa);

/// Quasi-static external force N*(E*eps*A_tube - p*A_fluid). Affine in p;
/// negative values are the hydrostat regime (pressure-driven elongation).
double external_force_n(const ActuatorSpec& actuator, double strain, double pressure_pa);

/// Pressure at which the external force crosses zero: E*eps*A_tube/A_fluid.
/// Invariant under uniform geometric scaling of the tube.
double max_pressure_pa(const ActuatorSpec& actuator, double strain);

enum class HydrostatForm {
    exponent_over_modulus,  // delta_L = L0*(exp(p/E) - 1)
    area_corrected,         // exponent p*A_fluid/(E*A_tube), the F_ext=0 root
};

/// Free elongation of an unloaded tube in hydrostat mode at pressure p.
/// The two forms agree only when A_fluid == A_tube; the first is the default.
double hydrostat_elongation_m(const TubeSpec& tube, double pressure_pa,
                              HydrostatForm form = HydrostatForm::exponent_over_modulus);

/// Compressive pressure exerted on a rigid cylinder of radius r_c by a band
/// wrapped nose-to-tail and pulling with force F_ext: p_c = h*F_ext/(r_c*A_M).
/// Valid for r_c >> h; see compression_validity_warning.
double compression_pressure_pa(double external_force_n, const ActuatorSpec& actuator,
                               double cylinder_radius_m);

/// Hydrodynamic drag of fully developed laminar flow in one tube, acting
/// against the flow: F = -8*(mu*rho)*L*Q/r_i^2 (wall shear rate 4Q/(pi r_i^3)
/// over the wetted area 2*pi*r_i*L). Odd in Q; zero at Q = 0.
double viscous_drag_n(const TubeSpec& tube, const FluidModel& fluid, double flow_rate_m3s);

/// Dry-friction force magnitude at the tube-fabric interface:
/// N*zeta*p*2*pi*r_o*L. Zero at the default zeta = 0.
double dry_friction_n(const ActuatorSpec& actuator, double pressure_pa);

/// Quasi-static force balance with dissipation:
///   F = F_el - F_fluid - motion_sign*(|F_d,hyd| + F_d,dry).
/// The fabric's own axial force is taken as zero (wrinkled or easily
/// stretched fabric). motion_sign is +1 while extending, -1 while
/// contracting, 0 at rest; dissipation opposes the motion.
double net_force_n(const ActuatorSpec& actuator, const FluidModel& fluid, double strain,
                   double pressure_pa, double flow_rate_m3s, int motion_sign);

/// Warning when a strain lies outside the modulus-fit range [0, 1]; the
/// model still evaluates, the linear-elastic assumption is just untested.
std::optional<std::string> strain_validity_warning(double strain);

/// Warning when the thin-band assumption r_c >> h behind the compression
/// formula is marginal (r_c < 5h).
std::optional<std::string> compression_validity_warning(double cylinder_radius_m,
                                                        double effective_thickness_m);

}  // namespace ffms
