#include "ffms/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ffms {

namespace {
constexpr double kPi = std::numbers::pi;
}

double TubeSpec::tube_area_m2() const {
    return kPi * (outer_radius_m * outer_radius_m - inner_radius_m * inner_radius_m);
}

double TubeSpec::fluid_area_m2() const {
    return kPi * inner_radius_m * inner_radius_m;
}

double TubeSpec::tube_fabric_area_m2() const {
    return 2.0 * kPi * outer_radius_m * rest_length_m;
}

void TubeSpec::validate() const {
    if (!(inner_radius_m > 0.0))
        throw std::invalid_argument("TubeSpec: inner_radius must be > 0");
    if (!(outer_radius_m > inner_radius_m))
        throw std::invalid_argument("TubeSpec: outer_radius must exceed inner_radius");
    if (!(rest_length_m > 0.0))
        throw std::invalid_argument("TubeSpec: rest_length must be > 0");
    if (!(elastic_modulus_pa > 0.0))
        throw std::invalid_argument("TubeSpec: elastic_modulus must be > 0");
}

double ActuatorSpec::fluid_area_m2() const {
    return fluid_area_override_m2 ? *fluid_area_override_m2 : tube.fluid_area_m2();
}

double ActuatorSpec::tube_area_m2() const {
    return tube_area_override_m2 ? *tube_area_override_m2 : tube.tube_area_m2();
}

void ActuatorSpec::validate() const {
    tube.validate();
    assembly.validate();
    if (tube_count < 1) throw std::invalid_argument("ActuatorSpec: tube_count must be >= 1");
    if (pre_strain < 0.0) throw std::invalid_argument("ActuatorSpec: pre_strain must be >= 0");
    if (!(effective_thickness_m > 0.0))
        throw std::invalid_argument("ActuatorSpec: effective_thickness must be > 0");
    if (!(sheet_cross_section_m2 > 0.0))
        throw std::invalid_argument("ActuatorSpec: sheet_cross_section must be > 0");
    if (friction_coefficient < 0.0)
        throw std::invalid_argument("ActuatorSpec: friction_coefficient must be >= 0");
    if (fluid_area_override_m2 && !(*fluid_area_override_m2 > 0.0))
        throw std::invalid_argument("ActuatorSpec: fluid_area_override must be > 0");
    if (tube_area_override_m2 && !(*tube_area_override_m2 > 0.0))
        throw std::invalid_argument("ActuatorSpec: tube_area_override must be > 0");
}

void OperatingPoint::validate() const {
    if (pressure_pa < 0.0) throw std::invalid_argument("OperatingPoint: pressure must be >= 0");
    if (true_strain < -0.2)
        throw std::invalid_argument("OperatingPoint: strain below -0.2 is outside the model");
}

double true_strain(double length_m, double rest_length_m) {
    if (!(length_m > 0.0) || !(rest_length_m > 0.0))
        throw std::domain_error("true_strain: lengths must be > 0");
    return std::log(length_m / rest_length_m);
}

double elastic_force_n(const ActuatorSpec& actuator, double strain) {
    return actuator.tube_count * actuator.tube.elastic_modulus_pa * strain *
           actuator.tube_area_m2();
}

double fluid_force_n(const ActuatorSpec& actuator, double pressure_pa) {
    return actuator.tube_count * pressure_pa * actuator.fluid_area_m2();
}

double external_force_n(const ActuatorSpec& actuator, double strain, double pressure_pa) {
    return actuator.tube_count * (actuator.tube.elastic_modulus_pa * strain *
                                      actuator.tube_area_m2() -
                                  pressure_pa * actuator.fluid_area_m2());
}

double max_pressure_pa(const ActuatorSpec& actuator, double strain) {
    return actuator.tube.elastic_modulus_pa * strain * actuator.tube_area_m2() /
           actuator.fluid_area_m2();
}

double hydrostat_elongation_m(const TubeSpec& tube, double pressure_pa, HydrostatForm form) {
    if (pressure_pa < 0.0)
        throw std::domain_error("hydrostat_elongation: pressure must be >= 0");
    const double exponent =
        form == HydrostatForm::exponent_over_modulus
            ? pressure_pa / tube.elastic_modulus_pa
            : pressure_pa * tube.fluid_area_m2() /
                  (tube.elastic_modulus_pa * tube.tube_area_m2());
    return tube.rest_length_m * (std::exp(exponent) - 1.0);
}

double compression_pressure_pa(double external_force_value_n, const ActuatorSpec& actuator,
                               double cylinder_radius_m) {
    if (!(cylinder_radius_m > 0.0))
        throw std::domain_error("compression_pressure: cylinder radius must be > 0");
    return actuator.effective_thickness_m * external_force_value_n /
           (cylinder_radius_m * actuator.sheet_cross_section_m2);
}

double viscous_drag_n(const TubeSpec& tube, const FluidModel& fluid, double flow_rate_m3s) {
    // mu*rho * (4Q/(pi r_i^3)) * 2*pi*r_i*L, collapsed; force opposes the flow.
    const double r = tube.inner_radius_m;
    return -8.0 * fluid.dynamic_viscosity_pas() * tube.rest_length_m * flow_rate_m3s / (r * r);
}

double dry_friction_n(const ActuatorSpec& actuator, double pressure_pa) {
    if (pressure_pa < 0.0) throw std::domain_error("dry_friction: pressure must be >= 0");
    return actuator.tube_count * actuator.friction_coefficient * pressure_pa *
           actuator.tube.tube_fabric_area_m2();
}

double net_force_n(const ActuatorSpec& actuator, const FluidModel& fluid, double strain,
                   double pressure_pa, double flow_rate_m3s, int motion_sign) {
    if (motion_sign < -1 || motion_sign > 1)
        throw std::domain_error("net_force: motion_sign must be -1, 0 or +1");
    const double dissipation = std::abs(viscous_drag_n(actuator.tube, fluid, flow_rate_m3s)) +
                               dry_friction_n(actuator, pressure_pa);
    return external_force_n(actuator, strain, pressure_pa) - motion_sign * dissipation;
}

std::optional<std::string> strain_validity_warning(double strain) {
    if (strain < kStrainValidMin || strain > kStrainValidMax) {
        return "strain " + std::to_string(strain) +
               " outside the validated modulus-fit range [0, 1]";
    }
    return std::nullopt;
}

std::optional<std::string> compression_validity_warning(double cylinder_radius_m,
                                                        double effective_thickness_m) {
    if (cylinder_radius_m < 5.0 * effective_thickness_m) {
        return "cylinder radius " + std::to_string(cylinder_radius_m) +
               " m is less than 5x the sheet thickness; the thin-band compression "
               "formula is marginal here";
    }
    return std::nullopt;
}

}  // namespace ffms
