#include "ffms/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "ffms/design_rules.hpp"

namespace ffms {

void DesignRequirements::validate() const {
    if (!(min_force_range_n > 0.0) || !(min_stroke_m > 0.0) || !(pressure_budget_pa > 0.0) ||
        !(max_sheet_width_m > 0.0) || !(max_thickness_m > 0.0))
        throw std::invalid_argument("DesignRequirements: all limits must be > 0");
    if (strain_window_min < 0.0 || strain_window_max > 1.0 ||
        !(strain_window_max > strain_window_min))
        throw std::invalid_argument(
            "DesignRequirements: strain window must be a nonempty subrange of [0, 1]");
}

void Catalog::validate() const {
    if (tubes.empty() || assemblies.empty())
        throw std::invalid_argument("Catalog: needs at least one tube and one assembly");
    for (const auto& t : tubes) t.tube.validate();
    for (const auto& a : assemblies) a.validate();
}

double Feasibility::total_violation() const {
    double total = 0.0;
    for (const auto& v : violations) {
        if (v.limit != 0.0)
            total += std::abs(v.actual - v.limit) / std::abs(v.limit);
        else
            total += 1.0;
    }
    return total;
}

Feasibility check_feasible(const ActuatorSpec& design, const DesignRequirements& req) {
    req.validate();
    design.validate();

    Feasibility result;
    auto fail = [&result](const std::string& constraint, double actual, double limit) {
        result.violations.push_back(Violation{constraint, actual, limit});
    };

    const double p_max = max_pressure_pa(design, design.pre_strain);
    if (p_max > req.pressure_budget_pa)
        fail("max_pressure_pa", p_max, req.pressure_budget_pa);

    const double force_range =
        design.tube_count * design.fluid_area_m2() * req.pressure_budget_pa;
    if (force_range < req.min_force_range_n)
        fail("force_range_n", force_range, req.min_force_range_n);

    const double stroke = design.tube.rest_length_m *
                          (std::exp(req.strain_window_max) - std::exp(req.strain_window_min));
    if (stroke < req.min_stroke_m) fail("stroke_m", stroke, req.min_stroke_m);

    const double width = design.tube_count * design.assembly.conduit_width_m;
    if (width > req.max_sheet_width_m) fail("sheet_width_m", width, req.max_sheet_width_m);

    if (design.effective_thickness_m > req.max_thickness_m)
        fail("thickness_m", design.effective_thickness_m, req.max_thickness_m);

    const FailureReport failures = check_failures(design, req.pressure_budget_pa);
    for (const auto& flag : failures.flagged())
        fail("failure:" + to_string(flag.mode), flag.margin, 1.0);

    result.feasible = result.violations.empty();
    return result;
}

ActuatorSpec make_candidate(const CatalogTube& tube, const FabricAssembly& assembly,
                            int tube_count, const DesignRequirements& req) {
    ActuatorSpec spec;
    spec.tube = tube.tube;
    spec.tube_count = tube_count;
    spec.pre_strain = req.strain_window_max;
    spec.assembly = assembly;
    spec.routing = Routing::series;
    // Sheet build rule: thickness ~ tube OD plus fabric allowance, width one
    // conduit per tube.
    spec.effective_thickness_m = 3.0 * tube.tube.outer_radius_m;
    spec.sheet_cross_section_m2 =
        tube_count * assembly.conduit_width_m * spec.effective_thickness_m;
    spec.friction_coefficient = 0.0;
    spec.fluid_area_override_m2 = tube.fluid_area_override_m2;
    spec.tube_area_override_m2 = tube.tube_area_override_m2;
    return spec;
}

double design_mass_kg(const CatalogTube& tube, int tube_count, double fluid_density_kgm3) {
    // Physical material volumes from the geometry; the calibration overrides
    // describe force behavior, not mass.
    const double wall = tube.tube.tube_area_m2() * tube.tube.rest_length_m;
    const double bore = tube.tube.fluid_area_m2() * tube.tube.rest_length_m;
    return tube_count * (wall * tube.material_density_kgm3 + bore * fluid_density_kgm3);
}

namespace {

double objective_value(DesignObjective objective, const RankedDesign& d) {
    switch (objective) {
        case DesignObjective::min_mass: return d.mass_kg;
        case DesignObjective::min_pressure: return d.max_pressure_pa;
        case DesignObjective::min_width: return d.sheet_width_m;
    }
    return d.mass_kg;
}

bool ranked_less(const RankedDesign& a, const RankedDesign& b) {
    return std::tuple(a.objective_value, a.tube_count, a.spec.tube.outer_radius_m,
                      a.spec.tube.inner_radius_m, a.spec.tube.rest_length_m, a.tube_index,
                      a.assembly_index) <
           std::tuple(b.objective_value, b.tube_count, b.spec.tube.outer_radius_m,
                      b.spec.tube.inner_radius_m, b.spec.tube.rest_length_m, b.tube_index,
                      b.assembly_index);
}

}  // namespace

DesignSearch solve_design(const DesignRequirements& req, const Catalog& catalog,
                          const SolveOptions& options) {
    req.validate();
    catalog.validate();
    if (options.top_k < 1 || options.max_tube_count < 1)
        throw std::invalid_argument("solve_design: top_k and max_tube_count must be >= 1");

    DesignSearch search;
    double best_miss = std::numeric_limits<double>::infinity();

    for (std::size_t ti = 0; ti < catalog.tubes.size(); ++ti) {
        for (std::size_t ai = 0; ai < catalog.assemblies.size(); ++ai) {
            for (int n = 1; n <= options.max_tube_count; ++n) {
                ++search.candidates_evaluated;
                ActuatorSpec spec =
                    make_candidate(catalog.tubes[ti], catalog.assemblies[ai], n, req);
                const Feasibility feas = check_feasible(spec, req);
                if (feas.feasible) {
                    RankedDesign d;
                    d.spec = spec;
                    d.tube_index = static_cast<int>(ti);
                    d.assembly_index = static_cast<int>(ai);
                    d.tube_count = n;
                    d.mass_kg =
                        design_mass_kg(catalog.tubes[ti], n, options.fluid_density_kgm3);
                    d.max_pressure_pa = max_pressure_pa(spec, spec.pre_strain);
                    d.sheet_width_m = n * catalog.assemblies[ai].conduit_width_m;
                    d.objective_value = objective_value(options.objective, d);
                    search.designs.push_back(std::move(d));
                } else {
                    const double miss = feas.total_violation();
                    if (miss < best_miss) {
                        best_miss = miss;
                        NearestMiss nm;
                        nm.spec = spec;
                        nm.tube_index = static_cast<int>(ti);
                        nm.assembly_index = static_cast<int>(ai);
                        nm.tube_count = n;
                        nm.feasibility = feas;
                        search.nearest_miss = std::move(nm);
                    }
                }
            }
        }
    }

    std::sort(search.designs.begin(), search.designs.end(), ranked_less);
    if (search.designs.size() > static_cast<std::size_t>(options.top_k))
        search.designs.resize(static_cast<std::size_t>(options.top_k));
    if (!search.designs.empty()) search.nearest_miss.reset();
    return search;
}

std::string to_string(DesignObjective objective) {
    switch (objective) {
        case DesignObjective::min_mass: return "min_mass";
        case DesignObjective::min_pressure: return "min_pressure";
        case DesignObjective::min_width: return "min_width";
    }
    return "?";
}

DesignObjective design_objective_from_string(const std::string& s) {
    if (s == "min_mass") return DesignObjective::min_mass;
    if (s == "min_pressure") return DesignObjective::min_pressure;
    if (s == "min_width") return DesignObjective::min_width;
    throw std::invalid_argument("unknown design objective: " + s);
}

}  // namespace ffms
