#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffms/core_model.hpp"
#include "ffms/fabric.hpp"

namespace ffms {

/// Performance envelope a design must meet.
struct DesignRequirements {
    double min_force_range_n = 0.0;
    double min_stroke_m = 0.0;
    double pressure_budget_pa = 0.0;
    double max_sheet_width_m = 0.0;
    double max_thickness_m = 0.0;
    double strain_window_min = 0.0;  // working true-strain window, within [0, 1]
    double strain_window_max = 1.0;

    void validate() const;
};

/// One commercially available tube option. Measured-area overrides travel
/// with the catalog entry so calibrated stock keeps its measured behavior.
struct CatalogTube {
    TubeSpec tube;
    double material_density_kgm3 = 1100.0;  // latex default
    std::optional<double> fluid_area_override_m2;
    std::optional<double> tube_area_override_m2;
    std::string name;
};

struct Catalog {
    std::vector<CatalogTube> tubes;
    std::vector<FabricAssembly> assemblies;

    void validate() const;  // both lists nonempty
};

struct Violation {
    std::string constraint;
    double actual = 0.0;
    double limit = 0.0;
};

struct Feasibility {
    bool feasible = false;
    std::vector<Violation> violations;

    /// Sum of normalized constraint excesses; 0 iff feasible.
    double total_violation() const;
};

/// Check a concrete design against requirements: peak pressure within budget,
/// force range N*A_fluid*budget, stroke from the strain window, sheet width,
/// thickness, and a clean failure screen at the budget pressure.
Feasibility check_feasible(const ActuatorSpec& design, const DesignRequirements& req);

enum class DesignObjective { min_mass, min_pressure, min_width };

struct RankedDesign {
    ActuatorSpec spec;
    int tube_index = 0;
    int assembly_index = 0;
    int tube_count = 0;
    double objective_value = 0.0;
    double mass_kg = 0.0;          // tube material + fluid at rest fill; fabric excluded
    double max_pressure_pa = 0.0;
    double sheet_width_m = 0.0;
};

struct NearestMiss {
    ActuatorSpec spec;
    int tube_index = 0;
    int assembly_index = 0;
    int tube_count = 0;
    Feasibility feasibility;
};

struct DesignSearch {
    std::vector<RankedDesign> designs;       // ranked, at most top_k
    std::optional<NearestMiss> nearest_miss; // populated when no design is feasible
    long long candidates_evaluated = 0;
};

struct SolveOptions {
    DesignObjective objective = DesignObjective::min_mass;
    int top_k = 10;
    int max_tube_count = 64;
    double fluid_density_kgm3 = 1000.0;  // water at rest fill, for the mass objective
};

/// Candidate construction rule shared by the solver and any oracle:
/// pre-strain at the window top, series routing, thickness 3*r_o, sheet width
/// N*conduit_width.
ActuatorSpec make_candidate(const CatalogTube& tube, const FabricAssembly& assembly,
                            int tube_count, const DesignRequirements& req);

double design_mass_kg(const CatalogTube& tube, int tube_count, double fluid_density_kgm3);

/// Exhaustive search over catalog x N in [1, max_tube_count], filtered by
/// check_feasible and ranked by the objective with the deterministic
/// tie-break (objective, N, r_o, r_i, L_0, tube index, assembly index).
DesignSearch solve_design(const DesignRequirements& req, const Catalog& catalog,
                          const SolveOptions& options = {});

std::string to_string(DesignObjective objective);
DesignObjective design_objective_from_string(const std::string& s);

}  // namespace ffms
