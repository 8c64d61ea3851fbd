#pragma once

#include <string>
#include <vector>

namespace ffms {

enum class FabricStretch { non_stretch, two_way, four_way };
enum class StitchPattern { side, cross };
enum class StitchStyle { straight, zigzag };

/// Fabric + stitching configuration of one sheet assembly.
///
/// The stitch pattern forms the conduits that radially constrain the tubes;
/// the fabric stretch class and wrinkling state determine how much axial
/// travel the sheet can accommodate.
struct FabricAssembly {
    FabricStretch fabric = FabricStretch::non_stretch;
    StitchPattern stitch_pattern = StitchPattern::side;
    StitchStyle stitch_style = StitchStyle::straight;
    bool wrinkled = true;
    double thread_strength_n_per_m = 2000.0;  // rated stitch line load
    double conduit_width_m = 0.0;
    double stitch_spacing_m = 0.0;
    double fabric_thread_count = 300.0;  // weave density metadata

    void validate() const;  // throws std::invalid_argument
};

enum class AxialStretch { none, low, high };
enum class RadialRisk { low, high };

struct AssemblyClassification {
    AxialStretch axial_stretch = AxialStretch::none;
    RadialRisk radial_risk = RadialRisk::low;
    bool valid = false;
    std::string notes;
};

/// Stitch/fabric/wrinkling compatibility table. One entry per combination of
/// stitch pattern (2) x fabric class (3) x wrinkling state (2). The table is
/// data, not code: it can be serialized to JSON, audited, edited, and loaded
/// back without rebuilding.
struct RuleTable {
    struct Entry {
        StitchPattern stitch;
        FabricStretch fabric;
        bool wrinkled;
        AxialStretch axial;
        RadialRisk radial;
        bool valid;
        bool requires_zigzag;  // side stitches on stretch fabric must be zigzag
        std::string notes;
    };

    int version = 1;
    std::vector<Entry> entries;

    static const RuleTable& builtin();
    const Entry& lookup(StitchPattern stitch, FabricStretch fabric, bool wrinkled) const;
};

std::string rule_table_to_json(const RuleTable& table);
RuleTable rule_table_from_json(const std::string& text);

/// Classify an assembly against the rule table. Total: every combination has
/// a verdict. Side stitches on stretch fabric additionally require zigzag
/// style; straight stitching there invalidates the assembly.
AssemblyClassification classify_assembly(const FabricAssembly& assembly);
AssemblyClassification classify_assembly(const FabricAssembly& assembly, const RuleTable& table);

/// Line load carried by the conduit stitching at fluid pressure p, for a tube
/// of outer radius r_o. Thin-wall reading: load per unit stitch length = p*r_o.
double stitch_line_load_n_per_m(double pressure_pa, double outer_radius_m);

// enum <-> string helpers shared by JSON config and reports
std::string to_string(FabricStretch f);
std::string to_string(StitchPattern p);
std::string to_string(StitchStyle s);
std::string to_string(AxialStretch a);
std::string to_string(RadialRisk r);
FabricStretch fabric_stretch_from_string(const std::string& s);
StitchPattern stitch_pattern_from_string(const std::string& s);
StitchStyle stitch_style_from_string(const std::string& s);

}  // namespace ffms
