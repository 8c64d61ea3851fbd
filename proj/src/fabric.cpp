#include "ffms/fabric.hpp"

#include <json.hpp>
#include <stdexcept>

namespace ffms {

using nlohmann::json;

void FabricAssembly::validate() const {
    if (!(thread_strength_n_per_m > 0.0))
        throw std::invalid_argument("FabricAssembly: thread_strength must be > 0");
    if (!(conduit_width_m > 0.0))
        throw std::invalid_argument("FabricAssembly: conduit_width must be > 0");
    if (!(stitch_spacing_m > 0.0))
        throw std::invalid_argument("FabricAssembly: stitch_spacing must be > 0");
}

namespace {

RuleTable make_builtin() {
    using E = RuleTable::Entry;
    constexpr auto side = StitchPattern::side;
    constexpr auto cross = StitchPattern::cross;
    constexpr auto ns = FabricStretch::non_stretch;
    constexpr auto tw = FabricStretch::two_way;
    constexpr auto fw = FabricStretch::four_way;
    constexpr auto none = AxialStretch::none;
    constexpr auto low = AxialStretch::low;
    constexpr auto high = AxialStretch::high;
    constexpr auto rlow = RadialRisk::low;
    constexpr auto rhigh = RadialRisk::high;

    RuleTable t;
    t.version = 1;
    t.entries = {
        // side stitches
        E{side, ns, true, high, rlow, true, false,
          "wrinkling sets the stroke; straight stitching appropriate (default build)"},
        E{side, ns, false, none, rlow, false, false,
          "non-stretch fabric without wrinkling cannot extend axially"},
        E{side, tw, true, high, rlow, true, true,
          "stretch fabric plus wrinkling maximizes axial travel"},
        E{side, tw, false, high, rlow, true, true,
          "fabric elasticity alone carries the axial travel"},
        E{side, fw, true, high, rhigh, false, true,
          "side stitches cannot radially constrain four-way fabric; tube balloons"},
        E{side, fw, false, high, rhigh, false, true,
          "side stitches cannot radially constrain four-way fabric; tube balloons"},
        // cross stitches
        E{cross, ns, true, low, rlow, true, false,
          "cross stitches limit how much wrinkling can travel"},
        E{cross, ns, false, none, rlow, false, false,
          "non-stretch fabric without wrinkling cannot extend axially"},
        E{cross, tw, true, low, rlow, true, false,
          "cross constraint throttles the axial travel"},
        E{cross, tw, false, low, rlow, true, false,
          "cross constraint throttles the axial travel"},
        E{cross, fw, true, low, rlow, true, false,
          "preferred pairing for four-way fabric; cross stitches suppress ballooning"},
        E{cross, fw, false, low, rlow, true, false,
          "preferred pairing for four-way fabric; cross stitches suppress ballooning"},
    };
    return t;
}

}  // namespace

const RuleTable& RuleTable::builtin() {
    static const RuleTable table = make_builtin();
    return table;
}

const RuleTable::Entry& RuleTable::lookup(StitchPattern stitch, FabricStretch fabric,
                                          bool wrinkled) const {
    for (const Entry& e : entries) {
        if (e.stitch == stitch && e.fabric == fabric && e.wrinkled == wrinkled) return e;
    }
    throw std::invalid_argument("RuleTable: no entry for combination (table incomplete)");
}

AssemblyClassification classify_assembly(const FabricAssembly& a) {
    return classify_assembly(a, RuleTable::builtin());
}

AssemblyClassification classify_assembly(const FabricAssembly& a, const RuleTable& table) {
    const RuleTable::Entry& e = table.lookup(a.stitch_pattern, a.fabric, a.wrinkled);
    AssemblyClassification c;
    c.axial_stretch = e.axial;
    c.radial_risk = e.radial;
    c.valid = e.valid;
    c.notes = e.notes;
    if (e.requires_zigzag && a.stitch_style == StitchStyle::straight) {
        c.valid = false;
        c.notes += "; straight side stitching destroys the fabric elasticity, use zigzag";
    }
    return c;
}

double stitch_line_load_n_per_m(double pressure_pa, double outer_radius_m) {
    if (pressure_pa < 0.0) throw std::domain_error("stitch_line_load: pressure must be >= 0");
    return pressure_pa * outer_radius_m;
}

std::string to_string(FabricStretch f) {
    switch (f) {
        case FabricStretch::non_stretch: return "non_stretch";
        case FabricStretch::two_way: return "two_way";
        case FabricStretch::four_way: return "four_way";
    }
    return "?";
}

std::string to_string(StitchPattern p) {
    return p == StitchPattern::side ? "side" : "cross";
}

std::string to_string(StitchStyle s) {
    return s == StitchStyle::straight ? "straight" : "zigzag";
}

std::string to_string(AxialStretch a) {
    switch (a) {
        case AxialStretch::none: return "none";
        case AxialStretch::low: return "low";
        case AxialStretch::high: return "high";
    }
    return "?";
}

std::string to_string(RadialRisk r) {
    return r == RadialRisk::low ? "low" : "high";
}

FabricStretch fabric_stretch_from_string(const std::string& s) {
    if (s == "non_stretch") return FabricStretch::non_stretch;
    if (s == "two_way") return FabricStretch::two_way;
    if (s == "four_way") return FabricStretch::four_way;
    throw std::invalid_argument("unknown fabric stretch class: " + s);
}

StitchPattern stitch_pattern_from_string(const std::string& s) {
    if (s == "side") return StitchPattern::side;
    if (s == "cross") return StitchPattern::cross;
    throw std::invalid_argument("unknown stitch pattern: " + s);
}

StitchStyle stitch_style_from_string(const std::string& s) {
    if (s == "straight") return StitchStyle::straight;
    if (s == "zigzag") return StitchStyle::zigzag;
    throw std::invalid_argument("unknown stitch style: " + s);
}

std::string rule_table_to_json(const RuleTable& table) {
    json entries = json::array();
    for (const auto& e : table.entries) {
        entries.push_back({
            {"stitch", to_string(e.stitch)},
            {"fabric", to_string(e.fabric)},
            {"wrinkled", e.wrinkled},
            {"axial_stretch", to_string(e.axial)},
            {"radial_risk", to_string(e.radial)},
            {"valid", e.valid},
            {"requires_zigzag", e.requires_zigzag},
            {"notes", e.notes},
        });
    }
    json j = {{"version", table.version}, {"entries", entries}};
    return j.dump(2) + "\n";
}

RuleTable rule_table_from_json(const std::string& text) {
    json j = json::parse(text);
    RuleTable t;
    t.version = j.at("version").get<int>();
    for (const auto& je : j.at("entries")) {
        RuleTable::Entry e;
        e.stitch = stitch_pattern_from_string(je.at("stitch").get<std::string>());
        e.fabric = fabric_stretch_from_string(je.at("fabric").get<std::string>());
        e.wrinkled = je.at("wrinkled").get<bool>();
        const std::string ax = je.at("axial_stretch").get<std::string>();
        e.axial = ax == "none" ? AxialStretch::none
                               : (ax == "low" ? AxialStretch::low : AxialStretch::high);
        e.radial = je.at("radial_risk").get<std::string>() == "high" ? RadialRisk::high
                                                                     : RadialRisk::low;
        e.valid = je.at("valid").get<bool>();
        e.requires_zigzag = je.at("requires_zigzag").get<bool>();
        e.notes = je.at("notes").get<std::string>();
        t.entries.push_back(e);
    }
    if (t.entries.size() != 12)
        throw std::invalid_argument("rule table must cover all 12 combinations");
    return t;
}

}  // namespace ffms
