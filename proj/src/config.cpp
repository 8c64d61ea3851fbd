#include "ffms/config.hpp"

#include <json.hpp>
#include <set>

#include "ffms/csv.hpp"
#include "ffms/errors.hpp"

namespace ffms {

using nlohmann::json;

namespace {

// Walks one JSON object, tracking the pointer path for error messages and
// rejecting keys nobody consumed. "comment" is allowed everywhere.
class Cursor {
public:
    Cursor(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
    }

    bool has(const std::string& key) const {
        used_.insert(key);
        return node_.contains(key);
    }

    const json& at(const std::string& key) const {
        used_.insert(key);
        if (!node_.contains(key)) throw ConfigError(path_ + "/" + key, "missing required key");
        return node_.at(key);
    }

    double number(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError(path_ + "/" + key, "expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number_integer()) throw ConfigError(path_ + "/" + key, "expected an integer");
        return v.get<int>();
    }

    int integer_or(const std::string& key, int fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    bool boolean(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError(path_ + "/" + key, "expected a boolean");
        return v.get<bool>();
    }

    bool boolean_or(const std::string& key, bool fallback) const {
        return has(key) ? boolean(key) : fallback;
    }

    std::string text(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_string()) throw ConfigError(path_ + "/" + key, "expected a string");
        return v.get<std::string>();
    }

    std::string text_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? text(key) : fallback;
    }

    Cursor object(const std::string& key) const { return Cursor(at(key), path_ + "/" + key); }

    const json& array(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_array()) throw ConfigError(path_ + "/" + key, "expected an array");
        return v;
    }

    const std::string& path() const { return path_; }

    // Call after consuming everything: any leftover key is a schema error.
    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            (void)value;
            if (key == "comment") continue;
            if (!used_.count(key)) throw ConfigError(path_ + "/" + key, "unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    mutable std::set<std::string> used_;
};

template <typename Fn>
auto map_domain_errors(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

// ---- parsers --------------------------------------------------------------

TubeSpec parse_tube(const Cursor& c) {
    TubeSpec t;
    t.inner_radius_m = c.number("inner_radius_m");
    t.outer_radius_m = c.number("outer_radius_m");
    t.rest_length_m = c.number("rest_length_m");
    t.elastic_modulus_pa = c.number("elastic_modulus_pa");
    c.finish();
    map_domain_errors(c.path(), [&] { t.validate(); return 0; });
    return t;
}

FabricAssembly parse_assembly(const Cursor& c) {
    FabricAssembly a;
    map_domain_errors(c.path() + "/fabric",
                      [&] { a.fabric = fabric_stretch_from_string(c.text("fabric")); return 0; });
    map_domain_errors(c.path() + "/stitch_pattern", [&] {
        a.stitch_pattern = stitch_pattern_from_string(c.text("stitch_pattern"));
        return 0;
    });
    map_domain_errors(c.path() + "/stitch_style", [&] {
        a.stitch_style = stitch_style_from_string(c.text_or("stitch_style", "straight"));
        return 0;
    });
    a.wrinkled = c.boolean_or("wrinkled", true);
    a.thread_strength_n_per_m = c.number("thread_strength_n_per_m");
    a.conduit_width_m = c.number("conduit_width_m");
    a.stitch_spacing_m = c.number("stitch_spacing_m");
    a.fabric_thread_count = c.number_or("fabric_thread_count", 300.0);
    c.finish();
    map_domain_errors(c.path(), [&] { a.validate(); return 0; });
    return a;
}

ActuatorSpec parse_actuator(const Cursor& c) {
    ActuatorSpec a;
    a.tube = parse_tube(c.object("tube"));
    a.tube_count = c.integer("tube_count");
    a.pre_strain = c.number("pre_strain");
    a.assembly = parse_assembly(c.object("assembly"));
    const std::string routing = c.text_or("routing", "series");
    if (routing == "series")
        a.routing = Routing::series;
    else if (routing == "parallel")
        a.routing = Routing::parallel;
    else
        throw ConfigError(c.path() + "/routing", "expected 'series' or 'parallel'");
    a.effective_thickness_m = c.number("effective_thickness_m");
    a.sheet_cross_section_m2 = c.number("sheet_cross_section_m2");
    a.friction_coefficient = c.number_or("friction_coefficient", 0.0);
    if (c.has("fluid_area_override_m2")) a.fluid_area_override_m2 = c.number("fluid_area_override_m2");
    if (c.has("tube_area_override_m2")) a.tube_area_override_m2 = c.number("tube_area_override_m2");
    c.finish();
    map_domain_errors(c.path(), [&] { a.validate(); return 0; });
    return a;
}

FluidModel parse_fluid(const Cursor& c) {
    FluidModel f;
    f.kinematic_viscosity_m2s = c.number("kinematic_viscosity_m2_s");
    f.density_kgm3 = c.number("density_kg_m3");
    const std::string mode = c.text_or("mode", "incompressible");
    if (mode == "incompressible")
        f.mode = FluidMode::incompressible;
    else if (mode == "isothermal_gas")
        f.mode = FluidMode::isothermal_gas;
    else
        throw ConfigError(c.path() + "/mode", "expected 'incompressible' or 'isothermal_gas'");
    f.reference_pressure_pa = c.number_or("reference_pressure_pa", 101325.0);
    c.finish();
    map_domain_errors(c.path(), [&] { f.validate(); return 0; });
    return f;
}

WaveShape parse_shape(const Cursor& c, const std::string& key, WaveShape fallback) {
    const std::string shape = c.text_or(key, std::string());
    if (shape.empty()) return fallback;
    if (shape == "constant") return WaveShape::constant;
    if (shape == "sine") return WaveShape::sine;
    if (shape == "trapezoid") return WaveShape::trapezoid;
    throw ConfigError(c.path() + "/" + key, "expected 'constant', 'sine' or 'trapezoid'");
}

DriveWaveform parse_drive(const Cursor& c) {
    DriveWaveform d;
    const std::string kind = c.text("kind");
    if (kind == "pressure")
        d.kind = DriveKind::pressure;
    else if (kind == "displacement")
        d.kind = DriveKind::displacement;
    else
        throw ConfigError(c.path() + "/kind", "expected 'pressure' or 'displacement'");
    d.shape = parse_shape(c, "shape", WaveShape::constant);

    if (d.kind == DriveKind::pressure) {
        d.offset = c.number_or("offset_pa", 0.0);
        d.amplitude = c.number_or("amplitude_pa", 0.0);
    } else {
        d.offset = c.number_or("offset_m3", 0.0);
        if (c.has("piston_area_m2") || c.has("piston_stroke_m")) {
            // syringe spec: volume amplitude from piston geometry
            d.amplitude = c.number("piston_area_m2") * c.number("piston_stroke_m");
            if (c.has("amplitude_m3"))
                throw ConfigError(c.path() + "/amplitude_m3",
                                  "give either amplitude_m3 or the piston spec, not both");
        } else {
            d.amplitude = c.number_or("amplitude_m3", 0.0);
        }
    }
    d.frequency_hz = c.number_or("frequency_hz", 0.0);
    d.phase_s = c.number_or("phase_s", 0.0);
    d.ramp_fraction = c.number_or("ramp_fraction", 0.25);
    c.finish();
    map_domain_errors(c.path(), [&] { d.validate(); return 0; });
    return d;
}

SimulationOptions parse_simulation(const Cursor& c) {
    SimulationOptions s;
    s.dt_s = c.number_or("dt_s", 1.0e-3);
    s.duration_s = c.number("duration_s");
    const std::string mode = c.text_or("mode", "isometric_force");
    if (mode == "isometric_force")
        s.mode = SimulationMode::isometric_force;
    else if (mode == "free_displacement")
        s.mode = SimulationMode::free_displacement;
    else
        throw ConfigError(c.path() + "/mode",
                          "expected 'isometric_force' or 'free_displacement'");
    if (c.has("initial_pressure_pa")) s.initial_pressure_pa = c.number("initial_pressure_pa");
    c.finish();
    return s;
}

FitConfig parse_fit(const Cursor& c) {
    FitConfig f;
    const std::string kind = c.text("kind");
    if (kind == "modulus")
        f.kind = FitConfig::Kind::modulus;
    else if (kind == "volume_slope")
        f.kind = FitConfig::Kind::volume_slope;
    else
        throw ConfigError(c.path() + "/kind", "expected 'modulus' or 'volume_slope'");
    f.input_csv = c.text("input_csv");
    if (c.has("strain_window")) {
        const json& w = c.array("strain_window");
        if (w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ConfigError(c.path() + "/strain_window", "expected [lo, hi]");
        f.strain_window_lo = w[0].get<double>();
        f.strain_window_hi = w[1].get<double>();
    }
    f.channel_count = c.integer_or("channel_count", 1);
    c.finish();
    return f;
}

DesignConfig parse_design(const Cursor& c) {
    DesignConfig d;
    {
        Cursor rc = c.object("requirements");
        d.requirements.min_force_range_n = rc.number("min_force_range_n");
        d.requirements.min_stroke_m = rc.number("min_stroke_m");
        d.requirements.pressure_budget_pa = rc.number("pressure_budget_pa");
        d.requirements.max_sheet_width_m = rc.number("max_sheet_width_m");
        d.requirements.max_thickness_m = rc.number("max_thickness_m");
        const json& w = rc.array("strain_window");
        if (w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ConfigError(rc.path() + "/strain_window", "expected [lo, hi]");
        d.requirements.strain_window_min = w[0].get<double>();
        d.requirements.strain_window_max = w[1].get<double>();
        rc.finish();
        map_domain_errors(rc.path(), [&] { d.requirements.validate(); return 0; });
    }
    map_domain_errors(c.path() + "/objective", [&] {
        d.options.objective = design_objective_from_string(c.text_or("objective", "min_mass"));
        return 0;
    });
    d.options.top_k = c.integer_or("top_k", 10);
    d.options.max_tube_count = c.integer_or("max_tube_count", 64);
    d.options.fluid_density_kgm3 = c.number_or("fluid_density_kg_m3", 1000.0);
    {
        Cursor cc = c.object("catalog");
        const json& tubes = cc.array("tubes");
        for (std::size_t i = 0; i < tubes.size(); ++i) {
            Cursor tc(tubes[i], cc.path() + "/tubes/" + std::to_string(i));
            CatalogTube t;
            t.name = tc.text_or("name", "tube_" + std::to_string(i));
            t.tube.inner_radius_m = tc.number("inner_radius_m");
            t.tube.outer_radius_m = tc.number("outer_radius_m");
            t.tube.rest_length_m = tc.number("rest_length_m");
            t.tube.elastic_modulus_pa = tc.number("elastic_modulus_pa");
            t.material_density_kgm3 = tc.number_or("material_density_kg_m3", 1100.0);
            if (tc.has("fluid_area_override_m2"))
                t.fluid_area_override_m2 = tc.number("fluid_area_override_m2");
            if (tc.has("tube_area_override_m2"))
                t.tube_area_override_m2 = tc.number("tube_area_override_m2");
            tc.finish();
            map_domain_errors(tc.path(), [&] { t.tube.validate(); return 0; });
            d.catalog.tubes.push_back(std::move(t));
        }
        const json& assemblies = cc.array("assemblies");
        for (std::size_t i = 0; i < assemblies.size(); ++i) {
            Cursor ac(assemblies[i], cc.path() + "/assemblies/" + std::to_string(i));
            d.catalog.assemblies.push_back(parse_assembly(ac));
        }
        cc.finish();
        map_domain_errors(cc.path(), [&] { d.catalog.validate(); return 0; });
    }
    c.finish();
    return d;
}

GarmentConfig parse_garment(const Cursor& c) {
    GarmentConfig g;
    const json& limb = c.array("limb");
    for (std::size_t i = 0; i < limb.size(); ++i) {
        Cursor lc(limb[i], c.path() + "/limb/" + std::to_string(i));
        LimbProfile::Segment seg;
        seg.position_m = lc.number("position_m");
        seg.radius_m = lc.number("radius_m");
        lc.finish();
        g.limb.segments.push_back(seg);
    }
    map_domain_errors(c.path() + "/limb", [&] { g.limb.validate(); return 0; });
    {
        Cursor sc = c.object("schedule");
        g.n_segments = sc.integer("n_segments");
        g.period_s = sc.number("period_s");
        g.direction = sc.integer_or("direction", 1);
        g.p_low_pa = sc.number("p_low_pa");
        g.p_high_pa = sc.number("p_high_pa");
        g.shape = parse_shape(sc, "shape", WaveShape::sine);
        sc.finish();
    }
    g.options.duration_s = c.number_or("duration_s", 0.0);
    g.options.dt_s = c.number_or("dt_s", 1.0e-3);
    g.options.haptic_threshold_pa = c.number_or("haptic_threshold_pa", 4.0e3);
    g.options.cuff_threshold_pa = c.number_or("cuff_threshold_pa", 12.0e3);
    c.finish();
    if (g.n_segments != static_cast<int>(g.limb.segments.size()))
        throw ConfigError(c.path() + "/schedule/n_segments",
                          "schedule and limb segment counts differ");
    return g;
}

SweepConfig parse_sweep(const Cursor& c) {
    SweepConfig s;
    const json& axes = c.array("axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        Cursor ac(axes[i], c.path() + "/axes/" + std::to_string(i));
        SweepAxis axis;
        axis.pointer = ac.text("pointer");
        const json& values = ac.array("values");
        for (const auto& v : values) {
            if (!v.is_number())
                throw ConfigError(ac.path() + "/values", "expected numbers");
            axis.values.push_back(v.get<double>());
        }
        ac.finish();
        if (axis.values.empty())
            throw ConfigError(ac.path() + "/values", "axis needs at least one value");
        s.axes.push_back(std::move(axis));
    }
    if (s.axes.empty()) throw ConfigError(c.path() + "/axes", "sweep needs at least one axis");
    c.finish();
    return s;
}

// ---- serialization --------------------------------------------------------

json tube_json(const TubeSpec& t) {
    return {{"inner_radius_m", t.inner_radius_m},
            {"outer_radius_m", t.outer_radius_m},
            {"rest_length_m", t.rest_length_m},
            {"elastic_modulus_pa", t.elastic_modulus_pa}};
}

json assembly_json(const FabricAssembly& a) {
    return {{"fabric", to_string(a.fabric)},
            {"stitch_pattern", to_string(a.stitch_pattern)},
            {"stitch_style", to_string(a.stitch_style)},
            {"wrinkled", a.wrinkled},
            {"thread_strength_n_per_m", a.thread_strength_n_per_m},
            {"conduit_width_m", a.conduit_width_m},
            {"stitch_spacing_m", a.stitch_spacing_m},
            {"fabric_thread_count", a.fabric_thread_count}};
}

const char* shape_name(WaveShape s) {
    switch (s) {
        case WaveShape::constant: return "constant";
        case WaveShape::sine: return "sine";
        case WaveShape::trapezoid: return "trapezoid";
    }
    return "constant";
}

}  // namespace

ChannelNetwork RunConfig::make_network() const {
    ChannelNetwork net = build_network(actuator, fluid);
    if (network_volume_slope_m2 > 0.0) net.volume_slope_m2 = network_volume_slope_m2;
    net.dead_volume_m3 = network_dead_volume_m3;
    return net;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/", std::string("not valid JSON: ") + e.what());
    }

    Cursor c(root, "");
    RunConfig cfg;
    cfg.actuator = parse_actuator(c.object("actuator"));
    cfg.fluid = parse_fluid(c.object("fluid"));
    if (c.has("network")) {
        Cursor nc = c.object("network");
        cfg.network_volume_slope_m2 = nc.number_or("volume_slope_m2", 0.0);
        cfg.network_dead_volume_m3 = nc.number_or("dead_volume_m3", 0.0);
        nc.finish();
    }
    if (c.has("drive")) cfg.drive = parse_drive(c.object("drive"));
    if (c.has("simulation")) cfg.simulation = parse_simulation(c.object("simulation"));
    if (c.has("fit")) cfg.fit = parse_fit(c.object("fit"));
    if (c.has("design")) cfg.design = parse_design(c.object("design"));
    if (c.has("garment")) cfg.garment = parse_garment(c.object("garment"));
    if (c.has("sweep")) cfg.sweep = parse_sweep(c.object("sweep"));
    if (c.has("compression")) {
        Cursor bc = c.object("compression");
        CompressionBench bench;
        bench.external_force_n = bc.number("external_force_n");
        bench.cylinder_radius_m = bc.number("cylinder_radius_m");
        bench.contact_area_m2 = bc.number("contact_area_m2");
        bc.finish();
        cfg.compression = bench;
    }
    if (c.has("check")) {
        Cursor kc = c.object("check");
        CheckConfig check;
        check.operating_pressure_pa = kc.number("operating_pressure_pa");
        kc.finish();
        cfg.check = check;
    }
    if (c.has("rules_table")) cfg.rules_table_path = c.text("rules_table");
    if (c.has("seed")) {
        const json& s = c.at("seed");
        if (!s.is_number_unsigned())
            throw ConfigError("/seed", "expected an unsigned integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    c.finish();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_json_text(read_text_file(path));
}

std::string RunConfig::to_json_text() const {
    json root;
    {
        json a = {{"tube", tube_json(actuator.tube)},
                  {"tube_count", actuator.tube_count},
                  {"pre_strain", actuator.pre_strain},
                  {"assembly", assembly_json(actuator.assembly)},
                  {"routing", actuator.routing == Routing::series ? "series" : "parallel"},
                  {"effective_thickness_m", actuator.effective_thickness_m},
                  {"sheet_cross_section_m2", actuator.sheet_cross_section_m2},
                  {"friction_coefficient", actuator.friction_coefficient}};
        if (actuator.fluid_area_override_m2)
            a["fluid_area_override_m2"] = *actuator.fluid_area_override_m2;
        if (actuator.tube_area_override_m2)
            a["tube_area_override_m2"] = *actuator.tube_area_override_m2;
        root["actuator"] = std::move(a);
    }
    root["fluid"] = {
        {"kinematic_viscosity_m2_s", fluid.kinematic_viscosity_m2s},
        {"density_kg_m3", fluid.density_kgm3},
        {"mode", fluid.mode == FluidMode::incompressible ? "incompressible" : "isothermal_gas"},
        {"reference_pressure_pa", fluid.reference_pressure_pa}};
    root["network"] = {{"volume_slope_m2", network_volume_slope_m2},
                       {"dead_volume_m3", network_dead_volume_m3}};
    if (drive) {
        json d = {{"kind", drive->kind == DriveKind::pressure ? "pressure" : "displacement"},
                  {"shape", shape_name(drive->shape)},
                  {"frequency_hz", drive->frequency_hz},
                  {"phase_s", drive->phase_s},
                  {"ramp_fraction", drive->ramp_fraction}};
        if (drive->kind == DriveKind::pressure) {
            d["offset_pa"] = drive->offset;
            d["amplitude_pa"] = drive->amplitude;
        } else {
            d["offset_m3"] = drive->offset;
            d["amplitude_m3"] = drive->amplitude;
        }
        root["drive"] = std::move(d);
    }
    if (simulation) {
        json s = {{"dt_s", simulation->dt_s},
                  {"duration_s", simulation->duration_s},
                  {"mode", simulation->mode == SimulationMode::isometric_force
                               ? "isometric_force"
                               : "free_displacement"}};
        if (simulation->initial_pressure_pa)
            s["initial_pressure_pa"] = *simulation->initial_pressure_pa;
        root["simulation"] = std::move(s);
    }
    if (fit) {
        root["fit"] = {
            {"kind", fit->kind == FitConfig::Kind::modulus ? "modulus" : "volume_slope"},
            {"input_csv", fit->input_csv},
            {"strain_window", json::array({fit->strain_window_lo, fit->strain_window_hi})},
            {"channel_count", fit->channel_count}};
    }
    if (design) {
        json tubes = json::array();
        for (const auto& t : design->catalog.tubes) {
            json tj = tube_json(t.tube);
            tj["name"] = t.name;
            tj["material_density_kg_m3"] = t.material_density_kgm3;
            if (t.fluid_area_override_m2) tj["fluid_area_override_m2"] = *t.fluid_area_override_m2;
            if (t.tube_area_override_m2) tj["tube_area_override_m2"] = *t.tube_area_override_m2;
            tubes.push_back(std::move(tj));
        }
        json assemblies = json::array();
        for (const auto& a : design->catalog.assemblies) assemblies.push_back(assembly_json(a));
        root["design"] = {
            {"requirements",
             {{"min_force_range_n", design->requirements.min_force_range_n},
              {"min_stroke_m", design->requirements.min_stroke_m},
              {"pressure_budget_pa", design->requirements.pressure_budget_pa},
              {"max_sheet_width_m", design->requirements.max_sheet_width_m},
              {"max_thickness_m", design->requirements.max_thickness_m},
              {"strain_window", json::array({design->requirements.strain_window_min,
                                             design->requirements.strain_window_max})}}},
            {"objective", to_string(design->options.objective)},
            {"top_k", design->options.top_k},
            {"max_tube_count", design->options.max_tube_count},
            {"fluid_density_kg_m3", design->options.fluid_density_kgm3},
            {"catalog", {{"tubes", std::move(tubes)}, {"assemblies", std::move(assemblies)}}}};
    }
    if (garment) {
        json limb = json::array();
        for (const auto& seg : garment->limb.segments)
            limb.push_back({{"position_m", seg.position_m}, {"radius_m", seg.radius_m}});
        root["garment"] = {{"limb", std::move(limb)},
                           {"schedule",
                            {{"n_segments", garment->n_segments},
                             {"period_s", garment->period_s},
                             {"direction", garment->direction},
                             {"p_low_pa", garment->p_low_pa},
                             {"p_high_pa", garment->p_high_pa},
                             {"shape", shape_name(garment->shape)}}},
                           {"duration_s", garment->options.duration_s},
                           {"dt_s", garment->options.dt_s},
                           {"haptic_threshold_pa", garment->options.haptic_threshold_pa},
                           {"cuff_threshold_pa", garment->options.cuff_threshold_pa}};
    }
    if (sweep) {
        json axes = json::array();
        for (const auto& axis : sweep->axes)
            axes.push_back({{"pointer", axis.pointer}, {"values", axis.values}});
        root["sweep"] = {{"axes", std::move(axes)}};
    }
    if (compression) {
        root["compression"] = {{"external_force_n", compression->external_force_n},
                               {"cylinder_radius_m", compression->cylinder_radius_m},
                               {"contact_area_m2", compression->contact_area_m2}};
    }
    if (check) {
        root["check"] = {{"operating_pressure_pa", check->operating_pressure_pa}};
    }
    if (!rules_table_path.empty()) root["rules_table"] = rules_table_path;
    root["seed"] = seed;
    return root.dump(2) + "\n";
}

}  // namespace ffms
