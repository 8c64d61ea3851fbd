#include "ffms/report.hpp"

#include <cmath>
#include <json.hpp>

#include "ffms/csv.hpp"
#include "ffms/design_rules.hpp"
#include "ffms/estimation.hpp"
#include "ffms/garment.hpp"
#include "ffms/hydraulics.hpp"

namespace ffms {

namespace {

FabricAssembly reference_assembly() {
    FabricAssembly a;
    a.fabric = FabricStretch::non_stretch;
    a.stitch_pattern = StitchPattern::side;
    a.stitch_style = StitchStyle::straight;
    a.wrinkled = true;
    a.thread_strength_n_per_m = 2000.0;
    a.conduit_width_m = 5.0e-3;
    a.stitch_spacing_m = 1.0e-3;
    a.fabric_thread_count = 300.0;
    return a;
}

ActuatorSpec reference_3ch() {
    ActuatorSpec a;
    a.tube = TubeSpec{0.8e-3, 1.6e-3, 0.1224, 1.1e6};
    a.tube_count = 3;
    a.pre_strain = 0.8;
    a.assembly = reference_assembly();
    a.routing = Routing::parallel;
    a.effective_thickness_m = 4.7e-3;
    a.sheet_cross_section_m2 = 25.2e-3 * 4.7e-3;
    a.fluid_area_override_m2 = 7.7e-6;
    a.tube_area_override_m2 = 5.9e-6;
    return a;
}

ActuatorSpec reference_10ch() {
    ActuatorSpec a = reference_3ch();
    a.tube.rest_length_m = 0.0841;
    a.tube_count = 10;
    a.routing = Routing::series;
    a.effective_thickness_m = 4.9e-3;
    a.sheet_cross_section_m2 = 156.6e-3 * 4.9e-3;
    return a;
}

ChannelNetwork fitted_network(const ActuatorSpec& actuator, const FluidModel& fluid) {
    ChannelNetwork net = build_network(actuator, fluid);
    net.volume_slope_m2 = 1.765e-5;
    return net;
}

double loop_area_at_frequency(double frequency_hz) {
    const ActuatorSpec a = reference_3ch();
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(a, water);
    DriveWaveform drive;
    drive.kind = DriveKind::displacement;
    drive.shape = WaveShape::sine;
    drive.amplitude = 1.5e-6;
    drive.frequency_hz = frequency_hz;
    SimulationOptions opts;
    opts.dt_s = 1.0e-3;
    opts.duration_s = 2.0 / frequency_hz;
    const Trajectory traj = simulate_transient(net, a, water, drive, opts);
    const std::size_t start = traj.size() / 2;
    std::vector<double> p, f;
    for (std::size_t i = start; i < traj.size(); ++i) {
        p.push_back(traj.source_pressure_pa[i]);
        f.push_back(traj.total_force_n(i));
    }
    return std::abs(loop_area(p, f));
}

double simulated_latency(const ActuatorSpec& actuator) {
    const FluidModel water = FluidModel::water();
    const ChannelNetwork net = fitted_network(actuator, water);
    DriveWaveform drive;
    drive.kind = DriveKind::displacement;
    drive.shape = WaveShape::sine;
    drive.amplitude = 3.0e-6;
    drive.frequency_hz = 0.2;
    SimulationOptions opts;
    opts.dt_s = 1.0e-3;
    opts.duration_s = 15.0;
    return estimate_latency_s(simulate_transient(net, actuator, water, drive, opts));
}

}  // namespace

RegressionReport build_regression_report() {
    RegressionReport rep;
    auto row = [&rep](std::string id, std::string quantity, double model,
                      std::optional<double> reference, std::string units, std::string note) {
        rep.rows.push_back(RegressionRow{std::move(id), std::move(quantity), model, reference,
                                         std::move(units), std::move(note)});
    };
    auto observe = [&rep](bool ok, const std::string& text) {
        rep.observations.push_back(std::string(ok ? "pass: " : "FAIL: ") + text);
    };

    const ActuatorSpec a3 = reference_3ch();
    const ActuatorSpec a10 = reference_10ch();

    // Axial force range of the 3-channel prototype over 200-750 kPa.
    {
        const double drop = external_force_n(a3, 0.8, 200e3) - external_force_n(a3, 0.8, 750e3);
        row("force_range_3ch", "force drop over 200-750 kPa, 3 channels", drop, 13.0, "N",
            "bench-measured range on the 3-channel prototype was 13 N");
        observe(std::abs(drop / 13.0 - 1.0) <= 0.05,
                "3-channel force range within 5% of the measured 13 N");
    }

    // Zero-force pressure vs the bench pre-pressurization level.
    {
        const double p_max = max_pressure_pa(a3, 0.8);
        row("zero_force_pressure", "pressure at zero external force", p_max, 650e3, "Pa",
            "prototype was pre-pressurized to ~650 kPa; deviation reported, not asserted");
        observe(std::abs(p_max / 650e3 - 1.0) <= 0.10,
                "zero-force pressure within 10% of the 650 kPa pre-pressurization");
    }

    // Compression chain on the bench cylinder.
    {
        const double p_c = compression_pressure_pa(13.0, a3, 11.6e-3);
        const double f_c = p_c * 209e-6;
        row("compression_pressure", "band compression at 13 N pull, r_c = 11.6 mm", p_c,
            44.5e3, "Pa", "cylinder radius back-solved from the bench geometry");
        row("compression_force", "compression force over the 209 mm^2 patch", f_c, 9.30, "N",
            "bench error against the same chain was under 5%");
        observe(std::abs(p_c / 44.5e3 - 1.0) <= 0.01, "compression pressure within 1%");
        observe(std::abs(f_c / 9.30 - 1.0) <= 0.01, "compression force within 1%");
    }

    // 10-channel prototype: the model under-predicts the measured range.
    {
        const double drop =
            external_force_n(a10, 0.8, 180e3) - external_force_n(a10, 0.8, 620e3);
        row("force_range_10ch", "force drop over 180-620 kPa, 10 channels", drop, 50.0, "N",
            "model gap: bench measured ~50 N total and ~5 N per tube, the linear model "
            "predicts 33.88 N and 3.39 N per tube; agreement is qualitative only and the "
            "gap is recorded, not hidden");
        row("force_per_tube_10ch", "per-tube force share, 10 channels", drop / 10.0, 5.0, "N",
            "same model gap as force_range_10ch");
        observe(std::abs(drop - 33.88) <= 0.01, "10-channel model value equals 33.88 N");
    }

    // Efficiency formula regression on the bundled reference cycles.
    {
        const ReferenceCycleData hyd = reference_cycle(ReferenceCycleKind::hydraulic);
        const CycleWork hw = cycle_work(hyd.traj, hyd.load_mass_kg, hyd.lift_height_m);
        const double r_hyd = efficiency(hw, EfficiencyFormula::corrected).value;
        const double r_legacy = efficiency(hw, EfficiencyFormula::legacy).value;
        const ReferenceCycleData pne = reference_cycle(ReferenceCycleKind::pneumatic);
        const CycleWork pw = cycle_work(pne.traj, pne.load_mass_kg, pne.lift_height_m);
        const double r_pne = efficiency(pw, EfficiencyFormula::corrected).value;
        row("efficiency_hydraulic", "corrected efficiency, hydraulic reference cycle", r_hyd,
            0.46, "-", "synthetic regression cycle, not measured data");
        row("efficiency_pneumatic", "corrected efficiency, pneumatic reference cycle", r_pne,
            0.25, "-", "synthetic regression cycle, not measured data");
        row("efficiency_legacy", "legacy formula on the hydraulic cycle", r_legacy, 0.83, "-",
            "flagged erroneous: counts recovered input work as output");
        observe(std::abs(r_hyd - 0.46) <= 0.005 && std::abs(r_pne - 0.25) <= 0.005 &&
                    std::abs(r_legacy - 0.83) <= 0.005,
                "efficiency values within 0.005");
    }

    // Hydrostat identity.
    {
        const double rel = std::abs(hydrostat_elongation_m(a3.tube, a3.tube.elastic_modulus_pa) /
                                        (a3.tube.rest_length_m * (std::exp(1.0) - 1.0)) -
                                    1.0);
        row("hydrostat_identity", "relative residual of dL(p=E) = (e-1)*L0", rel, 0.0, "-",
            "closed-form identity check");
        observe(rel <= 1e-12, "hydrostat identity holds to 1e-12");
    }

    // Volume-length slope fitted from the displacement test endpoints.
    {
        TestSeries s;
        s.kind = TestKind::volume_displacement;
        s.x = {0.0, 0.0425, 0.085};
        s.y = {0.0, 2.25e-6, 4.5e-6};
        const VolumeSlopeFit fit = fit_volume_slope(s, 3);
        row("volume_slope_fit", "per-channel volume-length slope from the bench endpoints",
            fit.volume_slope_m2, 1.765e-5, "m^2",
            "4.5 mL drives a 122.4 -> 207.4 mm extension across 3 channels");
        observe(std::abs(fit.volume_slope_m2 / 1.765e-5 - 1.0) <= 0.005,
                "fitted volume slope within 0.5%");

        const ChannelNetwork net = fitted_network(a3, FluidModel::water());
        const double back = volume_to_length(net, length_to_volume(net, 0.085));
        row("kinematics_roundtrip", "volume/length map round-trip residual",
            std::abs(back - 0.085) / 0.085, 0.0, "-", "");
        observe(std::abs(back - 0.085) / 0.085 <= 1e-12, "kinematic round trip to 1e-12");
    }

    // Transient behavior: loop-area ordering and response latency.
    {
        const double a_fast = loop_area_at_frequency(0.5);
        const double a_mid = loop_area_at_frequency(0.1);
        const double a_slow = loop_area_at_frequency(0.02);
        row("loop_area_0p5hz", "pressure-force loop area at 0.5 Hz", a_fast, std::nullopt,
            "Pa*N", "");
        row("loop_area_0p1hz", "pressure-force loop area at 0.1 Hz", a_mid, std::nullopt,
            "Pa*N", "");
        row("loop_area_0p02hz", "pressure-force loop area at 0.02 Hz", a_slow, std::nullopt,
            "Pa*N", "");
        observe(a_fast > a_mid && a_mid > a_slow,
                "loop area shrinks monotonically as the drive slows");

        const double lag_series = simulated_latency(a10);
        const double lag_parallel = simulated_latency(a3);
        row("latency_series_10ch", "force lag behind port pressure, 10 channels in series",
            lag_series, 0.100, "s", "bench estimate on the series prototype was ~100 ms");
        row("latency_parallel_3ch", "force lag behind port pressure, 3 parallel channels",
            lag_parallel, std::nullopt, "s", "");
        observe(lag_series >= 0.05 && lag_series <= 0.2,
                "series latency inside the 50-200 ms band");
        observe(lag_series > lag_parallel, "series latency exceeds parallel latency");
    }

    // Rule-table verdicts.
    {
        int verdicts = 0;
        for (auto fabric : {FabricStretch::non_stretch, FabricStretch::two_way,
                            FabricStretch::four_way}) {
            for (auto stitch : {StitchPattern::side, StitchPattern::cross}) {
                for (bool wrinkled : {false, true}) {
                    FabricAssembly fa = reference_assembly();
                    fa.fabric = fabric;
                    fa.stitch_pattern = stitch;
                    fa.wrinkled = wrinkled;
                    fa.stitch_style = StitchStyle::zigzag;
                    (void)classify_assembly(fa);
                    ++verdicts;
                }
            }
        }
        row("rule_table_verdicts", "classified stitch/fabric/wrinkling combinations",
            verdicts, 12.0, "-", "");

        FabricAssembly red_box = reference_assembly();
        const bool red_ok = classify_assembly(red_box).valid;
        FabricAssembly bad = reference_assembly();
        bad.fabric = FabricStretch::four_way;
        bad.stitch_style = StitchStyle::zigzag;
        const bool four_way_side_invalid = !classify_assembly(bad).valid;
        observe(verdicts == 12, "rule table covers all 12 combinations");
        observe(red_ok, "default build combination is valid");
        observe(four_way_side_invalid, "four-way fabric with side stitches is invalid");
    }

    return rep;
}

std::string report_to_markdown(const RegressionReport& report) {
    std::string out = "# Model regression report\n\n";
    out += "Model values recomputed from the bundled reference configurations and compared\n";
    out += "against the bench measurements recorded for the reference prototypes.\n\n";
    out += "| id | quantity | model | reference | units | note |\n";
    out += "|----|----------|-------|-----------|-------|------|\n";
    for (const auto& r : report.rows) {
        out += "| " + r.id + " | " + r.quantity + " | " + format_double(r.model_value) + " | ";
        out += r.reference_value ? format_double(*r.reference_value) : std::string("-");
        out += " | " + r.units + " | " + r.note + " |\n";
    }
    out += "\n## Checks\n\n";
    for (const auto& o : report.observations) out += "- " + o + "\n";
    return out;
}

std::string report_to_json_text(const RegressionReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json jr = {{"id", r.id},
                             {"quantity", r.quantity},
                             {"model_value", r.model_value},
                             {"units", r.units},
                             {"note", r.note}};
        if (r.reference_value) jr["reference_value"] = *r.reference_value;
        rows.push_back(std::move(jr));
    }
    nlohmann::json j = {{"rows", std::move(rows)}, {"observations", report.observations}};
    return j.dump(2) + "\n";
}

}  // namespace ffms
