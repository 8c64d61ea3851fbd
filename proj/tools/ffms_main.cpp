#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "ffms/config.hpp"
#include "ffms/csv.hpp"
#include "ffms/design_rules.hpp"
#include "ffms/errors.hpp"
#include "ffms/estimation.hpp"
#include "ffms/garment.hpp"
#include "ffms/hydraulics.hpp"
#include "ffms/optimizer.hpp"
#include "ffms/report.hpp"
#include "ffms/svg.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitComputation = 2;
constexpr int kExitInfeasible = 3;

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    bool dump_config = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

std::string out_path(const CliOptions& cli, const std::string& name) {
    return (std::filesystem::path(cli.out_dir) / name).string();
}

void ensure_out_dir(const CliOptions& cli) {
    std::filesystem::create_directories(cli.out_dir);
}

json violations_json(const ffms::Feasibility& feas) {
    json list = json::array();
    for (const auto& v : feas.violations)
        list.push_back(
            {{"constraint", v.constraint}, {"actual", v.actual}, {"limit", v.limit}});
    return list;
}

int run_simulate(const ffms::RunConfig& cfg, const CliOptions& cli) {
    if (!cfg.drive) throw ffms::ConfigError("/drive", "simulate needs a drive block");
    if (!cfg.simulation)
        throw ffms::ConfigError("/simulation", "simulate needs a simulation block");

    const ffms::ChannelNetwork net = cfg.make_network();
    const ffms::Trajectory traj =
        ffms::simulate_transient(net, cfg.actuator, cfg.fluid, *cfg.drive, *cfg.simulation);

    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "trajectory.csv"), ffms::trajectory_to_csv(traj));

    if (cli.format == "svg") {
        ffms::svg::Series pressure{"port pressure [Pa]", traj.time_s, traj.source_pressure_pa};
        ffms::svg::Series force{"total force [N]", traj.time_s, {}};
        force.y.resize(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) force.y[i] = traj.total_force_n(i);
        ffms::write_text_file(
            out_path(cli, "trajectory.svg"),
            ffms::svg::line_chart("transient response", "t [s]", "", {pressure, force}));
    }
    if (cli.format == "json") {
        const std::size_t last = traj.size() - 1;
        json summary = {{"steps", traj.size()},
                        {"terminal_force_n", traj.total_force_n(last)},
                        {"terminal_volume_m3", traj.total_volume_m3(last)},
                        {"terminal_mean_pressure_pa", traj.mean_pressure_pa(last)},
                        {"input_work_j", traj.input_work_j[last]},
                        {"viscous_loss_j", traj.viscous_loss_j[last]}};
        ffms::write_text_file(out_path(cli, "trajectory_summary.json"),
                              summary.dump(2) + "\n");
    }
    return kExitOk;
}

int run_fit(const ffms::RunConfig& cfg, const CliOptions& cli) {
    if (!cfg.fit) throw ffms::ConfigError("/fit", "fit needs a fit block");
    const ffms::TestSeries series =
        ffms::test_series_from_csv(ffms::read_text_file(cfg.fit->input_csv));

    json out;
    if (cfg.fit->kind == ffms::FitConfig::Kind::modulus) {
        const ffms::ModulusFit fit = ffms::fit_modulus(series, cfg.fit->strain_window_lo,
                                                       cfg.fit->strain_window_hi);
        out = {{"kind", "modulus"},
               {"elastic_modulus_pa", fit.elastic_modulus_pa},
               {"rms_residual_pa", fit.rms_residual_pa},
               {"points_used", fit.points_used}};
    } else {
        const ffms::VolumeSlopeFit fit =
            ffms::fit_volume_slope(series, cfg.fit->channel_count);
        out = {{"kind", "volume_slope"},
               {"volume_slope_m2", fit.volume_slope_m2},
               {"dead_volume_m3", fit.dead_volume_m3},
               {"r_squared", fit.r_squared}};
    }
    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "fit.json"), out.dump(2) + "\n");
    return kExitOk;
}

int run_check(const ffms::RunConfig& cfg, const CliOptions& cli) {
    const double pressure = cfg.check ? cfg.check->operating_pressure_pa : 0.0;
    ffms::RuleTable table = ffms::RuleTable::builtin();
    if (!cfg.rules_table_path.empty())
        table = ffms::rule_table_from_json(ffms::read_text_file(cfg.rules_table_path));
    const ffms::AssemblyClassification cls =
        ffms::classify_assembly(cfg.actuator.assembly, table);
    const ffms::FailureReport failures = ffms::check_failures(cfg.actuator, pressure, table);

    json checks = json::array();
    for (const auto& c : failures.checks)
        checks.push_back({{"mode", ffms::to_string(c.mode)},
                          {"severity", ffms::to_string(c.severity)},
                          {"flagged", c.flagged},
                          {"margin", c.margin},
                          {"detail", c.detail}});

    json warnings = json::array();
    if (auto w = ffms::strain_validity_warning(cfg.actuator.pre_strain)) warnings.push_back(*w);

    json out = {{"classification",
                 {{"axial_stretch", ffms::to_string(cls.axial_stretch)},
                  {"radial_risk", ffms::to_string(cls.radial_risk)},
                  {"valid", cls.valid},
                  {"notes", cls.notes}}},
                {"operating_pressure_pa", pressure},
                {"failure_checks", checks}};

    if (cfg.compression) {
        const double p_c = ffms::compression_pressure_pa(
            cfg.compression->external_force_n, cfg.actuator, cfg.compression->cylinder_radius_m);
        out["compression"] = {
            {"compressive_pressure_pa", p_c},
            {"compression_force_n", p_c * cfg.compression->contact_area_m2}};
        if (auto w = ffms::compression_validity_warning(cfg.compression->cylinder_radius_m,
                                                        cfg.actuator.effective_thickness_m))
            warnings.push_back(*w);
    }
    out["warnings"] = warnings;

    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "check.json"), out.dump(2) + "\n");
    return kExitOk;
}

int run_design(const ffms::RunConfig& cfg, const CliOptions& cli) {
    if (!cfg.design) throw ffms::ConfigError("/design", "design needs a design block");
    const ffms::DesignSearch search =
        ffms::solve_design(cfg.design->requirements, cfg.design->catalog, cfg.design->options);

    ensure_out_dir(cli);

    json out;
    out["candidates_evaluated"] = search.candidates_evaluated;
    out["objective"] = ffms::to_string(cfg.design->options.objective);
    out["note"] = "mass objective covers tube material and rest fill; fabric mass excluded";
    json designs = json::array();
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < search.designs.size(); ++i) {
        const auto& d = search.designs[i];
        designs.push_back({{"rank", i + 1},
                           {"tube", cfg.design->catalog.tubes[d.tube_index].name},
                           {"tube_index", d.tube_index},
                           {"assembly_index", d.assembly_index},
                           {"tube_count", d.tube_count},
                           {"objective_value", d.objective_value},
                           {"mass_kg", d.mass_kg},
                           {"max_pressure_pa", d.max_pressure_pa},
                           {"sheet_width_m", d.sheet_width_m}});
        rows.push_back({static_cast<double>(i + 1), static_cast<double>(d.tube_index),
                        static_cast<double>(d.assembly_index),
                        static_cast<double>(d.tube_count), d.objective_value, d.mass_kg,
                        d.max_pressure_pa, d.sheet_width_m});
    }
    out["designs"] = designs;

    if (search.designs.empty() && search.nearest_miss) {
        out["nearest_miss"] = {
            {"tube_index", search.nearest_miss->tube_index},
            {"assembly_index", search.nearest_miss->assembly_index},
            {"tube_count", search.nearest_miss->tube_count},
            {"total_violation", search.nearest_miss->feasibility.total_violation()},
            {"violations", violations_json(search.nearest_miss->feasibility)}};
    }

    ffms::write_text_file(out_path(cli, "designs.json"), out.dump(2) + "\n");
    ffms::write_text_file(
        out_path(cli, "designs.csv"),
        ffms::table_to_csv({"rank", "tube_index", "assembly_index", "tube_count",
                            "objective_value", "mass_kg", "max_pressure_pa", "sheet_width_m"},
                           rows));
    return search.designs.empty() ? kExitInfeasible : kExitOk;
}

int run_garment(const ffms::RunConfig& cfg, const CliOptions& cli) {
    if (!cfg.garment) throw ffms::ConfigError("/garment", "garment needs a garment block");
    const ffms::GarmentConfig& g = *cfg.garment;
    ffms::PeristalsisSchedule schedule;
    if (g.n_segments == 1) {
        // single band: no traveling wave, one waveform at phase zero
        schedule.segments.push_back({g.period_s, 0.0, g.p_low_pa, g.p_high_pa, g.shape});
    } else {
        schedule = ffms::schedule_peristalsis(g.n_segments, g.period_s, g.direction,
                                              g.p_low_pa, g.p_high_pa, g.shape);
    }
    ffms::GarmentOptions options = g.options;
    options.volume_slope_m2 = cfg.network_volume_slope_m2;
    const ffms::GarmentMap map =
        ffms::simulate_garment(schedule, cfg.actuator, cfg.fluid, g.limb, options);

    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "garment_map.csv"), ffms::garment_map_to_csv(map));

    json stats = json::array();
    for (std::size_t s = 0; s < map.stats.size(); ++s)
        stats.push_back({{"segment", s + 1},
                         {"peak_pa", map.stats[s].peak_pa},
                         {"fraction_above_haptic", map.stats[s].fraction_above_haptic},
                         {"fraction_above_cuff", map.stats[s].fraction_above_cuff}});
    json out = {{"haptic_threshold_pa", map.haptic_threshold_pa},
                {"cuff_threshold_pa", map.cuff_threshold_pa},
                {"segments", stats},
                {"warnings", map.warnings}};
    ffms::write_text_file(out_path(cli, "garment_report.json"), out.dump(2) + "\n");

    if (cli.format == "svg") {
        ffms::write_text_file(out_path(cli, "garment_map.svg"),
                              ffms::svg::heat_map("compression map [Pa]", map.compression_pa,
                                                  0.0, map.dt_s, "t [s]", "segment"));
    }
    return kExitOk;
}

int run_sweep(const std::string& raw_config, const ffms::RunConfig& cfg,
              const CliOptions& cli) {
    if (!cfg.sweep) throw ffms::ConfigError("/sweep", "sweep needs a sweep block");
    const auto& axes = cfg.sweep->axes;

    json base = json::parse(raw_config);

    std::vector<std::string> header;
    for (const auto& axis : axes) header.push_back(axis.pointer);
    header.insert(header.end(),
                  {"max_pressure_pa", "peak_force_n", "stroke_m", "stitch_margin"});

    // cartesian grid in row-major order over the axes as listed
    std::vector<std::size_t> index(axes.size(), 0);
    std::vector<std::vector<double>> rows;
    while (true) {
        json point = base;
        point.erase("sweep");
        std::vector<double> row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double value = axes[a].values[index[a]];
            try {
                // keep integer-typed fields (e.g. tube_count) integer-typed
                if (value == std::floor(value) && std::abs(value) < 9.0e15)
                    point[json::json_pointer(axes[a].pointer)] =
                        static_cast<std::int64_t>(value);
                else
                    point[json::json_pointer(axes[a].pointer)] = value;
            } catch (const json::exception& e) {
                throw ffms::ConfigError("/sweep/axes/" + std::to_string(a) + "/pointer",
                                        e.what());
            }
            row.push_back(value);
        }
        const ffms::RunConfig pc = ffms::RunConfig::from_json_text(point.dump());
        const double p_max = ffms::max_pressure_pa(pc.actuator, pc.actuator.pre_strain);
        row.push_back(p_max);
        row.push_back(ffms::external_force_n(pc.actuator, pc.actuator.pre_strain, 0.0));
        row.push_back(pc.actuator.tube.rest_length_m *
                      (std::exp(pc.actuator.pre_strain) - 1.0));
        row.push_back(pc.actuator.assembly.thread_strength_n_per_m /
                      std::max(1e-12, ffms::stitch_line_load_n_per_m(
                                          p_max, pc.actuator.tube.outer_radius_m)));
        rows.push_back(std::move(row));

        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++index[a] < axes[a].values.size()) break;
            index[a] = 0;
            if (a == 0) {
                a = SIZE_MAX;
                break;
            }
        }
        if (a == SIZE_MAX) break;
    }

    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "sweep.csv"), ffms::table_to_csv(header, rows));
    return kExitOk;
}

int run_report(const CliOptions& cli) {
    const ffms::RegressionReport report = ffms::build_regression_report();
    ensure_out_dir(cli);
    ffms::write_text_file(out_path(cli, "report.md"), ffms::report_to_markdown(report));
    ffms::write_text_file(out_path(cli, "report.json"), ffms::report_to_json_text(report));
    bool ok = true;
    for (const auto& o : report.observations)
        if (o.rfind("FAIL", 0) == 0) ok = false;
    return ok ? kExitOk : kExitComputation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fabric muscle sheet modeling toolkit"};
    app.require_subcommand(0, 1);

    CliOptions cli;
    app.add_option("--config", cli.config_path, "run configuration (JSON)");
    app.add_option("--out", cli.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", cli.format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    app.add_flag("--dump-config", cli.dump_config,
                 "print the normalized configuration and exit");
    auto* seed_opt = app.add_option("--seed", cli.seed, "override the config seed");

    auto* sim = app.add_subcommand("simulate", "transient simulation -> trajectory CSV");
    auto* fit = app.add_subcommand("fit", "parameter fit from test data -> JSON");
    auto* check = app.add_subcommand("check", "design-rule and failure screen -> JSON");
    auto* design = app.add_subcommand("design", "catalog search -> ranked designs");
    auto* garment = app.add_subcommand("garment", "compression garment map -> CSV");
    auto* sweep = app.add_subcommand("sweep", "cartesian parameter sweep -> CSV");
    auto* report = app.add_subcommand("report", "regenerate the regression report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cli.config_path.empty()) throw ffms::ConfigError("/", "--config is required");
        const std::string raw = ffms::read_text_file(cli.config_path);
        ffms::RunConfig cfg = ffms::RunConfig::from_json_text(raw);
        if (!seed_opt->empty()) cfg.seed = cli.seed;

        if (cli.dump_config) {
            std::fputs(cfg.to_json_text().c_str(), stdout);
            return kExitOk;
        }
        if (sim->parsed()) return run_simulate(cfg, cli);
        if (fit->parsed()) return run_fit(cfg, cli);
        if (check->parsed()) return run_check(cfg, cli);
        if (design->parsed()) return run_design(cfg, cli);
        if (garment->parsed()) return run_garment(cfg, cli);
        if (sweep->parsed()) return run_sweep(raw, cfg, cli);
        if (report->parsed()) return run_report(cli);
        std::fputs(app.help().c_str(), stderr);
        return kExitConfig;
    } catch (const ffms::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "computation error: %s\n", e.what());
        return kExitComputation;
    }
}
