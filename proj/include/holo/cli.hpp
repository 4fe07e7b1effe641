#pragma once

// Command-line front end. Subcommands: entropy, mi, negativity, i3, scan,
// transition, figures. Exit codes: 0 success, 2 unusable configuration,
// 3 numerical-convergence failure. The HOLOSCOPE_CACHE environment variable
// overrides the cache path.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holo/cache.hpp"
#include "holo/config.hpp"
#include "holo/series.hpp"

namespace holo::cli {

namespace detail {

inline std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(cur, &pos));
            if (pos != cur.size()) throw std::invalid_argument(cur);
        } catch (const std::exception&) {
            throw ConfigError(std::string("bad number in ") + what + ": " + cur);
        }
    }
    if (out.empty()) throw ConfigError(std::string("empty list for ") + what);
    return out;
}

inline std::vector<std::string> metadata_lines(const RunConfig& cfg) {
    return {"# holoscope series v1", "# config = " + resolved_config_json(cfg).dump()};
}

inline SweepSpec sweep_from_config(const RunConfig& cfg) {
    const CommandSpec& cmd = cfg.command;
    if (!cmd.parameter) throw ConfigError("missing --parameter");
    SweepSpec spec;
    spec.parameter = *cmd.parameter;
    spec.start = cmd.start;
    spec.stop = cmd.stop;
    spec.steps = cmd.steps;
    spec.geometry = cfg.geometry;
    CommandSpec layout = cmd;
    // a gap sweep substitutes every gap, so the layout may omit them
    if (spec.parameter == SweepParameter::GapSize && layout.intervals.empty() &&
        layout.lengths.size() > 1 && layout.gaps.empty())
        layout.gaps = {1.0};
    spec.intervals = build_intervals(layout);
    spec.cutoff = cfg.cutoff;
    spec.quad = cfg.quad;
    spec.units = cfg.units;
    return spec;
}

inline std::string summary_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// --- subcommand bodies -----------------------------------------------------

inline void run_entropy(const RunConfig& cfg, std::ostream& out) {
    double width = 0.0;
    if (cfg.command.length) {
        width = *cfg.command.length;
    } else {
        const IntervalSet ivs = build_intervals(cfg.command);
        width = ivs[0].length();
    }
    if (!(width > 0.0)) throw ConfigError("entropy needs a positive --length");
    const StripEntropy s = cached_strip_entropy(cfg.geometry, width, cfg.cutoff, cfg.quad, cfg.units);
    out << "entropy S = " << summary_value(s.entropy) << " (branch=" << branch_name(s.surface.branch)
        << ", z_star=" << summary_value(s.surface.z_star) << ", width=" << summary_value(width)
        << ", eps=" << summary_value(cfg.cutoff) << ")\n";
    if (!cfg.output.path.empty()) {
        ScanRecord r;
        r.parameter_value = width;
        r.entropy = s.entropy;
        r.phase = s.surface.branch == SurfaceBranch::ConnectedU ? Phase::Connected
                                                                : Phase::Disconnected;
        write_series_file(cfg.output.path, Series{metadata_lines(cfg), {r}}, cfg.output.format);
        out << "wrote " << cfg.output.path << "\n";
    }
}

inline void run_mi(const RunConfig& cfg, std::ostream& out) {
    const IntervalSet ivs = build_intervals(cfg.command);
    if (ivs.size() < 2) throw ConfigError("mi needs two intervals");
    const MeasureResult m =
        mutual_information(cfg.geometry, ivs[0], ivs[1], cfg.cutoff, cfg.quad, cfg.units);
    out << "mi I = " << summary_value(m.value) << " (phase=" << phase_name(m.phase)
        << ", eps=" << summary_value(cfg.cutoff) << ")\n";
    if (!cfg.output.path.empty()) {
        ScanRecord r;
        r.parameter_value = ivs[1].a - ivs[0].b;
        r.mi = m.value;
        r.phase = m.phase;
        write_series_file(cfg.output.path, Series{metadata_lines(cfg), {r}}, cfg.output.format);
        out << "wrote " << cfg.output.path << "\n";
    }
}

inline void run_negativity(const RunConfig& cfg, std::ostream& out) {
    const IntervalSet ivs = build_intervals(cfg.command);
    if (ivs.size() < 2) throw ConfigError("negativity needs two intervals");
    const MeasureResult x = negativity_proxy(cfg.geometry, ivs[0], ivs[1], cfg.quad, cfg.units);
    out << "negativity X = " << summary_value(x.value) << " (phase=" << phase_name(x.phase)
        << ", E_W=" << summary_value(x.raw) << ")\n";
    if (!cfg.output.path.empty()) {
        ScanRecord r;
        r.parameter_value = ivs[1].a - ivs[0].b;
        r.negativity_proxy = x.value;
        r.phase = x.phase;
        write_series_file(cfg.output.path, Series{metadata_lines(cfg), {r}}, cfg.output.format);
        out << "wrote " << cfg.output.path << "\n";
    }
}

inline void run_i3(const RunConfig& cfg, std::ostream& out) {
    const IntervalSet ivs = build_intervals(cfg.command);
    if (ivs.size() < 3) throw ConfigError("i3 needs three intervals");
    const double i3 =
        tripartite_information(cfg.geometry, ivs[0], ivs[1], ivs[2], cfg.cutoff, cfg.quad, cfg.units);
    const double m = std::max(0.0, -i3);
    out << "i3 I3 = " << summary_value(i3) << " M = " << summary_value(m)
        << " (eps=" << summary_value(cfg.cutoff) << ")\n";
    if (!cfg.output.path.empty()) {
        ScanRecord r;
        r.parameter_value = ivs[1].a - ivs[0].b;
        r.multipartite = m;
        r.phase = union_entropy_intervals(cfg.geometry, ivs, cfg.cutoff, cfg.quad, cfg.units).phase;
        write_series_file(cfg.output.path, Series{metadata_lines(cfg), {r}}, cfg.output.format);
        out << "wrote " << cfg.output.path << "\n";
    }
}

inline void run_scan(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output.path.empty()) throw ConfigError("scan needs --out");
    MeasureSelection sel = cfg.command.measures;
    if (!sel.any()) sel.mi = true;
    const SweepSpec spec = sweep_from_config(cfg);
    const std::vector<ScanRecord> records = scan_measure(spec, sel);
    write_series_file(cfg.output.path, Series{metadata_lines(cfg), records}, cfg.output.format);
    std::size_t failed = 0;
    for (const auto& r : records) failed += r.error.has_value();
    out << "scan wrote " << records.size() << " records to " << cfg.output.path;
    if (failed) out << " (" << failed << " failed points)";
    out << "\n";
}

inline void run_transition(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.command.bracket) throw ConfigError("transition needs --bracket lo,hi");
    SweepSpec spec = sweep_from_config(cfg);
    spec.start = cfg.command.bracket->first;
    spec.stop = cfg.command.bracket->second;
    spec.steps = 2;
    const double root = locate_transition(spec, cfg.command.transition_measure,
                                          cfg.command.bracket->first, cfg.command.bracket->second);
    out << "transition parameter = " << summary_value(root) << " ("
        << sweep_parameter_name(spec.parameter) << ", measure="
        << measure_kind_name(cfg.command.transition_measure) << ")\n";
    if (!cfg.output.path.empty()) {
        ScanRecord r;
        r.parameter_value = root;
        r.phase = Phase::Connected;
        write_series_file(cfg.output.path, Series{metadata_lines(cfg), {r}}, cfg.output.format);
        out << "wrote " << cfg.output.path << "\n";
    }
}

struct FigureRecipe {
    const char* stem;
    SweepSpec spec;
    MeasureSelection measures;
    bool rate_of_mi = false;  // differentiate the mi series after scanning
};

// The default transition model: a hard wall at z_w = 0.5 for the saturation
// figures, black branes for the thermal ones.
inline std::vector<FigureRecipe> figure_recipes(const RunConfig& cfg) {
    std::vector<FigureRecipe> out;

    const BulkGeometry wall = BulkGeometry::hard_wall(0.5, 2, cfg.geometry.L);
    const BulkGeometry brane_soft = BulkGeometry::black_brane(5.0, 2, cfg.geometry.L);
    const BulkGeometry brane = BulkGeometry::black_brane(1.0, 2, cfg.geometry.L);

    {  // mutual information vs subsystem size; slope change at the wall scale
        FigureRecipe r;
        r.stem = "fig1_mi_vs_size";
        r.spec.parameter = SweepParameter::IntervalLength;
        r.spec.start = 0.05;
        r.spec.stop = 1.00;
        r.spec.steps = 96;
        r.spec.geometry = wall;
        r.spec.intervals = IntervalSet::from_lengths_gaps({0.2, 0.2}, {0.05});
        r.spec.cutoff = cfg.cutoff;
        r.spec.quad = cfg.quad;
        r.spec.units = cfg.units;
        r.measures.mi = true;
        out.push_back(r);
    }
    {  // negativity proxy across the flow; sharp drop to zero at gap = z_w
        FigureRecipe r;
        r.stem = "fig2_negativity_vs_scale";
        r.spec.parameter = SweepParameter::GapSize;
        r.spec.start = 0.05;
        r.spec.stop = 0.95;
        r.spec.steps = 46;
        r.spec.geometry = wall;
        r.spec.intervals = IntervalSet::from_lengths_gaps({1.0, 1.0}, {0.1});
        r.spec.cutoff = cfg.cutoff;
        r.spec.quad = cfg.quad;
        r.spec.units = cfg.units;
        r.measures.mi = true;
        r.measures.negativity = true;
        out.push_back(r);
    }
    {  // multipartite correlations peaked near the disconnect transition
        FigureRecipe r;
        r.stem = "fig3_multipartite_vs_scale";
        r.spec.parameter = SweepParameter::GapSize;
        r.spec.start = 0.05;
        r.spec.stop = 0.75;
        r.spec.steps = 71;
        r.spec.geometry = brane_soft;
        r.spec.intervals = IntervalSet::from_lengths_gaps({1.0, 1.0, 1.0}, {0.1, 0.1});
        r.spec.cutoff = cfg.cutoff;
        r.spec.quad = cfg.quad;
        r.spec.units = cfg.units;
        r.measures.mi = true;
        r.measures.multipartite = true;
        out.push_back(r);
    }
    {  // rate of change of the fig1 series
        FigureRecipe r;
        r.stem = "fig4_rate_of_change";
        r.spec = out[0].spec;
        r.measures.mi = true;
        r.rate_of_mi = true;
        out.push_back(r);
    }
    {  // negativity proxy vs subsystem size in a thermal background
        FigureRecipe r;
        r.stem = "fig5_negativity_vs_size";
        r.spec.parameter = SweepParameter::IntervalLength;
        r.spec.start = 0.1;
        r.spec.stop = 1.3;
        r.spec.steps = 13;
        r.spec.geometry = brane;
        r.spec.intervals = IntervalSet::from_lengths_gaps({0.5, 0.5}, {0.1});
        r.spec.cutoff = cfg.cutoff;
        r.spec.quad = cfg.quad;
        r.spec.units = cfg.units;
        r.measures.mi = true;
        r.measures.negativity = true;
        out.push_back(r);
    }
    return out;
}

inline void run_figures(const RunConfig& cfg, std::ostream& out) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.command.out_dir.empty() ? "." : cfg.command.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());

    const char* ext = cfg.output.format == SeriesFormat::Csv ? ".csv" : ".json";
    for (const FigureRecipe& recipe : figure_recipes(cfg)) {
        std::vector<ScanRecord> records = scan_measure(recipe.spec, recipe.measures);
        if (recipe.rate_of_mi)
            records = finite_difference_rate(std::move(records), MeasureKind::MutualInformation);

        RunConfig echoed = cfg;
        echoed.geometry = recipe.spec.geometry;
        echoed.command = CommandSpec{};
        echoed.command.name = "figures";
        echoed.command.parameter = recipe.spec.parameter;
        echoed.command.start = recipe.spec.start;
        echoed.command.stop = recipe.spec.stop;
        echoed.command.steps = recipe.spec.steps;
        echoed.command.lengths = recipe.spec.intervals.lengths();
        echoed.command.gaps = recipe.spec.intervals.gaps();
        echoed.command.measures = recipe.measures;
        echoed.command.out_dir = dir.string();
        std::vector<std::string> meta = metadata_lines(echoed);
        meta.insert(meta.begin() + 1, std::string("# dataset = ") + recipe.stem);

        const fs::path path = dir / (std::string(recipe.stem) + ext);
        write_series_file(path.string(), Series{meta, records}, cfg.output.format);
    }
    out << "figures wrote 5 datasets to " << dir.string() << "\n";
}

}  // namespace detail

// Parse argv (without the program name), execute, print a one-line summary.
// Returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"holoscope - holographic entanglement measures on planar bulk geometries"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, geometry_kind, format_name, cache_path, out_path;
    std::string lengths_text, gaps_text, intervals_text, bracket_text, measures_text;
    std::string parameter_name, measure_name, out_dir;
    std::optional<int> opt_d;
    std::optional<double> opt_zh, opt_zw, opt_L, opt_eps, opt_four_gn, opt_length, opt_gap;
    std::optional<double> opt_start, opt_stop, opt_origin;
    std::optional<int> opt_steps, opt_nodes;
    std::optional<double> opt_rel_tol;
    std::optional<unsigned long> opt_seed;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--geometry", geometry_kind, "pure_ads | black_brane | hard_wall");
    app.add_option("--d", opt_d, "boundary spacetime dimension");
    app.add_option("--z-h", opt_zh, "horizon depth (black brane)");
    app.add_option("--z-w", opt_zw, "wall depth (hard wall)");
    app.add_option("--L", opt_L, "AdS radius");
    app.add_option("--four-gn", opt_four_gn, "4 G_N entropy normalization");
    app.add_option("--eps", opt_eps, "UV cutoff");
    app.add_option("--nodes", opt_nodes, "quadrature starting node count");
    app.add_option("--rel-tol", opt_rel_tol, "quadrature relative tolerance");
    app.add_option("--out", out_path, "output series file");
    app.add_option("--format", format_name, "csv | json");
    app.add_option("--cache", cache_path, "enable the on-disk result cache at this path");
    app.add_option("--seed", opt_seed, "seed recorded for randomized harnesses");

    CLI::App* sub_entropy = app.add_subcommand("entropy", "single-region entanglement entropy");
    sub_entropy->add_option("--length", opt_length, "interval/strip width");
    CLI::App* sub_mi = app.add_subcommand("mi", "mutual information of two intervals");
    CLI::App* sub_neg = app.add_subcommand("negativity", "negativity proxy of two intervals");
    CLI::App* sub_i3 = app.add_subcommand("i3", "tripartite information of three intervals");
    CLI::App* sub_scan = app.add_subcommand("scan", "sweep a parameter and emit a series");
    CLI::App* sub_trans = app.add_subcommand("transition", "locate a phase transition by bisection");
    CLI::App* sub_figs = app.add_subcommand("figures", "emit the five default figure datasets");

    for (CLI::App* sub : {sub_entropy, sub_mi, sub_neg, sub_i3, sub_scan, sub_trans}) {
        sub->add_option("--lengths", lengths_text, "comma-separated interval lengths");
        sub->add_option("--gap", opt_gap, "single gap between intervals");
        sub->add_option("--gaps", gaps_text, "comma-separated gaps");
        sub->add_option("--intervals", intervals_text, "flat a1,b1,a2,b2,... list");
        sub->add_option("--origin", opt_origin, "left edge of the first interval");
    }
    for (CLI::App* sub : {sub_scan, sub_trans}) {
        sub->add_option("--parameter", parameter_name, "gap | length | z_h | z_w | probe");
    }
    sub_scan->add_option("--start", opt_start, "sweep start");
    sub_scan->add_option("--stop", opt_stop, "sweep stop");
    sub_scan->add_option("--steps", opt_steps, "sweep grid points (endpoints included)");
    sub_scan->add_option("--measures", measures_text, "comma list of entropy,mi,negativity,multipartite");
    sub_trans->add_option("--bracket", bracket_text, "lo,hi bracket for the bisection");
    sub_trans->add_option("--measure", measure_name, "entropy | mi | negativity | multipartite");
    sub_figs->add_option("--out-dir", out_dir, "directory for the figure datasets");

    std::vector<const char*> argv;
    argv.push_back("holoscope");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n" << app.help();
            return 2;
        }

        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file: " + config_path);
            Json doc;
            try {
                doc = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("bad config file: ") + e.what());
            }
            apply_config_json(cfg, doc);
        }

        // flag overrides
        if (!geometry_kind.empty()) {
            BulkGeometry g;
            g.kind = parse_geometry_kind(geometry_kind);
            g.d = cfg.geometry.kind == g.kind ? cfg.geometry.d : 2;
            g.L = cfg.geometry.L;
            g.z_h = cfg.geometry.z_h;
            g.z_w = cfg.geometry.z_w;
            g.profile = cfg.geometry.profile;
            cfg.geometry = g;
        }
        if (opt_d) cfg.geometry.d = *opt_d;
        if (opt_zh) cfg.geometry.z_h = *opt_zh;
        if (opt_zw) cfg.geometry.z_w = *opt_zw;
        if (opt_L) cfg.geometry.L = *opt_L;
        if (opt_four_gn) cfg.units.four_G_N = *opt_four_gn;
        if (opt_eps) cfg.cutoff = *opt_eps;
        if (opt_nodes) cfg.quad.node_count = *opt_nodes;
        if (opt_rel_tol) cfg.quad.rel_tol = *opt_rel_tol;
        if (!out_path.empty()) cfg.output.path = out_path;
        if (!format_name.empty()) cfg.output.format = parse_series_format(format_name);
        if (!cache_path.empty()) {
            cfg.cache.enabled = true;
            cfg.cache.path = cache_path;
        }
        if (opt_seed) cfg.seed = *opt_seed;

        CommandSpec& cmd = cfg.command;
        if (app.get_subcommands().size() == 1) cmd.name = app.get_subcommands().front()->get_name();
        if (cmd.name.empty()) {
            err << "error: no subcommand given\n" << app.help();
            return 2;
        }
        if (opt_length) cmd.length = *opt_length;
        if (!lengths_text.empty()) cmd.lengths = detail::parse_double_list(lengths_text, "--lengths");
        if (opt_gap) cmd.gaps = {*opt_gap};
        if (!gaps_text.empty()) cmd.gaps = detail::parse_double_list(gaps_text, "--gaps");
        if (opt_origin) cmd.origin = *opt_origin;
        if (!intervals_text.empty()) {
            const auto flat = detail::parse_double_list(intervals_text, "--intervals");
            if (flat.size() % 2 != 0) throw ConfigError("--intervals needs an even count");
            cmd.intervals.clear();
            for (std::size_t i = 0; i + 1 < flat.size(); i += 2)
                cmd.intervals.push_back({flat[i], flat[i + 1]});
        }
        if (!parameter_name.empty()) cmd.parameter = parse_sweep_parameter(parameter_name);
        if (opt_start) cmd.start = *opt_start;
        if (opt_stop) cmd.stop = *opt_stop;
        if (opt_steps) cmd.steps = *opt_steps;
        if (!measures_text.empty()) {
            cmd.measures = {};
            std::stringstream ss(measures_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                switch (parse_measure_kind(tok)) {
                    case MeasureKind::Entropy: cmd.measures.entropy = true; break;
                    case MeasureKind::MutualInformation: cmd.measures.mi = true; break;
                    case MeasureKind::NegativityProxy: cmd.measures.negativity = true; break;
                    case MeasureKind::Multipartite: cmd.measures.multipartite = true; break;
                }
            }
        }
        if (!bracket_text.empty()) {
            const auto pair = detail::parse_double_list(bracket_text, "--bracket");
            if (pair.size() != 2) throw ConfigError("--bracket needs exactly lo,hi");
            cmd.bracket = std::make_pair(pair[0], pair[1]);
        }
        if (!measure_name.empty()) cmd.transition_measure = parse_measure_kind(measure_name);
        if (!out_dir.empty()) cmd.out_dir = out_dir;
        if ((cmd.name == "scan" || cmd.name == "transition") && !cmd.parameter)
            cmd.parameter = SweepParameter::GapSize;  // the default scan axis

        if (cfg.cache.enabled) {
            if (const char* env = std::getenv("HOLOSCOPE_CACHE")) cfg.cache.path = env;
        }
        if (cfg.geometry.kind == GeometryKind::HardWall && cfg.geometry.z_w == 0.0)
            cfg.geometry.z_w = 0.5;  // the default transition model
        validate_run_config(cfg);

        std::optional<ResultCache> disk_cache;
        std::optional<ScopedCacheBinding> binding;
        if (cfg.cache.enabled) {
            disk_cache.emplace(cfg.cache.path);
            binding.emplace(*disk_cache);
        }

        if (cmd.name == "entropy") detail::run_entropy(cfg, out);
        else if (cmd.name == "mi") detail::run_mi(cfg, out);
        else if (cmd.name == "negativity") detail::run_negativity(cfg, out);
        else if (cmd.name == "i3") detail::run_i3(cfg, out);
        else if (cmd.name == "scan") detail::run_scan(cfg, out);
        else if (cmd.name == "transition") detail::run_transition(cfg, out);
        else if (cmd.name == "figures") detail::run_figures(cfg, out);
        else throw ConfigError("unknown command: " + cmd.name);
        return 0;
    } catch (const NumericsError& e) {
        err << "numerics error: " << e.what() << "\n";
        return 3;
    } catch (const BracketError& e) {
        err << "bracket error: " << e.what() << "\n";
        return 3;
    } catch (const ScanError& e) {
        err << "scan error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace holo::cli
