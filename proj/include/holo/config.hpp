#pragma once

// Run configuration: a single JSON document with keys geometry, units,
// cutoff, quadrature, output, cache, command (plus seed). Command-line flags
// override file values; the fully resolved configuration is echoed into every
// output's metadata.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "holo/geometry.hpp"
#include "holo/measures.hpp"
#include "holo/rgflow.hpp"
#include "holo/series.hpp"

namespace holo {

using Json = nlohmann::ordered_json;

struct OutputSpec {
    std::string path;
    SeriesFormat format = SeriesFormat::Csv;
};

struct CacheSpec {
    bool enabled = false;
    std::string path = "holoscope_cache.jsonl";
};

struct CommandSpec {
    std::string name;                      // entropy | mi | negativity | i3 | scan | transition | figures
    std::optional<double> length;          // entropy subject size
    std::vector<double> lengths;           // interval builder
    std::vector<double> gaps;
    double origin = 0.0;
    std::vector<Interval> intervals;       // explicit intervals override lengths/gaps
    std::optional<SweepParameter> parameter;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    MeasureSelection measures;
    std::optional<std::pair<double, double>> bracket;
    MeasureKind transition_measure = MeasureKind::MutualInformation;
    std::string out_dir = ".";
};

struct RunConfig {
    BulkGeometry geometry = BulkGeometry::pure_ads();
    UnitsConvention units{};
    double cutoff = 1e-2;
    QuadratureSpec quad{};
    OutputSpec output{};
    CacheSpec cache{};
    unsigned long seed = 12345;  // recorded for reproducibility of randomized harnesses
    CommandSpec command{};
};

inline GeometryKind parse_geometry_kind(const std::string& s) {
    if (s == "pure_ads") return GeometryKind::PureAdS;
    if (s == "black_brane") return GeometryKind::BlackBrane;
    if (s == "hard_wall") return GeometryKind::HardWall;
    if (s == "tabulated") return GeometryKind::Tabulated;
    throw ConfigError("unknown geometry kind: " + s);
}

inline SweepParameter parse_sweep_parameter(const std::string& s) {
    if (s == "gap_size" || s == "gap") return SweepParameter::GapSize;
    if (s == "interval_length" || s == "length") return SweepParameter::IntervalLength;
    if (s == "horizon_depth" || s == "z_h") return SweepParameter::HorizonDepth;
    if (s == "wall_depth" || s == "z_w") return SweepParameter::WallDepth;
    if (s == "probe_depth" || s == "probe") return SweepParameter::ProbeDepth;
    throw ConfigError("unknown sweep parameter: " + s);
}

inline const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::GapSize: return "gap_size";
        case SweepParameter::IntervalLength: return "interval_length";
        case SweepParameter::HorizonDepth: return "horizon_depth";
        case SweepParameter::WallDepth: return "wall_depth";
        case SweepParameter::ProbeDepth: return "probe_depth";
    }
    return "unknown";
}

inline MeasureKind parse_measure_kind(const std::string& s) {
    if (s == "entropy") return MeasureKind::Entropy;
    if (s == "mi") return MeasureKind::MutualInformation;
    if (s == "negativity") return MeasureKind::NegativityProxy;
    if (s == "multipartite") return MeasureKind::Multipartite;
    throw ConfigError("unknown measure: " + s);
}

inline const char* measure_kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::Entropy: return "entropy";
        case MeasureKind::MutualInformation: return "mi";
        case MeasureKind::NegativityProxy: return "negativity";
        case MeasureKind::Multipartite: return "multipartite";
    }
    return "unknown";
}

inline SeriesFormat parse_series_format(const std::string& s) {
    if (s == "csv") return SeriesFormat::Csv;
    if (s == "json") return SeriesFormat::Json;
    throw ConfigError("unknown output format: " + s);
}

namespace detail {

template <typename T>
T json_get(const Json& j, const char* key, const T& fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value for '") + key + "': " + e.what());
    }
}

}  // namespace detail

// Merge a config-file document into the defaults. Unknown keys are rejected
// so typos do not silently fall back to defaults.
inline void apply_config_json(RunConfig& cfg, const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    static const std::vector<std::string> known = {"geometry", "units",  "cutoff", "quadrature",
                                                   "output",   "cache",  "seed",   "command"};
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (const auto& k : known) ok = ok || k == key;
        if (!ok) throw ConfigError("unknown config key: " + key);
    }
    if (doc.contains("geometry")) {
        const Json& g = doc.at("geometry");
        BulkGeometry geom;
        geom.kind = parse_geometry_kind(detail::json_get<std::string>(g, "kind", "pure_ads"));
        geom.d = detail::json_get<int>(g, "d", 2);
        geom.L = detail::json_get<double>(g, "L", 1.0);
        geom.z_h = detail::json_get<double>(g, "z_h", 0.0);
        geom.z_w = detail::json_get<double>(g, "z_w", 0.0);
        if (g.contains("profile")) {
            for (const auto& row : g.at("profile")) {
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError("profile rows must be [z, f] pairs");
                geom.profile.push_back({row[0].get<double>(), row[1].get<double>()});
            }
        }
        cfg.geometry = geom;
    }
    if (doc.contains("units"))
        cfg.units.four_G_N = detail::json_get<double>(doc.at("units"), "four_G_N", 1.0);
    if (doc.contains("cutoff")) cfg.cutoff = doc.at("cutoff").get<double>();
    if (doc.contains("quadrature")) {
        const Json& q = doc.at("quadrature");
        cfg.quad.node_count = detail::json_get<int>(q, "node_count", cfg.quad.node_count);
        cfg.quad.rel_tol = detail::json_get<double>(q, "rel_tol", cfg.quad.rel_tol);
    }
    if (doc.contains("output")) {
        const Json& o = doc.at("output");
        cfg.output.path = detail::json_get<std::string>(o, "path", cfg.output.path);
        cfg.output.format = parse_series_format(detail::json_get<std::string>(
            o, "format", series_format_name(cfg.output.format)));
    }
    if (doc.contains("cache")) {
        const Json& c = doc.at("cache");
        cfg.cache.enabled = detail::json_get<bool>(c, "enabled", cfg.cache.enabled);
        cfg.cache.path = detail::json_get<std::string>(c, "path", cfg.cache.path);
    }
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<unsigned long>();
    if (doc.contains("command")) {
        const Json& c = doc.at("command");
        CommandSpec& cmd = cfg.command;
        cmd.name = detail::json_get<std::string>(c, "name", cmd.name);
        if (c.contains("length")) cmd.length = c.at("length").get<double>();
        cmd.lengths = detail::json_get<std::vector<double>>(c, "lengths", cmd.lengths);
        cmd.gaps = detail::json_get<std::vector<double>>(c, "gaps", cmd.gaps);
        cmd.origin = detail::json_get<double>(c, "origin", cmd.origin);
        if (c.contains("intervals")) {
            cmd.intervals.clear();
            for (const auto& row : c.at("intervals")) {
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError("intervals must be [a, b] pairs");
                cmd.intervals.push_back({row[0].get<double>(), row[1].get<double>()});
            }
        }
        if (c.contains("parameter"))
            cmd.parameter = parse_sweep_parameter(c.at("parameter").get<std::string>());
        cmd.start = detail::json_get<double>(c, "start", cmd.start);
        cmd.stop = detail::json_get<double>(c, "stop", cmd.stop);
        cmd.steps = detail::json_get<int>(c, "steps", cmd.steps);
        if (c.contains("measures")) {
            cmd.measures = {};
            for (const auto& mk : c.at("measures")) {
                switch (parse_measure_kind(mk.get<std::string>())) {
                    case MeasureKind::Entropy: cmd.measures.entropy = true; break;
                    case MeasureKind::MutualInformation: cmd.measures.mi = true; break;
                    case MeasureKind::NegativityProxy: cmd.measures.negativity = true; break;
                    case MeasureKind::Multipartite: cmd.measures.multipartite = true; break;
                }
            }
        }
        if (c.contains("bracket")) {
            const Json& b = c.at("bracket");
            if (!b.is_array() || b.size() != 2) throw ConfigError("bracket must be [lo, hi]");
            cmd.bracket = std::make_pair(b[0].get<double>(), b[1].get<double>());
        }
        if (c.contains("measure"))
            cmd.transition_measure = parse_measure_kind(c.at("measure").get<std::string>());
        cmd.out_dir = detail::json_get<std::string>(c, "out_dir", cmd.out_dir);
    }
}

// The fully resolved configuration, echoed into output metadata. Canonical
// key order, so identical configurations serialize to identical bytes.
inline Json resolved_config_json(const RunConfig& cfg) {
    Json g;
    g["kind"] = cfg.geometry.kind_name();
    g["d"] = cfg.geometry.d;
    g["L"] = cfg.geometry.L;
    if (cfg.geometry.kind == GeometryKind::BlackBrane) g["z_h"] = cfg.geometry.z_h;
    if (cfg.geometry.kind == GeometryKind::HardWall) g["z_w"] = cfg.geometry.z_w;
    if (cfg.geometry.kind == GeometryKind::Tabulated) {
        Json rows = Json::array();
        for (const auto& s : cfg.geometry.profile) rows.push_back({s.z, s.f});
        g["profile"] = rows;
    }

    Json cmd;
    cmd["name"] = cfg.command.name;
    if (cfg.command.length) cmd["length"] = *cfg.command.length;
    if (!cfg.command.lengths.empty()) cmd["lengths"] = cfg.command.lengths;
    if (!cfg.command.gaps.empty()) cmd["gaps"] = cfg.command.gaps;
    if (cfg.command.origin != 0.0) cmd["origin"] = cfg.command.origin;
    if (!cfg.command.intervals.empty()) {
        Json rows = Json::array();
        for (const auto& iv : cfg.command.intervals) rows.push_back({iv.a, iv.b});
        cmd["intervals"] = rows;
    }
    if (cfg.command.parameter) cmd["parameter"] = sweep_parameter_name(*cfg.command.parameter);
    if (cfg.command.steps > 0) {
        cmd["start"] = cfg.command.start;
        cmd["stop"] = cfg.command.stop;
        cmd["steps"] = cfg.command.steps;
    }
    if (cfg.command.measures.any()) {
        Json ms = Json::array();
        if (cfg.command.measures.entropy) ms.push_back("entropy");
        if (cfg.command.measures.mi) ms.push_back("mi");
        if (cfg.command.measures.negativity) ms.push_back("negativity");
        if (cfg.command.measures.multipartite) ms.push_back("multipartite");
        cmd["measures"] = ms;
    }
    if (cfg.command.bracket)
        cmd["bracket"] = {cfg.command.bracket->first, cfg.command.bracket->second};
    if (cfg.command.name == "transition")
        cmd["measure"] = measure_kind_name(cfg.command.transition_measure);
    if (cfg.command.name == "figures") cmd["out_dir"] = cfg.command.out_dir;

    Json doc;
    doc["geometry"] = g;
    doc["units"] = Json{{"four_G_N", cfg.units.four_G_N},
                        {"central_charge", cfg.units.central_charge(cfg.geometry.L)}};
    doc["cutoff"] = cfg.cutoff;
    doc["quadrature"] = Json{{"node_count", cfg.quad.node_count}, {"rel_tol", cfg.quad.rel_tol}};
    doc["output"] = Json{{"path", cfg.output.path},
                         {"format", series_format_name(cfg.output.format)}};
    doc["cache"] = Json{{"enabled", cfg.cache.enabled}, {"path", cfg.cache.path}};
    doc["seed"] = cfg.seed;
    doc["command"] = cmd;
    return doc;
}

// Validate the pieces every command relies on; throws ConfigError.
inline void validate_run_config(const RunConfig& cfg) {
    try {
        validate_geometry(cfg.geometry);
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("bad geometry: ") + e.what());
    }
    if (!(cfg.cutoff > 0.0)) throw ConfigError("cutoff must be positive");
    if (cfg.quad.node_count < 16) throw ConfigError("quadrature.node_count must be at least 16");
    if (!(cfg.quad.rel_tol > 0.0)) throw ConfigError("quadrature.rel_tol must be positive");
    if (!(cfg.units.four_G_N > 0.0)) throw ConfigError("four_G_N must be positive");
}

// Intervals for the current command: explicit intervals win, otherwise
// lengths and gaps are laid out from the origin. A single gap value is
// replicated between all consecutive pairs.
inline IntervalSet build_intervals(const CommandSpec& cmd) {
    if (!cmd.intervals.empty()) return IntervalSet(cmd.intervals);
    if (cmd.lengths.empty()) throw ConfigError("no intervals given (use --intervals or --lengths)");
    std::vector<double> gaps = cmd.gaps;
    if (cmd.lengths.size() > 1) {
        if (gaps.empty()) throw ConfigError("need --gap/--gaps for multiple intervals");
        while (gaps.size() < cmd.lengths.size() - 1) gaps.push_back(gaps.front());
    }
    try {
        return IntervalSet::from_lengths_gaps(cmd.lengths, gaps, cmd.origin);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("bad interval layout: ") + e.what());
    }
}

}  // namespace holo
