#pragma once

// Series emission and parsing. CSV rows follow the fixed header
//   parameter,entropy,mi,negativity_proxy,multipartite,phase,rate
// with 12-significant-digit decimals, empty cells for absent measures, and
// leading '#' metadata lines carrying the resolved configuration. The
// structured format is a single top-level array of records with the same
// field names. Both emitters are canonical: parsing an emitted file and
// re-emitting it reproduces the bytes.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/rgflow.hpp"
#include "holo/util.hpp"

namespace holo {

enum class SeriesFormat { Csv, Json };

inline const char* series_format_name(SeriesFormat f) {
    return f == SeriesFormat::Csv ? "csv" : "json";
}

struct Series {
    std::vector<std::string> metadata;  // verbatim leading comment lines, '#' included
    std::vector<ScanRecord> records;
};

inline constexpr const char* kSeriesHeader =
    "parameter,entropy,mi,negativity_proxy,multipartite,phase,rate";

namespace detail {

inline std::string csv_cell(const std::optional<double>& v) {
    return v ? format_sig12(*v) : std::string();
}

inline std::string json_cell(const std::optional<double>& v) {
    return v ? format_sig12(*v) : std::string("null");
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::optional<double> parse_cell(const std::string& s) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw IoError("trailing characters in numeric cell: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw IoError("bad numeric cell: " + s);
    }
}

inline Phase parse_phase(const std::string& s) {
    if (s == "connected") return Phase::Connected;
    if (s == "disconnected") return Phase::Disconnected;
    throw IoError("bad phase cell: " + s);
}

}  // namespace detail

inline std::string series_to_csv(const Series& s) {
    if (s.records.empty()) throw IoError("EmptySeries: refusing to emit an empty series");
    std::string out;
    for (const auto& line : s.metadata) {
        out += line;
        out += '\n';
    }
    out += kSeriesHeader;
    out += '\n';
    for (const auto& r : s.records) {
        out += format_sig12(r.parameter_value);
        out += ',';
        out += detail::csv_cell(r.entropy);
        out += ',';
        out += detail::csv_cell(r.mi);
        out += ',';
        out += detail::csv_cell(r.negativity_proxy);
        out += ',';
        out += detail::csv_cell(r.multipartite);
        out += ',';
        out += phase_name(r.phase);
        out += ',';
        out += detail::csv_cell(r.rate);
        out += '\n';
    }
    return out;
}

inline std::string series_to_json(const Series& s) {
    if (s.records.empty()) throw IoError("EmptySeries: refusing to emit an empty series");
    std::string out = "[\n";
    bool first = true;
    for (const auto& r : s.records) {
        if (!first) out += ",\n";
        first = false;
        out += "{\"parameter\":";
        out += format_sig12(r.parameter_value);
        out += ",\"entropy\":";
        out += detail::json_cell(r.entropy);
        out += ",\"mi\":";
        out += detail::json_cell(r.mi);
        out += ",\"negativity_proxy\":";
        out += detail::json_cell(r.negativity_proxy);
        out += ",\"multipartite\":";
        out += detail::json_cell(r.multipartite);
        out += ",\"phase\":\"";
        out += phase_name(r.phase);
        out += "\",\"rate\":";
        out += detail::json_cell(r.rate);
        out += "}";
    }
    out += "\n]\n";
    return out;
}

inline std::string series_to_string(const Series& s, SeriesFormat format) {
    return format == SeriesFormat::Csv ? series_to_csv(s) : series_to_json(s);
}

inline Series parse_series_csv(std::istream& in) {
    Series s;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!header_seen) {
            if (!line.empty() && line[0] == '#') {
                s.metadata.push_back(line);
                continue;
            }
            if (line != kSeriesHeader) throw IoError("bad or missing series header: " + line);
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        const auto cells = detail::split_csv_row(line);
        if (cells.size() != 7) throw IoError("bad series row: " + line);
        ScanRecord r;
        const auto p = detail::parse_cell(cells[0]);
        if (!p) throw IoError("missing parameter value: " + line);
        r.parameter_value = *p;
        r.entropy = detail::parse_cell(cells[1]);
        r.mi = detail::parse_cell(cells[2]);
        r.negativity_proxy = detail::parse_cell(cells[3]);
        r.multipartite = detail::parse_cell(cells[4]);
        r.phase = detail::parse_phase(cells[5]);
        r.rate = detail::parse_cell(cells[6]);
        s.records.push_back(std::move(r));
    }
    if (!header_seen) throw IoError("missing series header");
    return s;
}

inline Series parse_series_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad structured series: ") + e.what());
    }
    if (!doc.is_array()) throw IoError("structured series must be a top-level array of records");
    Series s;
    for (const auto& item : doc) {
        if (!item.is_object()) throw IoError("structured series entries must be objects");
        ScanRecord r;
        auto field = [&](const char* name) -> std::optional<double> {
            if (!item.contains(name) || item.at(name).is_null()) return std::nullopt;
            return item.at(name).get<double>();
        };
        const auto p = field("parameter");
        if (!p) throw IoError("record lacks a parameter value");
        r.parameter_value = *p;
        r.entropy = field("entropy");
        r.mi = field("mi");
        r.negativity_proxy = field("negativity_proxy");
        r.multipartite = field("multipartite");
        r.phase = detail::parse_phase(item.value("phase", std::string("disconnected")));
        r.rate = field("rate");
        s.records.push_back(std::move(r));
    }
    return s;
}

inline Series parse_series(std::istream& in, SeriesFormat format) {
    return format == SeriesFormat::Csv ? parse_series_csv(in) : parse_series_json(in);
}

inline void write_series_file(const std::string& path, const Series& s, SeriesFormat format) {
    const std::string body = series_to_string(s, format);  // EmptySeries raises before I/O
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace holo
