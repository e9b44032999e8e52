// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polycast/batch.hpp"
#include "polycast/geometry.hpp"

namespace polycast {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct FileNotFound : IoError {
    explicit FileNotFound(const std::filesystem::path& p)
        : IoError("file not found: " + p.string()) {}
};

/// A cell failed to parse. `row` is the 1-based data row (the header, when
/// present, is not counted).
struct CsvParseError : IoError {
    std::size_t row;
    std::string column;
    CsvParseError(std::size_t row_, std::string column_, const std::string& reason)
        : IoError("row " + std::to_string(row_) + ", column " + column_ + ": " + reason),
          row(row_),
          column(std::move(column_)) {}
};

struct ColumnMissing : IoError {
    std::string column;
    explicit ColumnMissing(std::string column_)
        : IoError("column not found: " + column_), column(std::move(column_)) {}
};

struct GeoJsonError : IoError {
    explicit GeoJsonError(const std::string& what) : IoError("invalid GeoJSON: " + what) {}
};

struct UnsupportedGeometry : GeoJsonError {
    std::string geometry_type;
    explicit UnsupportedGeometry(std::string type, const std::string& hint = {})
        : GeoJsonError("unsupported geometry type \"" + type + "\"" +
                       (hint.empty() ? "" : "; " + hint)),
          geometry_type(std::move(type)) {}
};

struct RingTooShort : GeoJsonError {
    explicit RingTooShort(const std::string& what) : GeoJsonError(what) {}
};

/// Column selector: header name, or 0-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct PointsFileSpec {
    std::filesystem::path path;
    ColumnRef x_column = std::size_t{0};
    ColumnRef y_column = std::size_t{1};
    bool has_header = true;
    char delimiter = ',';
    bool lenient = false; // skip and count bad rows instead of throwing
};

struct CsvPoints {
    PointBatch batch;
    std::size_t skipped_rows = 0; // nonzero only in lenient mode
};

namespace detail {

inline std::string column_label(const ColumnRef& ref) {
    if (const auto* name = std::get_if<std::string>(&ref)) return *name;
    return std::to_string(std::get<std::size_t>(ref));
}

inline std::string_view strip_quotes(std::string_view cell) {
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
        return cell.substr(1, cell.size() - 2);
    }
    return cell;
}

inline void split_line(std::string_view line, char delimiter, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline bool parse_double(std::string_view cell, double& out) {
    cell = strip_quotes(cell);
    // tolerate surrounding spaces from hand-edited files
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && ptr == cell.data() + cell.size() && std::isfinite(out);
}

inline std::size_t resolve_column(const ColumnRef& ref, std::span<const std::string_view> header,
                                  bool has_header) {
    if (const auto* idx = std::get_if<std::size_t>(&ref)) return *idx;
    const std::string& name = std::get<std::string>(ref);
    if (!has_header) throw ColumnMissing(name + " (named columns require a header row)");
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string_view cell = strip_quotes(header[i]);
        if (i == 0 && cell.size() >= 3 && static_cast<unsigned char>(cell[0]) == 0xEF &&
            static_cast<unsigned char>(cell[1]) == 0xBB && static_cast<unsigned char>(cell[2]) == 0xBF) {
            cell.remove_prefix(3); // UTF-8 BOM
        }
        if (cell == name) return i;
    }
    throw ColumnMissing(name);
}

inline std::string format_17g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

/// Reads a delimited text file into a PointBatch, one point per data row in
/// file order. Strict mode (default) throws CsvParseError on the first bad
/// cell; lenient mode counts and skips bad rows.
inline CsvPoints read_points_csv(const PointsFileSpec& spec) {
    if (std::visit([](const auto& a, const auto& b) {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, std::decay_t<decltype(b)>>) {
                return a == b;
            } else {
                return false;
            }
        }, spec.x_column, spec.y_column)) {
        throw std::invalid_argument("read_points_csv: x and y columns must differ");
    }
    if (!std::filesystem::exists(spec.path)) throw FileNotFound(spec.path);
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + spec.path.string());

    CsvPoints out;
    std::string line;
    std::vector<std::string_view> cells;
    std::size_t x_idx = 0;
    std::size_t y_idx = 0;
    bool columns_resolved = false;
    std::size_t data_row = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (spec.has_header) {
        if (!next_line()) throw CsvParseError(0, detail::column_label(spec.x_column), "missing header row");
        detail::split_line(line, spec.delimiter, cells);
        x_idx = detail::resolve_column(spec.x_column, cells, true);
        y_idx = detail::resolve_column(spec.y_column, cells, true);
        columns_resolved = true;
    }

    while (next_line()) {
        ++data_row;
        detail::split_line(line, spec.delimiter, cells);
        if (!columns_resolved) {
            x_idx = detail::resolve_column(spec.x_column, cells, false);
            y_idx = detail::resolve_column(spec.y_column, cells, false);
            columns_resolved = true;
        }
        double x = 0.0;
        double y = 0.0;
        const std::string x_label = detail::column_label(spec.x_column);
        const std::string y_label = detail::column_label(spec.y_column);
        if (x_idx >= cells.size() || y_idx >= cells.size()) {
            if (spec.lenient) {
                ++out.skipped_rows;
                continue;
            }
            throw CsvParseError(data_row, x_idx >= cells.size() ? x_label : y_label,
                                "row has only " + std::to_string(cells.size()) + " columns");
        }
        if (!detail::parse_double(cells[x_idx], x)) {
            if (spec.lenient) {
                ++out.skipped_rows;
                continue;
            }
            throw CsvParseError(data_row, x_label,
                                "not a finite number: \"" + std::string(cells[x_idx]) + "\"");
        }
        if (!detail::parse_double(cells[y_idx], y)) {
            if (spec.lenient) {
                ++out.skipped_rows;
                continue;
            }
            throw CsvParseError(data_row, y_label,
                                "not a finite number: \"" + std::string(cells[y_idx]) + "\"");
        }
        out.batch.points.emplace_back(x, y);
    }
    return out;
}

namespace detail {

inline Ring ring_from_geojson(const nlohmann::json& coords, std::size_t ring_index) {
    if (!coords.is_array()) throw GeoJsonError("ring must be an array of positions");
    std::vector<Point2> verts;
    verts.reserve(coords.size() + 1);
    for (const auto& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            throw GeoJsonError("position must be an array of at least two numbers");
        }
        verts.emplace_back(pos[0].get<double>(), pos[1].get<double>());
    }
    if (verts.empty()) throw RingTooShort("ring " + std::to_string(ring_index) + " is empty");
    if (!(verts.front() == verts.back())) verts.push_back(verts.front()); // auto-close
    if (verts.size() < 4) {
        throw RingTooShort("ring " + std::to_string(ring_index) + " has fewer than 3 distinct vertices");
    }
    try {
        return Ring(std::move(verts));
    } catch (const std::invalid_argument& e) {
        throw GeoJsonError("ring " + std::to_string(ring_index) + ": " + e.what());
    }
}

inline Polygon polygon_from_geometry(const nlohmann::json& geom) {
    if (!geom.is_object() || !geom.contains("type") || !geom["type"].is_string()) {
        throw GeoJsonError("geometry must be an object with a \"type\" member");
    }
    const std::string type = geom["type"].get<std::string>();
    if (type == "MultiPolygon") {
        throw UnsupportedGeometry(type, "only single Polygon geometries are supported; "
                                        "split the MultiPolygon into one Polygon per file");
    }
    if (type != "Polygon") throw UnsupportedGeometry(type);
    if (!geom.contains("coordinates") || !geom["coordinates"].is_array()) {
        throw GeoJsonError("Polygon must have a \"coordinates\" array");
    }
    const auto& rings = geom["coordinates"];
    if (rings.empty()) throw GeoJsonError("Polygon has no rings");
    Ring outer = ring_from_geojson(rings[0], 0);
    std::vector<Ring> holes;
    for (std::size_t i = 1; i < rings.size(); ++i) {
        holes.push_back(ring_from_geojson(rings[i], i));
    }
    return Polygon(std::move(outer), std::move(holes));
}

} // namespace detail

/// Loads a polygon from a GeoJSON file. Accepts a bare Polygon geometry, a
/// Feature wrapping one, or a FeatureCollection whose first feature wraps
/// one; the first linear ring is the outer boundary, the rest are holes.
/// Unclosed rings are closed by appending the first vertex.
inline Polygon read_polygon_geojson(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw GeoJsonError(e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw GeoJsonError("top-level value must be an object with a \"type\" member");
    }
    const std::string type = doc["type"].get<std::string>();
    if (type == "FeatureCollection") {
        if (!doc.contains("features") || !doc["features"].is_array() || doc["features"].empty()) {
            throw GeoJsonError("FeatureCollection has no features");
        }
        const auto& feature = doc["features"][0];
        if (!feature.is_object() || !feature.contains("geometry")) {
            throw GeoJsonError("first feature has no geometry");
        }
        return detail::polygon_from_geometry(feature["geometry"]);
    }
    if (type == "Feature") {
        if (!doc.contains("geometry")) throw GeoJsonError("feature has no geometry");
        return detail::polygon_from_geometry(doc["geometry"]);
    }
    return detail::polygon_from_geometry(doc);
}

/// One output row of a classification run, in input order.
struct ResultRecord {
    std::size_t index = 0;
    double x = 0.0;
    double y = 0.0;
    Verdict verdict = Verdict::Outside;

    friend bool operator==(const ResultRecord& a, const ResultRecord& b) {
        return a.index == b.index && a.x == b.x && a.y == b.y && a.verdict == b.verdict;
    }
};

/// Writes "index,x,y,verdict" rows. Coordinates are formatted with 17
/// significant digits, which round-trips every finite double exactly.
inline void write_results_csv(std::span<const ResultRecord> records,
                              const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path.string());
    out << "index,x,y,verdict\n";
    for (const ResultRecord& r : records) {
        out << r.index << ',' << detail::format_17g(r.x) << ',' << detail::format_17g(r.y) << ','
            << to_string(r.verdict) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

/// Reads back a file produced by write_results_csv.
inline std::vector<ResultRecord> read_results_csv(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CsvParseError(0, "index", "missing header row");
    std::vector<ResultRecord> out;
    std::vector<std::string_view> cells;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        detail::split_line(line, ',', cells);
        if (cells.size() != 4) throw CsvParseError(row, "verdict", "expected 4 columns");
        ResultRecord r;
        const auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), r.index);
        if (ec != std::errc{} || ptr != cells[0].data() + cells[0].size()) {
            throw CsvParseError(row, "index", "not an integer");
        }
        if (!detail::parse_double(cells[1], r.x)) throw CsvParseError(row, "x", "not a finite number");
        if (!detail::parse_double(cells[2], r.y)) throw CsvParseError(row, "y", "not a finite number");
        const std::string_view v = cells[3];
        if (v == "inside") r.verdict = Verdict::Inside;
        else if (v == "outside") r.verdict = Verdict::Outside;
        else if (v == "boundary") r.verdict = Verdict::Boundary;
        else if (v == "error") r.verdict = Verdict::Error;
        else throw CsvParseError(row, "verdict", "unknown verdict \"" + std::string(v) + "\"");
        out.push_back(r);
    }
    return out;
}

} // namespace polycast
