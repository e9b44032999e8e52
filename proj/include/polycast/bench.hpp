// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycast/batch.hpp"
#include "polycast/geometry.hpp"
#include "polycast/io.hpp"

namespace polycast {

/// One wall-clock measurement of classify_batch.
struct TimingSample {
    std::size_t n_points = 0;
    std::string algorithm;
    double elapsed_seconds = 0.0;
};

/// Line t = slope * n + intercept fitted to (n_points, seconds) samples.
struct FitCoefficients {
    double slope = 0.0;     // seconds per point
    double intercept = 0.0; // seconds
};

struct ErrorRow {
    std::size_t n_points = 0;
    std::string algorithm;
    double predicted_seconds = 0.0;
    double actual_seconds = 0.0;
    double absolute_error = 0.0;
    std::optional<double> relative_error; // absent when actual <= 0
};

using ErrorReport = std::vector<ErrorRow>;

struct DegenerateFit : std::runtime_error {
    explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

struct MissingFit : std::runtime_error {
    std::string algorithm;
    explicit MissingFit(std::string algorithm_)
        : std::runtime_error("no fit for algorithm: " + algorithm_),
          algorithm(std::move(algorithm_)) {}
};

/// Uniform random points over a box. The engine output is mapped to [0,1)
/// through the 53-bit mantissa directly, so batches depend only on (seed, n)
/// and not on library distribution internals.
inline PointBatch random_batch(const BBox& box, std::size_t n, std::uint64_t seed) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)};
    std::mt19937_64 rng(sq);
    auto uniform = [&](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    };
    PointBatch batch;
    batch.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = uniform(box.min_x, box.max_x);
        const double y = uniform(box.min_y, box.max_y);
        batch.points.emplace_back(x, y);
    }
    return batch;
}

/// Times classify_batch over increasing point counts. Points are drawn over
/// the polygon's bounding box inflated by 10% so a share of each batch falls
/// outside. Each size gets one untimed warm-up call, then `repetitions`
/// timed runs; the minimum is recorded (noise floor). Timing covers
/// classify_batch only. Samples are labeled with the mode token, suffixed
/// "_p" when more than one worker is active.
inline std::vector<TimingSample> run_scaling_bench(const Polygon& poly,
                                                   std::span<const std::size_t> sizes,
                                                   CrossingMode mode, std::size_t workers,
                                                   std::size_t repetitions, std::uint64_t seed) {
    if (sizes.empty()) throw std::invalid_argument("run_scaling_bench: sizes must be nonempty");
    if (sizes.front() < 1) throw std::invalid_argument("run_scaling_bench: sizes must be positive");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        if (sizes[i] >= sizes[i + 1]) {
            throw std::invalid_argument("run_scaling_bench: sizes must be strictly ascending");
        }
    }
    if (repetitions < 1) throw std::invalid_argument("run_scaling_bench: repetitions must be >= 1");

    const std::size_t effective_workers = workers == 0 ? default_worker_count() : workers;
    std::string label = mode_token(mode);
    if (effective_workers > 1) label += "_p";

    const BBox box = bbox_of(poly).inflated(0.10);
    std::vector<TimingSample> samples;
    samples.reserve(sizes.size());
    for (const std::size_t n : sizes) {
        const PointBatch batch = random_batch(box, n, seed);
        classify_batch(batch, poly, mode, effective_workers); // warm-up, untimed
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            classify_batch(batch, poly, mode, effective_workers);
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        samples.push_back({n, label, best});
    }
    return samples;
}

/// Least-squares line through (n_points, elapsed_seconds). Solved via the
/// normal equations on centered data, which keeps the solve well conditioned
/// for n up to 1e7 and is exact for collinear input. Algorithm labels are
/// ignored; callers group first if they need per-algorithm fits.
inline FitCoefficients least_squares_fit(std::span<const TimingSample> samples) {
    if (samples.size() < 2) {
        throw DegenerateFit("least_squares_fit: need at least 2 samples");
    }
    double mean_n = 0.0;
    double mean_t = 0.0;
    for (const TimingSample& s : samples) {
        mean_n += static_cast<double>(s.n_points);
        mean_t += s.elapsed_seconds;
    }
    mean_n /= static_cast<double>(samples.size());
    mean_t /= static_cast<double>(samples.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const TimingSample& s : samples) {
        const double dn = static_cast<double>(s.n_points) - mean_n;
        sxx += dn * dn;
        sxy += dn * (s.elapsed_seconds - mean_t);
    }
    if (sxx == 0.0) {
        throw DegenerateFit("least_squares_fit: all samples share one n_points value");
    }
    const double slope = sxy / sxx;
    return {slope, mean_t - slope * mean_n};
}

struct GroupedFits {
    std::map<std::string, FitCoefficients> fits;
    std::vector<std::string> degenerate; // labels whose group could not be fitted
};

/// Groups samples by algorithm label and fits each group. Groups without
/// two distinct n values are listed in `degenerate` instead of aborting the
/// remaining fits.
inline GroupedFits fit_per_algorithm(std::span<const TimingSample> samples) {
    std::map<std::string, std::vector<TimingSample>> groups;
    for (const TimingSample& s : samples) groups[s.algorithm].push_back(s);
    GroupedFits out;
    for (const auto& [label, group] : groups) {
        try {
            out.fits[label] = least_squares_fit(group);
        } catch (const DegenerateFit&) {
            out.degenerate.push_back(label);
        }
    }
    return out;
}

inline double predict(const FitCoefficients& fit, std::size_t n_points) {
    return fit.slope * static_cast<double>(n_points) + fit.intercept;
}

/// Per-sample prediction error against its algorithm's fit. Relative error
/// is |pred - actual| / actual, left empty when actual <= 0.
inline ErrorReport error_report(const std::map<std::string, FitCoefficients>& fits,
                                std::span<const TimingSample> actual) {
    ErrorReport report;
    report.reserve(actual.size());
    for (const TimingSample& s : actual) {
        const auto it = fits.find(s.algorithm);
        if (it == fits.end()) throw MissingFit(s.algorithm);
        ErrorRow row;
        row.n_points = s.n_points;
        row.algorithm = s.algorithm;
        row.predicted_seconds = predict(it->second, s.n_points);
        row.actual_seconds = s.elapsed_seconds;
        row.absolute_error = std::abs(row.predicted_seconds - row.actual_seconds);
        if (row.actual_seconds > 0.0) {
            row.relative_error = row.absolute_error / row.actual_seconds;
        }
        report.push_back(std::move(row));
    }
    return report;
}

/// Sibling path for the flat plot table written next to the JSON report.
inline std::filesystem::path flat_csv_path(const std::filesystem::path& report_path) {
    std::filesystem::path csv = report_path;
    csv.replace_extension(".csv");
    if (csv == report_path) csv += ".flat.csv";
    return csv;
}

/// Writes the report document (JSON: samples[], fits[], errors[]) at `path`
/// and a flat "n,algorithm,actual_s,predicted_s" CSV next to it.
inline void emit_report(std::span<const TimingSample> samples,
                        const std::map<std::string, FitCoefficients>& fits,
                        const ErrorReport& errors, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["samples"] = nlohmann::json::array();
    for (const TimingSample& s : samples) {
        doc["samples"].push_back({{"n", s.n_points},
                                  {"algorithm", s.algorithm},
                                  {"seconds", s.elapsed_seconds}});
    }
    doc["fits"] = nlohmann::json::array();
    for (const auto& [label, fit] : fits) {
        doc["fits"].push_back(
            {{"algorithm", label}, {"slope", fit.slope}, {"intercept", fit.intercept}});
    }
    doc["errors"] = nlohmann::json::array();
    for (const ErrorRow& row : errors) {
        nlohmann::json j{{"n", row.n_points},
                         {"algorithm", row.algorithm},
                         {"predicted_s", row.predicted_seconds},
                         {"actual_s", row.actual_seconds},
                         {"absolute_error_s", row.absolute_error}};
        j["relative_error"] =
            row.relative_error ? nlohmann::json(*row.relative_error) : nlohmann::json(nullptr);
        doc["errors"].push_back(std::move(j));
    }
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write: " + path.string());
        out << doc.dump(2) << '\n';
        if (!out) throw IoError("write failed: " + path.string());
    }
    {
        const std::filesystem::path csv_path = flat_csv_path(path);
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw IoError("cannot write: " + csv_path.string());
        out << "n,algorithm,actual_s,predicted_s\n";
        for (const ErrorRow& row : errors) {
            out << row.n_points << ',' << row.algorithm << ','
                << detail::format_17g(row.actual_seconds) << ','
                << detail::format_17g(row.predicted_seconds) << '\n';
        }
        if (!out) throw IoError("write failed: " + csv_path.string());
    }
}

/// Reads timing samples from a CSV with header columns n, algorithm, seconds
/// (any order).
inline std::vector<TimingSample> read_samples_csv(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw CsvParseError(0, "n", "missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string_view> cells;
    detail::split_line(line, ',', cells);
    std::size_t n_idx = cells.size();
    std::size_t alg_idx = cells.size();
    std::size_t sec_idx = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string_view name = detail::strip_quotes(cells[i]);
        if (name == "n") n_idx = i;
        else if (name == "algorithm") alg_idx = i;
        else if (name == "seconds") sec_idx = i;
    }
    if (n_idx == cells.size()) throw ColumnMissing("n");
    if (alg_idx == cells.size()) throw ColumnMissing("algorithm");
    if (sec_idx == cells.size()) throw ColumnMissing("seconds");

    std::vector<TimingSample> samples;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        detail::split_line(line, ',', cells);
        if (cells.size() <= std::max({n_idx, alg_idx, sec_idx})) {
            throw CsvParseError(row, "n", "row has too few columns");
        }
        TimingSample s;
        double n_value = 0.0;
        if (!detail::parse_double(cells[n_idx], n_value) || n_value < 1.0) {
            throw CsvParseError(row, "n", "not a positive count");
        }
        s.n_points = static_cast<std::size_t>(n_value);
        s.algorithm = std::string(detail::strip_quotes(cells[alg_idx]));
        if (!detail::parse_double(cells[sec_idx], s.elapsed_seconds) || s.elapsed_seconds < 0.0) {
            throw CsvParseError(row, "seconds", "not a nonnegative number");
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

} // namespace polycast
