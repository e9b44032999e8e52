// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: classify points from a CSV against a GeoJSON
// polygon, benchmark the batch classifier across point counts, or fit
// previously measured timings.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <polycast/polycast.hpp>

namespace {

using namespace polycast;

CrossingMode parse_mode(const std::string& token) {
    if (token == "robust") return CrossingMode::Robust;
    if (token == "c1") return CrossingMode::C1;
    if (token == "c2") return CrossingMode::C2;
    throw CLI::ValidationError("--mode", "expected one of robust|c1|c2, got \"" + token + "\"");
}

std::size_t parse_parallelism(const std::string& token) {
    if (token == "auto") return 0;
    std::size_t value = 0;
    try {
        value = std::stoull(token);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--parallelism", "expected a positive integer or \"auto\"");
    }
    if (value == 0) throw CLI::ValidationError("--parallelism", "worker count must be >= 1");
    return value;
}

ColumnRef parse_column(const std::string& token) {
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        return std::size_t(std::stoull(token));
    }
    return token;
}

struct ClassifyArgs {
    std::string points_path;
    std::string polygon_path;
    std::string out_path;
    std::string mode = "robust";
    std::string parallelism = "auto";
    std::string x_col = "0";
    std::string y_col = "1";
    std::string delimiter = ",";
    bool no_header = false;
    bool lenient = false;
    double boundary_tol = kDefaultBoundaryTol;
};

int cmd_classify(const ClassifyArgs& args) {
    const CrossingMode mode = parse_mode(args.mode);
    const std::size_t workers = parse_parallelism(args.parallelism);

    const Polygon poly = read_polygon_geojson(args.polygon_path);

    PointsFileSpec spec;
    spec.path = args.points_path;
    spec.x_column = parse_column(args.x_col);
    spec.y_column = parse_column(args.y_col);
    spec.has_header = !args.no_header;
    spec.delimiter = args.delimiter.empty() ? ',' : args.delimiter[0];
    spec.lenient = args.lenient;
    const CsvPoints input = read_points_csv(spec);

    const auto t0 = std::chrono::steady_clock::now();
    const PrefilterResult pre = prefilter_bbox(input.batch, bbox_of(poly));
    const BatchResult inbox = classify_batch(pre.inside_box, poly, mode, workers, args.boundary_tol);
    const std::vector<Verdict> verdicts = scatter_verdicts(pre, inbox.verdicts);
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(t1 - t0).count();

    std::vector<ResultRecord> records;
    records.reserve(verdicts.size());
    BatchStats stats;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        records.push_back({i, input.batch.points[i].x, input.batch.points[i].y, verdicts[i]});
        stats.bump(verdicts[i]);
    }
    write_results_csv(records, args.out_path);

    std::printf("points=%zu inside=%zu outside=%zu boundary=%zu error=%zu "
                "prefilter_outside=%zu skipped_rows=%zu elapsed_s=%.6f\n",
                verdicts.size(), stats.inside, stats.outside, stats.boundary, stats.error,
                pre.outside_count, input.skipped_rows, elapsed);
    return 0;
}

struct BenchArgs {
    std::string polygon_path;
    std::string out_path = "bench_report.json";
    std::vector<std::string> modes;
    std::string parallelism = "auto";
    std::vector<std::size_t> sizes = {10, 100, 1000, 10000};
    std::size_t reps = 3;
    std::uint64_t seed = 42;
};

void print_fit_table(const std::map<std::string, FitCoefficients>& fits) {
    for (const auto& [label, fit] : fits) {
        std::printf("fit algorithm=%s slope=%.17g intercept=%.17g\n", label.c_str(), fit.slope,
                    fit.intercept);
        if (fit.slope < 0.0) {
            std::fprintf(stderr, "warning: negative slope for %s; timing data is suspect\n",
                         label.c_str());
        }
    }
}

int cmd_bench(const BenchArgs& args) {
    const std::size_t workers = parse_parallelism(args.parallelism);
    std::vector<std::string> mode_tokens = args.modes;
    if (mode_tokens.empty()) mode_tokens.push_back("robust");

    const Polygon poly = read_polygon_geojson(args.polygon_path);

    std::vector<TimingSample> samples;
    for (const std::string& token : mode_tokens) {
        const CrossingMode mode = parse_mode(token);
        const auto mode_samples =
            run_scaling_bench(poly, args.sizes, mode, workers, args.reps, args.seed);
        samples.insert(samples.end(), mode_samples.begin(), mode_samples.end());
    }

    const GroupedFits grouped = fit_per_algorithm(samples);
    for (const std::string& label : grouped.degenerate) {
        std::fprintf(stderr, "least-squares fit skipped for %s: need samples at two or more "
                             "distinct point counts\n",
                     label.c_str());
    }
    std::vector<TimingSample> fitted_samples;
    for (const TimingSample& s : samples) {
        if (grouped.fits.count(s.algorithm) != 0) fitted_samples.push_back(s);
    }
    const ErrorReport errors = error_report(grouped.fits, fitted_samples);
    emit_report(samples, grouped.fits, errors, args.out_path);
    for (const TimingSample& s : samples) {
        std::printf("sample algorithm=%s n=%zu seconds=%.6f\n", s.algorithm.c_str(), s.n_points,
                    s.elapsed_seconds);
    }
    print_fit_table(grouped.fits);
    std::printf("report=%s flat_csv=%s\n", args.out_path.c_str(),
                flat_csv_path(args.out_path).string().c_str());
    return 0;
}

struct FitReportArgs {
    std::string samples_path;
    std::string out_path = "fit_report.json";
};

int cmd_fit_report(const FitReportArgs& args) {
    const std::vector<TimingSample> samples = read_samples_csv(args.samples_path);
    const GroupedFits grouped = fit_per_algorithm(samples);
    for (const std::string& label : grouped.degenerate) {
        std::fprintf(stderr, "least-squares fit skipped for %s: need samples at two or more "
                             "distinct point counts\n",
                     label.c_str());
    }
    std::vector<TimingSample> fitted_samples;
    for (const TimingSample& s : samples) {
        if (grouped.fits.count(s.algorithm) != 0) fitted_samples.push_back(s);
    }
    const ErrorReport errors = error_report(grouped.fits, fitted_samples);
    emit_report(samples, grouped.fits, errors, args.out_path);
    print_fit_table(grouped.fits);
    std::printf("report=%s flat_csv=%s\n", args.out_path.c_str(),
                flat_csv_path(args.out_path).string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch point-in-polygon classification and scaling benchmarks"};
    app.require_subcommand(1);

    ClassifyArgs classify_args;
    CLI::App* classify = app.add_subcommand("classify", "classify a CSV of points against a polygon");
    classify->add_option("--points", classify_args.points_path, "points CSV path")->required();
    classify->add_option("--polygon", classify_args.polygon_path, "polygon GeoJSON path")->required();
    classify->add_option("--out", classify_args.out_path, "results CSV path")->required();
    classify->add_option("--mode", classify_args.mode, "crossing mode: robust|c1|c2 (default robust)");
    classify->add_option("--parallelism", classify_args.parallelism, "worker count or auto");
    classify->add_option("--x-col", classify_args.x_col, "x column name or 0-based index (default 0)");
    classify->add_option("--y-col", classify_args.y_col, "y column name or 0-based index (default 1)");
    classify->add_option("--delimiter", classify_args.delimiter, "field delimiter (default ,)");
    classify->add_flag("--no-header", classify_args.no_header, "points file has no header row");
    classify->add_flag("--lenient", classify_args.lenient, "skip unparseable rows instead of failing");
    classify->add_option("--boundary-tol", classify_args.boundary_tol,
                         "boundary tolerance for robust mode (default 1e-12)");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "time classify_batch across point counts");
    bench->add_option("--polygon", bench_args.polygon_path, "polygon GeoJSON path")->required();
    bench->add_option("--out", bench_args.out_path, "report JSON path (flat CSV written alongside)");
    bench->add_option("--mode", bench_args.modes, "mode to benchmark; repeat for several")
        ->take_all();
    bench->add_option("--parallelism", bench_args.parallelism, "worker count or auto");
    bench->add_option("--sizes", bench_args.sizes, "ascending point counts")->delimiter(',');
    bench->add_option("--reps", bench_args.reps, "timed repetitions per size (default 3)");
    bench->add_option("--seed", bench_args.seed, "point generation seed (default 42)");

    FitReportArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit-report", "fit existing n,algorithm,seconds samples");
    fit->add_option("--samples", fit_args.samples_path, "samples CSV path")->required();
    fit->add_option("--out", fit_args.out_path, "report JSON path (flat CSV written alongside)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(classify_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (fit->parsed()) return cmd_fit_report(fit_args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
