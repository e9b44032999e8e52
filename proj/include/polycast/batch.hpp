// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "polycast/geometry.hpp"

namespace polycast {

/// Dense, order-significant point set.
struct PointBatch {
    std::vector<Point2> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Axis-aligned bounding box; membership tests use closed intervals, so
/// points exactly on the box edge are retained.
struct BBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    BBox() = default;
    BBox(double x0, double y0, double x1, double y1) : min_x(x0), min_y(y0), max_x(x1), max_y(y1) {
        if (!(min_x <= max_x) || !(min_y <= max_y)) {
            throw std::invalid_argument("BBox: min must not exceed max");
        }
    }

    bool contains(const Point2& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }

    /// Box scaled about its center; factor 0.10 grows each half-extent by 10%.
    BBox inflated(double factor) const {
        const double cx = 0.5 * (min_x + max_x);
        const double cy = 0.5 * (min_y + max_y);
        const double hx = 0.5 * (max_x - min_x) * (1.0 + factor);
        const double hy = 0.5 * (max_y - min_y) * (1.0 + factor);
        return {cx - hx, cy - hy, cx + hx, cy + hy};
    }

    friend bool operator==(const BBox& a, const BBox& b) {
        return a.min_x == b.min_x && a.min_y == b.min_y && a.max_x == b.max_x && a.max_y == b.max_y;
    }
};

/// Per-point batch verdict. Error marks points whose classification raised
/// DegenerateEdge (C2 mode only); they are never silently folded into
/// Outside.
enum class Verdict : std::uint8_t { Inside, Outside, Boundary, Error };

inline Verdict to_verdict(Classification c) {
    switch (c) {
    case Classification::Inside: return Verdict::Inside;
    case Classification::Outside: return Verdict::Outside;
    case Classification::Boundary: return Verdict::Boundary;
    }
    return Verdict::Error;
}

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Boundary: return "boundary";
    case Verdict::Error: return "error";
    }
    return "?";
}

struct BatchStats {
    std::size_t inside = 0;
    std::size_t outside = 0;
    std::size_t boundary = 0;
    std::size_t error = 0;

    std::size_t total() const { return inside + outside + boundary + error; }

    void bump(Verdict v) {
        switch (v) {
        case Verdict::Inside: ++inside; break;
        case Verdict::Outside: ++outside; break;
        case Verdict::Boundary: ++boundary; break;
        case Verdict::Error: ++error; break;
        }
    }

    void add(const BatchStats& o) {
        inside += o.inside;
        outside += o.outside;
        boundary += o.boundary;
        error += o.error;
    }

    friend bool operator==(const BatchStats& a, const BatchStats& b) {
        return a.inside == b.inside && a.outside == b.outside && a.boundary == b.boundary &&
               a.error == b.error;
    }
};

struct BatchResult {
    std::vector<Verdict> verdicts; // same length and order as the input batch
    BatchStats stats;

    friend bool operator==(const BatchResult& a, const BatchResult& b) {
        return a.verdicts == b.verdicts && a.stats == b.stats;
    }
};

/// Tight bounds of the outer ring's vertices.
inline BBox bbox_of(const Polygon& poly) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const Point2& v : poly.outer().vertices()) {
        min_x = std::min(min_x, v.x);
        min_y = std::min(min_y, v.y);
        max_x = std::max(max_x, v.x);
        max_y = std::max(max_y, v.y);
    }
    return {min_x, min_y, max_x, max_y};
}

/// Points retained by the box filter, plus the bookkeeping needed to scatter
/// verdicts back into the original order.
struct PrefilterResult {
    PointBatch inside_box;
    std::vector<std::size_t> original_indices; // inside_box.points[k] == original[original_indices[k]]
    std::size_t outside_count = 0;
};

/// Splits a batch by closed-interval box membership, preserving relative
/// order of the retained points.
inline PrefilterResult prefilter_bbox(const PointBatch& batch, const BBox& box) {
    PrefilterResult out;
    for (std::size_t i = 0; i < batch.points.size(); ++i) {
        if (box.contains(batch.points[i])) {
            out.inside_box.points.push_back(batch.points[i]);
            out.original_indices.push_back(i);
        } else {
            ++out.outside_count;
        }
    }
    return out;
}

/// Rebuilds a full-length verdict sequence from prefiltered verdicts;
/// filtered-out points become Outside.
inline std::vector<Verdict> scatter_verdicts(const PrefilterResult& pre,
                                             const std::vector<Verdict>& inbox_verdicts) {
    if (inbox_verdicts.size() != pre.original_indices.size()) {
        throw std::invalid_argument("scatter_verdicts: verdict count does not match index map");
    }
    std::vector<Verdict> out(pre.original_indices.size() + pre.outside_count, Verdict::Outside);
    for (std::size_t k = 0; k < inbox_verdicts.size(); ++k) {
        out[pre.original_indices[k]] = inbox_verdicts[k];
    }
    return out;
}

inline std::size_t default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Classifies every point against the polygon. Points outside the polygon's
/// bounding box short-circuit to Outside without running the crossing scan.
/// Work is split into contiguous chunks across `workers` threads (0 = all
/// hardware threads); each worker writes disjoint, index-addressed output
/// slots, so the result is identical for every worker count. A per-point
/// DegenerateEdge is recorded as Verdict::Error and counted in stats; it
/// never aborts the batch.
inline BatchResult classify_batch(const PointBatch& batch, const Polygon& poly, CrossingMode mode,
                                  std::size_t workers = 0,
                                  double boundary_tol = kDefaultBoundaryTol) {
    BatchResult out;
    const std::size_t n = batch.size();
    out.verdicts.assign(n, Verdict::Outside);
    if (n == 0) return out;

    const BBox box = bbox_of(poly);
    std::size_t nworkers = workers == 0 ? default_worker_count() : workers;
    nworkers = std::min(nworkers, n);

    auto run_range = [&](std::size_t lo, std::size_t hi, BatchStats& stats) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Point2& p = batch.points[i];
            Verdict v = Verdict::Outside;
            if (box.contains(p)) {
                try {
                    v = to_verdict(contains(p, poly, mode, boundary_tol));
                } catch (const DegenerateEdge&) {
                    v = Verdict::Error;
                }
            }
            out.verdicts[i] = v;
            stats.bump(v);
        }
    };

    if (nworkers <= 1) {
        run_range(0, n, out.stats);
        return out;
    }

    const std::size_t chunk = (n + nworkers - 1) / nworkers;
    std::vector<BatchStats> worker_stats(nworkers);
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        const std::size_t lo = w * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        threads.emplace_back(run_range, lo, hi, std::ref(worker_stats[w]));
    }
    for (auto& t : threads) t.join();
    for (const BatchStats& s : worker_stats) out.stats.add(s);
    return out;
}

} // namespace polycast
