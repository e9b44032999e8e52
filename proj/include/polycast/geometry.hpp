// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polycast {

/// Thrown when an operation requires a usable edge and the input does not
/// provide one: identical endpoints, or a horizontal edge lying exactly on
/// the query ray (the parametric crossing divides by d_y).
struct DegenerateEdge : std::runtime_error {
    explicit DegenerateEdge(const std::string& what) : std::runtime_error(what) {}
};

/// 2-D point. Coordinates must be finite; NaN and infinity are rejected at
/// construction so the crossing tests never see them.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {
        if (!std::isfinite(px) || !std::isfinite(py)) {
            throw std::invalid_argument("Point2: coordinates must be finite");
        }
    }

    friend bool operator==(const Point2& a, const Point2& b) {
        return a.x == b.x && a.y == b.y;
    }
};

/// Closed vertex loop. The closing vertex is stored explicitly: the first
/// and last entries are exactly equal, so a triangle has size() == 4.
/// Zero-length edges (consecutive duplicate vertices) are rejected because
/// they have no direction vector and no normal.
class Ring {
  public:
    explicit Ring(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
        if (verts_.size() < 4) {
            throw std::invalid_argument("Ring: need at least 4 vertices (closed triangle)");
        }
        if (!(verts_.front() == verts_.back())) {
            throw std::invalid_argument("Ring: first and last vertex must be equal");
        }
        for (std::size_t i = 0; i + 1 < verts_.size(); ++i) {
            if (verts_[i] == verts_[i + 1]) {
                throw std::invalid_argument("Ring: consecutive duplicate vertex at index " +
                                            std::to_string(i));
            }
        }
    }

    /// Vertex count including the closing duplicate.
    std::size_t size() const { return verts_.size(); }
    std::size_t edge_count() const { return verts_.size() - 1; }
    const Point2& operator[](std::size_t i) const { return verts_[i]; }
    std::span<const Point2> vertices() const { return verts_; }

  private:
    std::vector<Point2> verts_;
};

/// One outer boundary plus optional hole rings, combined by even-odd parity.
class Polygon {
  public:
    explicit Polygon(Ring outer, std::vector<Ring> holes = {}) {
        rings_.reserve(1 + holes.size());
        rings_.push_back(std::move(outer));
        for (auto& h : holes) rings_.push_back(std::move(h));
    }

    const Ring& outer() const { return rings_.front(); }
    std::span<const Ring> holes() const { return {rings_.data() + 1, rings_.size() - 1}; }
    std::span<const Ring> rings() const { return rings_; }

  private:
    std::vector<Ring> rings_;
};

/// Edge normal oriented to form an acute (or right) angle with (1,0),
/// i.e. nx >= 0.
struct EdgeNormal {
    double nx = 0.0;
    double ny = 0.0;
};

enum class Classification { Inside, Outside, Boundary };

/// Which crossing test drives contains():
///  - C1: inclusive sign-change scan plus a side-of-edge test against the
///    oriented edge normal ((p - r_i) . n <= 0). No division anywhere.
///  - C2: inclusive sign-change scan plus the parametric intersection
///    x = x_i + lambda * d_x with lambda = (p_y - y_i) / d_y, counting
///    strictly x > p_x. Throws DegenerateEdge on horizontal edges at p_y.
///  - Robust: half-open vertex rule (counts an edge iff exactly one endpoint
///    is at-or-below the ray) with explicit Boundary detection. Immune to
///    vertex double counting and never divides by zero.
enum class CrossingMode { C1, C2, Robust };

/// Points within this distance of an edge classify Boundary in Robust mode.
inline constexpr double kDefaultBoundaryTol = 1e-12;

/// Signed vertical offsets f_i = y_i - p_y of every ring vertex from the
/// horizontal ray through p. Opposite signs on an edge's endpoints mean the
/// edge straddles the ray line.
inline std::vector<double> signed_offsets(const Ring& ring, double p_y) {
    std::vector<double> out;
    out.reserve(ring.size());
    for (const Point2& v : ring.vertices()) out.push_back(v.y - p_y);
    return out;
}

/// Indices i with offsets[i] * offsets[i+1] <= 0, ascending. The inclusive
/// comparison counts a vertex sitting exactly on the ray in both adjacent
/// edges; Robust mode exists to avoid that hazard.
inline std::vector<std::size_t> detect_sign_changes(std::span<const double> offsets) {
    if (offsets.size() < 2) {
        throw std::invalid_argument("detect_sign_changes: need at least 2 offsets");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
        if (offsets[i] * offsets[i + 1] <= 0.0) out.push_back(i);
    }
    return out;
}

/// Normal of the edge a->b, flipped so nx >= 0.
inline EdgeNormal edge_normal(const Point2& a, const Point2& b) {
    if (a == b) throw DegenerateEdge("edge_normal: zero-length edge");
    double nx = b.y - a.y;
    double ny = a.x - b.x;
    if (nx < 0.0) {
        nx = -nx;
        ny = -ny;
    }
    return {nx, ny};
}

inline EdgeNormal edge_normal_c1(const Ring& ring, std::size_t edge_index) {
    return edge_normal(ring[edge_index], ring[edge_index + 1]);
}

/// X-coordinate where the horizontal line y = p_y meets the infinite line
/// through a and b. Throws DegenerateEdge when the edge is horizontal.
inline double crossing_x(const Point2& a, const Point2& b, double p_y) {
    const double dy = b.y - a.y;
    if (dy == 0.0) throw DegenerateEdge("crossing_x: horizontal edge has no unique crossing");
    const double lambda = (p_y - a.y) / dy;
    return a.x + lambda * (b.x - a.x);
}

inline double crossing_x_c2(const Ring& ring, std::size_t edge_index, double p_y) {
    return crossing_x(ring[edge_index], ring[edge_index + 1], p_y);
}

/// Euclidean distance from p to the closed segment ab.
inline double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double apx = p.x - a.x;
    const double apy = p.y - a.y;
    const double len2 = abx * abx + aby * aby;
    double t = len2 > 0.0 ? (apx * abx + apy * aby) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = apx - t * abx;
    const double dy = apy - t * aby;
    return std::sqrt(dx * dx + dy * dy);
}

/// Rightward-ray crossings of one ring using the side-of-normal test.
/// Counts edges with an inclusive sign change whose crossing is at or to the
/// right of p (the side test (p - r_i) . n <= 0 is equivalent to x >= p_x).
inline std::size_t count_crossings_c1(const Point2& p, const Ring& ring) {
    std::size_t count = 0;
    const std::size_t edges = ring.edge_count();
    double f_prev = ring[0].y - p.y;
    for (std::size_t i = 0; i < edges; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[i + 1];
        const double f_next = b.y - p.y;
        if (f_prev * f_next <= 0.0) {
            double nx = b.y - a.y;
            double ny = a.x - b.x;
            if (nx < 0.0) {
                nx = -nx;
                ny = -ny;
            }
            const double side = (p.x - a.x) * nx + (p.y - a.y) * ny;
            if (side <= 0.0) ++count;
        }
        f_prev = f_next;
    }
    return count;
}

/// Rightward-ray crossings of one ring using the parametric intersection,
/// counting strictly x > p_x. Horizontal edges lying exactly on the ray
/// raise DegenerateEdge rather than dividing by zero.
inline std::size_t count_crossings_c2(const Point2& p, const Ring& ring) {
    std::size_t count = 0;
    const std::size_t edges = ring.edge_count();
    double f_prev = ring[0].y - p.y;
    for (std::size_t i = 0; i < edges; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[i + 1];
        const double f_next = b.y - p.y;
        if (f_prev * f_next <= 0.0) {
            const double dy = b.y - a.y;
            if (dy == 0.0) {
                throw DegenerateEdge("count_crossings_c2: horizontal edge " + std::to_string(i) +
                                     " lies on the query ray");
            }
            const double lambda = (p.y - a.y) / dy;
            const double x = a.x + lambda * (b.x - a.x);
            if (x > p.x) ++count;
        }
        f_prev = f_next;
    }
    return count;
}

namespace detail {

/// Half-open crossing count for one ring; boundary proximity is reported
/// through `on_boundary` instead of a verdict so the caller can scan all
/// rings. An edge is counted iff exactly one endpoint is at-or-below the
/// ray, which excludes horizontal edges and counts each vertex once.
inline std::size_t robust_ray_crossings(const Point2& p, const Ring& ring, double boundary_tol,
                                        bool& on_boundary) {
    std::size_t count = 0;
    const std::size_t edges = ring.edge_count();
    const double tol2 = boundary_tol * boundary_tol;
    for (std::size_t i = 0; i < edges; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[i + 1];
        // Cheap band reject: neither a crossing nor a boundary hit is
        // possible when p_y is more than tol outside the edge's y-range.
        const double ylo = std::min(a.y, b.y);
        const double yhi = std::max(a.y, b.y);
        if (p.y + boundary_tol < ylo || p.y - boundary_tol > yhi) continue;

        const double abx = b.x - a.x;
        const double aby = b.y - a.y;
        const double apx = p.x - a.x;
        const double apy = p.y - a.y;
        const double len2 = abx * abx + aby * aby;
        double t = (apx * abx + apy * aby) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = apx - t * abx;
        const double dyp = apy - t * aby;
        if (dx * dx + dyp * dyp <= tol2) {
            on_boundary = true;
            return count;
        }

        const bool upward = a.y <= p.y && p.y < b.y;
        const bool downward = b.y <= p.y && p.y < a.y;
        if (upward || downward) {
            const double x = a.x + (p.y - a.y) / aby * abx;
            if (x > p.x) ++count;
        }
    }
    return count;
}

} // namespace detail

/// Even-odd classification of p against the polygon (outer ring plus holes).
/// C1/C2 replicate the inclusive-comparison listings verbatim and never
/// return Boundary; Robust adds the half-open rule and an explicit Boundary
/// verdict for points within boundary_tol of any edge.
inline Classification contains(const Point2& p, const Polygon& poly, CrossingMode mode,
                               double boundary_tol = kDefaultBoundaryTol) {
    std::size_t total = 0;
    switch (mode) {
    case CrossingMode::C1:
        for (const Ring& ring : poly.rings()) total += count_crossings_c1(p, ring);
        break;
    case CrossingMode::C2:
        for (const Ring& ring : poly.rings()) total += count_crossings_c2(p, ring);
        break;
    case CrossingMode::Robust:
        for (const Ring& ring : poly.rings()) {
            bool on_boundary = false;
            total += detail::robust_ray_crossings(p, ring, boundary_tol, on_boundary);
            if (on_boundary) return Classification::Boundary;
        }
        break;
    }
    return (total % 2 == 1) ? Classification::Inside : Classification::Outside;
}

inline const char* to_string(Classification c) {
    switch (c) {
    case Classification::Inside: return "inside";
    case Classification::Outside: return "outside";
    case Classification::Boundary: return "boundary";
    }
    return "?";
}

/// CLI/report token for a mode.
inline const char* mode_token(CrossingMode mode) {
    switch (mode) {
    case CrossingMode::C1: return "c1";
    case CrossingMode::C2: return "c2";
    case CrossingMode::Robust: return "robust";
    }
    return "?";
}

} // namespace polycast
