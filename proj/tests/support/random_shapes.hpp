// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <polycast/batch.hpp>
#include <polycast/geometry.hpp>

namespace polycast::testing {

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
}

// Star-shaped ring around `center`: strictly increasing angles (jittered
// uniform spacing keeps them distinct) with radii in [rmin, rmax]. Always
// simple. rmin == rmax yields a convex ring inscribed in a circle.
inline Ring star_ring(std::mt19937_64& rng, std::size_t vertex_count, Point2 center, double rmin,
                      double rmax) {
    std::vector<Point2> verts;
    verts.reserve(vertex_count + 1);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) {
        const double theta = step * (static_cast<double>(i) + uniform_in(rng, 0.05, 0.95));
        const double r = uniform_in(rng, rmin, rmax);
        verts.emplace_back(center.x + r * std::cos(theta), center.y + r * std::sin(theta));
    }
    verts.push_back(verts.front());
    return Ring(std::move(verts));
}

inline Ring convex_ring(std::mt19937_64& rng, std::size_t vertex_count, Point2 center, double radius) {
    return star_ring(rng, vertex_count, center, radius, radius);
}

// Alternates convex and star-shaped outlines; every ring is simple.
inline Polygon random_simple_polygon(std::mt19937_64& rng, std::size_t vertex_count) {
    const Point2 center(uniform_in(rng, -10.0, 10.0), uniform_in(rng, -10.0, 10.0));
    const double radius = uniform_in(rng, 0.5, 20.0);
    if (rng() % 2 == 0) return Polygon(convex_ring(rng, vertex_count, center, radius));
    return Polygon(star_ring(rng, vertex_count, center, 0.35 * radius, radius));
}

// Star-shaped outer ring with a small star-shaped hole around the same
// center. The hole's largest radius stays below the outer ring's smallest,
// so the hole is strictly inside.
inline Polygon random_polygon_with_hole(std::mt19937_64& rng, std::size_t outer_vertices,
                                        std::size_t hole_vertices) {
    const Point2 center(uniform_in(rng, -10.0, 10.0), uniform_in(rng, -10.0, 10.0));
    const double radius = uniform_in(rng, 1.0, 20.0);
    Ring outer = star_ring(rng, outer_vertices, center, 0.5 * radius, radius);
    Ring hole = star_ring(rng, hole_vertices, center, 0.1 * radius, 0.3 * radius);
    return Polygon(std::move(outer), {std::move(hole)});
}

inline PointBatch random_points_in(std::mt19937_64& rng, const BBox& box, std::size_t count) {
    PointBatch batch;
    batch.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        batch.points.emplace_back(uniform_in(rng, box.min_x, box.max_x),
                                  uniform_in(rng, box.min_y, box.max_y));
    }
    return batch;
}

} // namespace polycast::testing
