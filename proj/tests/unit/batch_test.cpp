// Copyright (c) 2026 polycast contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <polycast/batch.hpp>
#include <polycast/bench.hpp>

#include "../support/random_shapes.hpp"

using namespace polycast;
using polycast::testing::random_simple_polygon;
using polycast::testing::uniform_in;

namespace {

Polygon unit_square_polygon() {
    return Polygon(Ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}));
}

} // namespace

TEST_CASE("bbox_of") {
    CHECK(bbox_of(unit_square_polygon()) == BBox(0, 0, 1, 1));
    CHECK(bbox_of(Polygon(Ring({{-2, 3}, {5, 3}, {5, 7}, {-2, 7}, {-2, 3}}))) == BBox(-2, 3, 5, 7));
    CHECK(bbox_of(Polygon(Ring({{0, 0}, {4, 0}, {0, 3}, {0, 0}}))) == BBox(0, 0, 4, 3));
}

TEST_CASE("BBox validation and inflation") {
    CHECK_THROWS_AS(BBox(1, 0, 0, 0), std::invalid_argument);
    const BBox grown = BBox(0, 0, 1, 1).inflated(0.10);
    CHECK(grown.min_x == Catch::Approx(-0.05));
    CHECK(grown.max_x == Catch::Approx(1.05));
}

TEST_CASE("prefilter_bbox splits and maps indices") {
    PointBatch batch;
    batch.points = {{0.5, 0.5}, {2, 2}};
    const PrefilterResult pre = prefilter_bbox(batch, BBox(0, 0, 1, 1));
    REQUIRE(pre.inside_box.size() == 1);
    CHECK(pre.inside_box.points[0] == Point2{0.5, 0.5});
    CHECK(pre.original_indices == std::vector<std::size_t>{0});
    CHECK(pre.outside_count == 1);

    // closed interval: a point exactly on the box edge is retained
    PointBatch edge_case;
    edge_case.points = {{1.0, 0.5}};
    CHECK(prefilter_bbox(edge_case, BBox(0, 0, 1, 1)).inside_box.size() == 1);
}

TEST_CASE("scatter_verdicts reconstructs input order") {
    PointBatch batch;
    batch.points = {{0.5, 0.5}, {2, 2}, {0.1, 0.1}, {-3, 0}};
    const PrefilterResult pre = prefilter_bbox(batch, BBox(0, 0, 1, 1));
    REQUIRE(pre.inside_box.size() == 2);
    const std::vector<Verdict> scattered =
        scatter_verdicts(pre, {Verdict::Inside, Verdict::Boundary});
    CHECK(scattered == std::vector<Verdict>{Verdict::Inside, Verdict::Outside, Verdict::Boundary,
                                            Verdict::Outside});
    CHECK_THROWS_AS(scatter_verdicts(pre, {Verdict::Inside}), std::invalid_argument);
}

TEST_CASE("classify_batch probe points") {
    PointBatch batch;
    batch.points = {{0.5, 0.5}, {1.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}};
    const BatchResult res = classify_batch(batch, unit_square_polygon(), CrossingMode::Robust);
    CHECK(res.verdicts == std::vector<Verdict>{Verdict::Inside, Verdict::Outside, Verdict::Outside,
                                               Verdict::Outside});
    CHECK(res.stats.inside == 1);
    CHECK(res.stats.outside == 3);
    CHECK(res.stats.total() == batch.size());
}

TEST_CASE("classify_batch records degenerate points instead of aborting") {
    PointBatch batch;
    batch.points = {{0.5, 0.0}, {0.5, 0.5}, {-2.0, 0.5}};
    const BatchResult res = classify_batch(batch, unit_square_polygon(), CrossingMode::C2);
    CHECK(res.verdicts[0] == Verdict::Error); // horizontal bottom edge on the ray
    CHECK(res.verdicts[1] == Verdict::Inside);
    CHECK(res.verdicts[2] == Verdict::Outside);
    CHECK(res.stats.error == 1);
    CHECK(res.stats.total() == 3);
}

TEST_CASE("classify_batch is identical for any worker count") {
    std::mt19937_64 rng(42);
    const Polygon poly = random_simple_polygon(rng, 80);
    const PointBatch batch = random_batch(bbox_of(poly).inflated(0.3), 20000, 7);

    const BatchResult serial = classify_batch(batch, poly, CrossingMode::Robust, 1);
    for (std::size_t workers : {2u, 3u, 8u, 0u}) {
        CHECK(classify_batch(batch, poly, CrossingMode::Robust, workers) == serial);
    }
    CHECK(serial.stats.total() == batch.size());

    // degenerate-edge bookkeeping stays deterministic under parallel runs too
    PointBatch with_degenerate = batch;
    with_degenerate.points[5] = Point2{0.0, 0.0};
    const Polygon square = unit_square_polygon();
    const BatchResult s1 = classify_batch(with_degenerate, square, CrossingMode::C2, 1);
    const BatchResult s8 = classify_batch(with_degenerate, square, CrossingMode::C2, 8);
    CHECK(s1 == s8);
}

TEST_CASE("points outside the bbox short-circuit to Outside") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Polygon poly = random_simple_polygon(rng, 5 + rng() % 50);
        const BBox box = bbox_of(poly);
        const PointBatch batch = random_batch(box.inflated(1.0), 2000, trial);
        const PrefilterResult pre = prefilter_bbox(batch, box);
        const BatchResult res = classify_batch(batch, poly, CrossingMode::Robust);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (!box.contains(batch.points[i])) {
                CHECK(res.verdicts[i] == Verdict::Outside);
                CHECK(contains(batch.points[i], poly, CrossingMode::C1) == Classification::Outside);
                CHECK(contains(batch.points[i], poly, CrossingMode::Robust) == Classification::Outside);
            }
        }
        CHECK(pre.inside_box.size() + pre.outside_count == batch.size());
    }
}

TEST_CASE("classify_batch on an empty batch") {
    const BatchResult res = classify_batch(PointBatch{}, unit_square_polygon(), CrossingMode::Robust);
    CHECK(res.verdicts.empty());
    CHECK(res.stats.total() == 0);
}
