#include <doctest.h>

#include <cmath>
#include <random>

#include "seatplan/geometry.hpp"
#include "support.hpp"

using namespace seatplan;
using testsupport::error_code;

TEST_CASE("centroid is the box midpoint") {
    CHECK(centroid({{0, 0}, {60, 60}}) == Point{30, 30});
    CHECK(centroid({{10, 20}, {70, 50}}) == Point{40, 35});
    CHECK(centroid({{5, 5}, {5, 5}}) == Point{5, 5});
}

TEST_CASE("rescale multiplies per axis") {
    CHECK(rescale(Point{100, 200}, {1, 1}) == Point{100, 200});
    CHECK(rescale(Point{100, 200}, {0.5, 0.5}) == Point{50, 100});
    CHECK(rescale(Point{10, 10}, {2, 0.5}) == Point{20, 5});
}

TEST_CASE("rescale rejects non-positive factors") {
    CHECK(error_code([] { rescale(Point{1, 1}, {0, 1}); }) == ErrorCode::invalid_transform);
    CHECK(error_code([] { rescale(Point{1, 1}, {1, -2}); }) == ErrorCode::invalid_transform);
    CHECK(error_code([] { rescale(Point{1, 1}, {NAN, 1}); }) == ErrorCode::invalid_transform);
}

TEST_CASE("distance examples") {
    CHECK(distance({0, 0}, {0, 0}) == 0.0);
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(distance({0, 0}, {60, 60}) == doctest::Approx(60.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(distance({0, 0}, {60, 60}) > 84.85);
}

TEST_CASE("bounding box validation") {
    CHECK_FALSE(error_code([] { validate(BoundingBox{{5, 5}, {5, 5}}); }));
    CHECK(error_code([] { validate(BoundingBox{{6, 0}, {5, 5}}); }) == ErrorCode::invalid_argument);
    CHECK(error_code([] { validate(BoundingBox{{0, 0}, {INFINITY, 5}}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("distance properties on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1000, 1000);
    for (int i = 0; i < 2000; ++i) {
        Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        CHECK(distance(a, b) == distance(b, a));
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
        double s = std::abs(u(rng)) / 100 + 0.01;
        CHECK(distance(rescale(a, {s, s}), rescale(b, {s, s})) ==
              doctest::Approx(s * distance(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("centroid does not depend on corner order") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-500, 500);
    for (int i = 0; i < 500; ++i) {
        Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
        CHECK(centroid(BoundingBox::from_corners(a, b)) == centroid(BoundingBox::from_corners(b, a)));
        CHECK(centroid(BoundingBox::from_corners(Point{a.x, b.y}, Point{b.x, a.y})) ==
              centroid(BoundingBox::from_corners(a, b)));
    }
}

TEST_CASE("intersection over union") {
    BoundingBox a{{0, 0}, {10, 10}}, b{{5, 0}, {15, 10}}, c{{20, 20}, {30, 30}};
    CHECK(intersection_area(a, b) == 50.0);
    CHECK(intersection_over_union(a, b) == doctest::Approx(50.0 / 150.0));
    CHECK(intersection_over_union(a, c) == 0.0);
    CHECK(intersection_over_union(a, a) == 1.0);
}
