#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "diskhull/geometry.hpp"
#include "oracles.hpp"

using namespace diskhull;
using std::numbers::pi;

namespace {

std::vector<Point2> random_disk_points(std::mt19937& gen, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(pts.size()) < n) {
        const Point2 p{u(gen), u(gen)};
        if (norm2(p) <= 1.0) pts.push_back(p);
    }
    return pts;
}

PolygonalPath random_walk_path(std::mt19937& gen, int steps, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    PolygonalPath path{{0.0, 0.0}};
    for (int i = 0; i < steps; ++i) {
        path.push_back(path.back() + Point2{g(gen), g(gen)});
    }
    return path;
}

}  // namespace

TEST_CASE("convex hull of a triangle keeps all vertices in ccw order", "[geometry]") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.vertices.size() == 3);
    CHECK(polygon_area(hull) == Catch::Approx(0.5));
    double twice = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        twice += cross(hull.vertices[i], hull.vertices[(i + 1) % 3]);
    }
    CHECK(twice > 0.0);  // counterclockwise
}

TEST_CASE("interior points are dropped", "[geometry]") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.vertices.size() == 4);
    CHECK(polygon_area(hull) == Catch::Approx(1.0));
    CHECK(polygon_perimeter(hull) == Catch::Approx(4.0));
}

TEST_CASE("degenerate hulls", "[geometry]") {
    SECTION("single point") {
        const ConvexPolygon hull = convex_hull(std::vector<Point2>{{2, 3}});
        REQUIRE(hull.vertices.size() == 1);
        CHECK(polygon_area(hull) == 0.0);
        CHECK(polygon_perimeter(hull) == 0.0);
    }
    SECTION("segment counts out and back") {
        const std::vector<Point2> pts{{0, 0}, {3, 4}};
        const ConvexPolygon hull = convex_hull(pts);
        REQUIRE(hull.vertices.size() == 2);
        CHECK(polygon_area(hull) == 0.0);
        CHECK(polygon_perimeter(hull) == Catch::Approx(10.0));
    }
    SECTION("collinear input collapses to the extremes") {
        const std::vector<Point2> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {1.5, 1.5}};
        const ConvexPolygon hull = convex_hull(pts);
        REQUIRE(hull.vertices.size() == 2);
        CHECK(polygon_perimeter(hull) == Catch::Approx(2.0 * std::sqrt(18.0)));
    }
}

TEST_CASE("non-finite coordinates are rejected", "[geometry]") {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(convex_hull(std::vector<Point2>{{0, 0}, {inf, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull(std::vector<Point2>{{nan, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull(std::vector<Point2>{}), std::invalid_argument);
}

TEST_CASE("hull matches brute-force oracle on 200 random disk points", "[geometry]") {
    std::mt19937 gen(20240817);
    const auto pts = random_disk_points(gen, 200);
    const ConvexPolygon hull = convex_hull(pts);
    CHECK(oracle::same_point_set(hull.vertices, oracle::brute_force_hull_vertices(pts)));
}

TEST_CASE("hull matches brute-force oracle on up to 12 points, 1000 trials", "[geometry][property]") {
    std::mt19937 gen(777);
    std::uniform_int_distribution<int> size_dist(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pts = random_disk_points(gen, size_dist(gen));
        const ConvexPolygon hull = convex_hull(pts);
        REQUIRE(oracle::same_point_set(hull.vertices, oracle::brute_force_hull_vertices(pts)));
    }
}

TEST_CASE("hull idempotence, containment, monotonicity", "[geometry][property]") {
    std::mt19937 gen(991);
    for (int trial = 0; trial < 200; ++trial) {
        auto pts = random_disk_points(gen, 60);
        const ConvexPolygon hull = convex_hull(pts);

        const ConvexPolygon again = convex_hull(hull.vertices);
        REQUIRE(again.vertices.size() == hull.vertices.size());
        REQUIRE(oracle::same_point_set(again.vertices, hull.vertices));

        const auto& v = hull.vertices;
        for (const Point2& p : pts) {  // signed-area containment test per edge
            for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
                REQUIRE(cross(v[i], v[(i + 1) % v.size()], p) >= -1e-12);
            }
        }

        auto more = pts;
        const auto extra = random_disk_points(gen, 20);
        more.insert(more.end(), extra.begin(), extra.end());
        const ConvexPolygon bigger = convex_hull(more);
        REQUIRE(polygon_area(bigger) >= polygon_area(hull) - 1e-15);
        REQUIRE(polygon_perimeter(bigger) >= polygon_perimeter(hull) - 1e-12);
    }
}

TEST_CASE("area agrees with fan-triangulation oracle", "[geometry]") {
    std::mt19937 gen(5150);
    const auto pts = random_disk_points(gen, 100);
    const ConvexPolygon hull = convex_hull(pts);
    CHECK(polygon_area(hull) == Catch::Approx(oracle::fan_triangulation_area(hull)).margin(1e-12));
}

TEST_CASE("regular n-gon perimeter approaches the circle", "[geometry]") {
    const int n = 1000;
    std::vector<Point2> pts;
    for (int k = 0; k < n; ++k) {
        pts.push_back(unit_vector(2.0 * pi * k / n));
    }
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.vertices.size() == static_cast<std::size_t>(n));
    CHECK(polygon_perimeter(hull) == Catch::Approx(2.0 * n * std::sin(pi / n)).epsilon(1e-12));
    CHECK(std::abs(polygon_perimeter(hull) - 2.0 * pi) < 1e-4);
}

TEST_CASE("ray-polyline intersection basics", "[geometry]") {
    const PolygonalPath along{{0, 0}, {2, 0}};
    CHECK(ray_polyline_max_intersection(0.0, along) == Catch::Approx(2.0));
    CHECK(ray_polyline_max_intersection(pi / 2.0, along) == Catch::Approx(0.0).margin(0.0));

    const PolygonalPath crossing{{0, 0}, {1, -1}, {1, 1}};
    CHECK(ray_polyline_max_intersection(0.0, crossing) == Catch::Approx(1.0));
}

TEST_CASE("directional max with argmax index", "[geometry]") {
    const PolygonalPath path{{0, 0}, {0.3, 1}, {0.7, -2}};
    const auto dm = directional_max(0.0, path);
    CHECK(dm.value == Catch::Approx(0.7));
    CHECK(dm.argmax == 2);

    std::mt19937 gen(31337);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_walk_path(gen, 50, 0.1);
        const double theta = angle(gen);
        const double width = directional_max(theta, p).value + directional_max(theta + pi, p).value;
        REQUIRE(width >= 0.0);  // support widths are nonnegative
        REQUIRE(ray_polyline_max_intersection(theta, p) <= directional_max(theta, p).value + 1e-12);
    }
}

TEST_CASE("support of a sampled unit circle is 1", "[geometry]") {
    PolygonalPath circle;
    for (int k = 0; k < 360; ++k) {
        circle.push_back(unit_vector(2.0 * pi * k / 360.0));
    }
    CHECK(std::abs(directional_max(0.123, circle).value - 1.0) < 1e-4);
    CHECK(std::abs(directional_max(4.0, circle).value - 1.0) < 1e-4);
}

TEST_CASE("hull accumulator equals batch hull on streamed points", "[geometry][property]") {
    std::mt19937 gen(140);
    for (int trial = 0; trial < 50; ++trial) {
        const auto path = random_walk_path(gen, 3000, 0.02);
        HullAccumulator acc(128);
        for (const Point2& p : path) acc.add(p);
        const ConvexPolygon batch = convex_hull(path);
        REQUIRE(oracle::same_point_set(acc.finish().vertices, batch.vertices));
    }
}

TEST_CASE("radial profile matches per-ray evaluation exactly", "[geometry][property]") {
    std::mt19937 gen(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const auto path = random_walk_path(gen, 400, 0.05);
        for (const int m : {8, 73, 360}) {
            const auto profile = radial_profile(path, m);
            for (int k = 0; k < m; ++k) {
                const double direct = ray_polyline_max_intersection(2.0 * pi * k / m, path);
                REQUIRE(profile[static_cast<std::size_t>(k)] == direct);
            }
        }
    }
}

TEST_CASE("radial profile of a straight segment path", "[geometry]") {
    // Only the theta = 0 ray meets the trace at positive rho.
    const PolygonalPath segment{{0, 0}, {1, 0}};
    const int m = 720;
    const auto profile = radial_profile(segment, m);
    CHECK(profile[0] == Catch::Approx(1.0));
    double riemann = 0.0;
    for (double r : profile) riemann += 0.5 * r * r * (2.0 * pi / m);
    CHECK(riemann <= 0.5 * (2.0 * pi / m) + 1e-15);
}
