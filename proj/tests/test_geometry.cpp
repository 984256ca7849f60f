#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmac/errors.hpp"
#include "qmac/rate_region.hpp"

using namespace qmac;

namespace {

RateRegion make2(double b1, double b2, double b12) {
    RateRegion r(2, "test");
    r.set_bound(1, b1);
    r.set_bound(2, b2);
    r.set_bound(3, b12);
    return r;
}

bool has_vertex(const Polygon2D& poly, double x, double y) {
    for (const auto& v : poly.vertices)
        if (std::abs(v[0] - x) < 1e-12 && std::abs(v[1] - y) < 1e-12) return true;
    return false;
}

}  // namespace

TEST_CASE("pentagon when the sum constraint is active") {
    const Polygon2D poly = region_polygon(make2(1.0, 1.0, 1.5));
    REQUIRE(poly.vertices.size() == 5);
    CHECK(has_vertex(poly, 0, 0));
    CHECK(has_vertex(poly, 1, 0));
    CHECK(has_vertex(poly, 1, 0.5));
    CHECK(has_vertex(poly, 0.5, 1));
    CHECK(has_vertex(poly, 0, 1));
}

TEST_CASE("rectangle when the sum constraint is slack") {
    const Polygon2D poly = region_polygon(make2(1.0, 1.0, 2.0));
    REQUIRE(poly.vertices.size() == 4);
    CHECK(has_vertex(poly, 1, 1));
}

TEST_CASE("triangle when the sum constraint binds everywhere") {
    const Polygon2D poly = region_polygon(make2(1.0, 1.0, 1.0));
    REQUIRE(poly.vertices.size() == 3);
    CHECK(has_vertex(poly, 0, 0));
    CHECK(has_vertex(poly, 1, 0));
    CHECK(has_vertex(poly, 0, 1));
}

TEST_CASE("polygon respects axis normalization") {
    const Polygon2D poly = region_polygon(make2(2.0, 4.0, 5.0), {2.0, 4.0});
    for (const auto& v : poly.vertices) {
        CHECK(v[0] <= 1.0 + 1e-12);
        CHECK(v[1] <= 1.0 + 1e-12);
    }
    CHECK(has_vertex(poly, 1, 0));
    CHECK(has_vertex(poly, 0, 1));
}

TEST_CASE("polygon vertices are counterclockwise") {
    const Polygon2D poly = region_polygon(make2(1.0, 2.0, 2.4));
    double area2 = 0.0;
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        const auto& a = poly.vertices[i];
        const auto& b = poly.vertices[(i + 1) % poly.vertices.size()];
        area2 += a[0] * b[1] - b[0] * a[1];
    }
    CHECK(area2 > 0.0);
}

TEST_CASE("polygon vertices satisfy all constraints and brute-force area matches") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.2, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double b1 = uni(rng), b2 = uni(rng);
        const double lo = std::max(b1, b2);
        const double b12 = lo + uni(rng) * (b1 + b2 - lo);
        const RateRegion region = make2(b1, b2, b12);
        const Polygon2D poly = region_polygon(region);
        double area2 = 0.0;
        for (size_t i = 0; i < poly.vertices.size(); ++i) {
            const auto& a = poly.vertices[i];
            const auto& b = poly.vertices[(i + 1) % poly.vertices.size()];
            area2 += a[0] * b[1] - b[0] * a[1];
            CHECK(a[0] >= -1e-12);
            CHECK(a[1] >= -1e-12);
            CHECK(a[0] <= b1 + 1e-12);
            CHECK(a[1] <= b2 + 1e-12);
            CHECK(a[0] + a[1] <= b12 + 1e-12);
        }
        // Monte-Carlo area of the same constraint set
        std::uniform_real_distribution<double> ux(0.0, b1), uy(0.0, b2);
        int inside = 0;
        const int samples = 200000;
        for (int n = 0; n < samples; ++n)
            if (ux(rng) + uy(rng) <= b12) ++inside;
        const double mc = b1 * b2 * inside / samples;
        CHECK(0.5 * area2 == doctest::Approx(mc).epsilon(0.02));
    }
}

TEST_CASE("equal rate point") {
    CHECK(make2(1.0, 1.0, 1.5).equal_rate_point() == doctest::Approx(0.75));
    CHECK(make2(0.5, 1.0, 1.5).equal_rate_point() == doctest::Approx(0.5));
}

TEST_CASE("three-sender mesh encloses the right volume") {
    RateRegion r(3, "test");
    r.set_bound(1, 1.0);
    r.set_bound(2, 1.0);
    r.set_bound(4, 1.0);
    r.set_bound(3, 1.5);
    r.set_bound(5, 1.5);
    r.set_bound(6, 1.5);
    r.set_bound(7, 1.8);
    const Mesh3D mesh = region_mesh(r);
    REQUIRE(mesh.vertices.size() > 4);
    REQUIRE(!mesh.triangles.empty());
    // every vertex satisfies the constraints
    for (const auto& v : mesh.vertices) {
        CHECK(v[0] >= -1e-9);
        CHECK(v[0] <= 1.0 + 1e-9);
        CHECK(v[0] + v[1] <= 1.5 + 1e-9);
        CHECK(v[0] + v[1] + v[2] <= 1.8 + 1e-9);
    }
    // volume via the divergence theorem over the closed triangulated surface
    double vol6 = 0.0;
    for (const auto& t : mesh.triangles) {
        const auto& a = mesh.vertices[t[0]];
        const auto& b = mesh.vertices[t[1]];
        const auto& c = mesh.vertices[t[2]];
        vol6 += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                a[2] * (b[0] * c[1] - b[1] * c[0]);
    }
    // Monte Carlo volume
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int inside = 0;
    const int samples = 400000;
    for (int n = 0; n < samples; ++n) {
        const double x = uni(rng), y = uni(rng), z = uni(rng);
        if (x + y <= 1.5 && x + z <= 1.5 && y + z <= 1.5 && x + y + z <= 1.8) ++inside;
    }
    CHECK(std::abs(vol6) / 6.0 == doctest::Approx(double(inside) / samples).epsilon(0.02));
}

TEST_CASE("geometry dimension validation") {
    CHECK_THROWS_AS(region_polygon(RateRegion(3, "x")), validation_error);
    CHECK_THROWS_AS(region_mesh(RateRegion(2, "x")), validation_error);
    CHECK_THROWS_AS(region_polygon(make2(1, 1, 1.5), {1.0}), validation_error);
}

TEST_CASE("region bound bookkeeping") {
    RateRegion r(2, "x");
    CHECK_THROWS_AS(r.set_bound(0, 1.0), validation_error);
    CHECK_THROWS_AS(r.set_bound(4, 1.0), validation_error);
    CHECK_THROWS_AS(r.set_bound(1, -1.0), validation_error);
    r.set_bound(1, -1e-14);  // tiny negatives clamp to zero
    CHECK(r.bound(1) == 0.0);
}
