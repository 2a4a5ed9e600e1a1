#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "parcav/hull.hpp"

using namespace parcav;

namespace {

// every input point lies on or inside every facet plane
double worst_violation(const std::vector<Vec3>& pts, const std::vector<HullFacet>& facets) {
    double worst = 0.0;
    for (const auto& f : facets)
        for (const auto& p : pts) {
            double d = f.normal.x * p.x + f.normal.y * p.y + f.normal.z * p.z - f.offset;
            worst = std::max(worst, d);
        }
    return worst;
}

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

} // namespace

TEST_CASE("hull of the unit cube has 12 triangles over 8 corners") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    pts.push_back({0.5, 0.5, 0.5}); // strictly inside, must not appear
    auto facets = convex_hull_3d(pts);
    CHECK(facets.size() == 12);
    CHECK(worst_violation(pts, facets) < 1e-9);
    for (const auto& f : facets) {
        CHECK(norm(f.normal) == doctest::Approx(1.0));
        for (int vi : f.v) CHECK(vi != 8);
    }
}

TEST_CASE("hull of a tetrahedron is the tetrahedron") {
    std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto facets = convex_hull_3d(pts);
    CHECK(facets.size() == 4);
    CHECK(worst_violation(pts, facets) < 1e-12);
}

TEST_CASE("degenerate clouds yield no facets") {
    CHECK(convex_hull_3d({}).empty());
    CHECK(convex_hull_3d({{0, 0, 0}, {1, 1, 1}}).empty());
    // collinear
    CHECK(convex_hull_3d({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}).empty());
    // coplanar
    std::vector<Vec3> flat;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) flat.push_back({i * 0.25, j * 0.25, 0.0});
    CHECK(convex_hull_3d(flat).empty());
}

TEST_CASE("random clouds: all points inside, all facets supported") {
    std::mt19937_64 rng(123456);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Vec3> pts(60 + 20 * rep);
        for (auto& p : pts) p = {unif(rng), unif(rng), unif(rng)};
        auto facets = convex_hull_3d(pts);
        REQUIRE(!facets.empty());
        CHECK(worst_violation(pts, facets) < 1e-9);
        // each facet's three vertices actually lie on its plane
        for (const auto& f : facets)
            for (int vi : f.v) {
                const auto& p = pts[static_cast<std::size_t>(vi)];
                double d = f.normal.x * p.x + f.normal.y * p.y + f.normal.z * p.z - f.offset;
                CHECK(std::abs(d) < 1e-9);
            }
    }
}

TEST_CASE("upper facets of a concave-function cloud pinch its graph") {
    auto g = [](double x, double y) { return 1.0 - 0.5 * (x * x + y * y); };
    std::vector<Vec3> pts;
    const int n = 12;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double x = -1.0 + 2.0 * i / n, y = -1.0 + 2.0 * j / n;
            pts.push_back({x, y, g(x, y)});
        }
    pts.push_back({0, 0, -1.0}); // keep the cloud solid so the hull is 3D
    auto facets = convex_hull_3d(pts);
    REQUIRE(!facets.empty());

    auto env_at = [&](double x, double y) {
        double env = 1e300;
        for (const auto& f : facets) {
            if (f.normal.z <= 1e-9) continue;
            env = std::min(env, (f.offset - f.normal.x * x - f.normal.y * y) / f.normal.z);
        }
        REQUIRE(env < 1e300);
        return env;
    };

    // on the samples the upper envelope majorizes the cloud; between them
    // the chordal facets stay below the true concave graph
    for (const auto& p : pts)
        if (p.z > -0.5) CHECK(env_at(p.x, p.y) >= p.z - 1e-9);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(-0.9, 0.9);
    for (int rep = 0; rep < 200; ++rep) {
        double x = unif(rng), y = unif(rng);
        double env = env_at(x, y);
        CHECK(env <= g(x, y) + 1e-9);
        // and never below the chord level of the worst lattice cell
        CHECK(env >= g(x, y) - 0.5 * (2.0 / n) * (2.0 / n) - 1e-9);
    }
}
