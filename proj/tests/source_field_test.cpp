#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "parcav/field.hpp"
#include "parcav/source.hpp"

using namespace parcav;

namespace {

std::shared_ptr<const SpaceGrid> interval_grid(double h) {
    return std::make_shared<SpaceGrid>(build_grid(ConvexDomain::interval(0, 1), h));
}

// values of x*(1-x)*t on every node, zero on the boundary
std::vector<double> tent_values(const SpaceGrid& g, const std::vector<double>& times) {
    std::vector<double> v;
    for (double t : times)
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            double x = g.node(i).x;
            v.push_back(g.interior(i) ? x * (1 - x) * t : 0.0);
        }
    return v;
}

} // namespace

TEST_CASE("source constructors validate their parameters") {
    CHECK_THROWS_AS(SourceSpec::constant(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::dist_power(-0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::dist_power(1.0, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::dist_power(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::semilinear_power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::semilinear_power(1.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::semilinear_regularized(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::tabulated({}), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::tabulated({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(SpatialProfile::constant(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpatialProfile::dist_power(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SourceSpec::time_weighted(0.7, SpatialProfile::constant(1.0)),
                    std::invalid_argument);

    CHECK(SourceSpec::semilinear_power(0.5).semilinear());
    CHECK(SourceSpec::semilinear_regularized(0.5, 1e-3).semilinear());
    CHECK_FALSE(SourceSpec::constant(1.0).semilinear());
    CHECK(SourceSpec::dist_power(1.0, 0.5).time_dependent());
    CHECK_FALSE(SourceSpec::dist_power(1.0, 0.0).time_dependent());
    CHECK(SourceSpec::constant(1.0).kind_name() == "constant");
}

TEST_CASE("time factor is t^gamma with 0^0 read as 1") {
    auto c = SourceSpec::constant(2.0);
    CHECK(c.time_factor(0.0) == 1.0);
    CHECK(c.time_factor(7.0) == 1.0);

    auto d0 = SourceSpec::dist_power(1.0, 0.0);
    CHECK(d0.time_factor(0.0) == 1.0);

    auto dg = SourceSpec::dist_power(1.0, 0.5);
    CHECK(dg.time_factor(4.0) == doctest::Approx(2.0));
    CHECK(dg.time_factor(0.0) == 0.0);

    auto tw = SourceSpec::time_weighted(0.25, SpatialProfile::constant(1.0));
    CHECK(tw.time_factor(16.0) == doctest::Approx(2.0));
}

TEST_CASE("spatial factor sampled on grid nodes") {
    auto g = interval_grid(0.25);

    auto dist = SourceSpec::dist_power(1.0, 0.0).spatial_on(*g);
    REQUIRE(dist.size() == 5);
    CHECK(dist[0] == 0.0);
    CHECK(dist[1] == doctest::Approx(0.25));
    CHECK(dist[2] == doctest::Approx(0.5));
    CHECK(dist[4] == 0.0);

    auto sq = SourceSpec::dist_power(2.0, 0.0).spatial_on(*g);
    CHECK(sq[1] == doctest::Approx(0.0625));

    for (double v : SourceSpec::semilinear_power(0.5).spatial_on(*g)) CHECK(v == 1.0);

    auto c3 = SourceSpec::constant(3.0).spatial_on(*g);
    CHECK(c3[2] == 3.0);

    CHECK_THROWS_AS(SourceSpec::tabulated({1.0, 2.0}).spatial_on(*g), std::invalid_argument);
    std::vector<double> tab(g->node_count(), 2.0);
    CHECK(SourceSpec::tabulated(tab).spatial_on(*g)[3] == 2.0);
}

TEST_CASE("pointwise source evaluation") {
    auto dom = ConvexDomain::interval(0, 1);
    CHECK(SourceSpec::constant(2.0).value_at(dom, {0.7, 0}, 5.0) == 2.0);

    auto s = SourceSpec::dist_power(2.0, 0.5);
    CHECK(s.value_at(dom, {0.3, 0}, 4.0) == doctest::Approx(2.0 * 0.09));

    auto tw = SourceSpec::time_weighted(0.5, SpatialProfile::dist_power(1.0));
    CHECK(tw.value_at(dom, {0.25, 0}, 9.0) == doctest::Approx(3.0 * 0.25));

    CHECK_THROWS_AS(SourceSpec::semilinear_power(0.5).value_at(dom, {0.5, 0}, 1.0),
                    std::logic_error);
    CHECK_THROWS_AS(SourceSpec::tabulated({1.0}).value_at(dom, {0.5, 0}, 1.0), std::logic_error);
    CHECK_THROWS_AS(SpatialProfile::tabulated({1.0}).value(dom, {0.5, 0}), std::logic_error);
}

TEST_CASE("space-time field construction enforces its invariants") {
    auto g = interval_grid(0.25);
    std::vector<double> times{0.0, 1.0, 4.0};
    auto vals = tent_values(*g, times);

    SUBCASE("a valid field is accepted and carries its metadata") {
        FieldMeta meta{"imex-be", 0.5, "constant"};
        SpaceTimeField u(g, times, vals, meta);
        CHECK(u.level_count() == 3);
        CHECK(u.final_time() == 4.0);
        CHECK(u.max_value() == doctest::Approx(1.0));
        CHECK(u.meta().scheme == "imex-be");
        CHECK(u.meta().dt == 0.5);
        CHECK(u.at(2, 2) == doctest::Approx(1.0));
        CHECK(u.slice(1).size() == g->node_count());
    }
    SUBCASE("times must start at zero") {
        CHECK_THROWS_AS(SpaceTimeField(g, {0.5, 1.0, 4.0}, vals), std::invalid_argument);
    }
    SUBCASE("times must increase strictly") {
        CHECK_THROWS_AS(SpaceTimeField(g, {0.0, 1.0, 1.0}, vals), std::invalid_argument);
    }
    SUBCASE("at least two levels") {
        CHECK_THROWS_AS(SpaceTimeField(g, {0.0}, std::vector<double>(g->node_count(), 0.0)),
                        std::invalid_argument);
    }
    SUBCASE("the start slice must vanish") {
        auto bad = vals;
        bad[2] = 0.5;
        CHECK_THROWS_AS(SpaceTimeField(g, times, bad), std::invalid_argument);
    }
    SUBCASE("boundary nodes must vanish at every level") {
        auto bad = vals;
        bad[g->node_count() + 0] = 0.5;
        CHECK_THROWS_AS(SpaceTimeField(g, times, bad), std::invalid_argument);
    }
    SUBCASE("negative values beyond roundoff are rejected, tiny ones clamp") {
        auto bad = vals;
        bad[g->node_count() + 2] = -0.5;
        CHECK_THROWS_AS(SpaceTimeField(g, times, bad), std::invalid_argument);

        auto tiny = vals;
        tiny[g->node_count() + 2] = -1e-15;
        SpaceTimeField u(g, times, tiny);
        CHECK(u.at(1, 2) >= 0.0);
    }
    SUBCASE("value count must match levels times nodes") {
        auto bad = vals;
        bad.pop_back();
        CHECK_THROWS_AS(SpaceTimeField(g, times, bad), std::invalid_argument);
    }
    SUBCASE("non-finite values are rejected") {
        auto bad = vals;
        bad[g->node_count() + 1] = std::nan("");
        CHECK_THROWS_AS(SpaceTimeField(g, times, bad), std::invalid_argument);
    }
}

TEST_CASE("field interpolation is exact at nodes and linear between levels") {
    auto g = interval_grid(0.25);
    std::vector<double> times{0.0, 1.0, 4.0};
    SpaceTimeField u(g, times, tent_values(*g, times));

    // node-exact at stored times
    CHECK(u.interpolate({0.5, 0}, 1.0, 1.0) == doctest::Approx(0.25));
    CHECK(u.interpolate({0.5, 0}, 4.0, 1.0) == doctest::Approx(1.0));
    CHECK(u.interpolate({0.5, 0}, 0.0, 1.0) == 0.0);

    // linear in x between nodes
    CHECK(u.interpolate({0.375, 0}, 1.0, 1.0) ==
          doctest::Approx(0.5 * (0.25 * 0.75 + 0.5 * 0.5)));

    // alpha = 1: linear in raw t, so halfway in t
    CHECK(u.interpolate({0.5, 0}, 2.5, 1.0) == doctest::Approx(0.5 * (0.25 + 1.0)));
    CHECK(u.interpolate_raw({0.5, 0}, 2.5) == doctest::Approx(0.5 * (0.25 + 1.0)));

    // alpha = 1/2: linear in tau = sqrt(t), so tau = 1.5 means halfway
    CHECK(u.interpolate({0.5, 0}, 2.25, 0.5) == doctest::Approx(0.5 * (0.25 + 1.0)));

    // interpolation respects zero at t = 0 with the tau transform too
    CHECK(u.interpolate({0.5, 0}, 0.25, 0.5) == doctest::Approx(0.5 * 0.25));

    CHECK_THROWS_AS(u.interpolate({1.5, 0}, 1.0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(u.interpolate({0.5, 0}, 4.1, 1.0), std::out_of_range);
    CHECK_THROWS_AS(u.interpolate({0.5, 0.2}, 1.0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(u.interpolate({0.5, 0}, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(u.interpolate({0.5, 0}, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("steady field validates and interpolates") {
    auto g = interval_grid(0.25);
    std::vector<double> v(g->node_count(), 0.0);
    for (std::size_t i = 0; i < g->node_count(); ++i) {
        double x = g->node(i).x;
        if (g->interior(i)) v[i] = x * (1 - x);
    }
    SteadyField s(g, v);
    CHECK(s.max_value() == doctest::Approx(0.25));
    CHECK(s.interpolate({0.5, 0}) == doctest::Approx(0.25));
    CHECK(s.interpolate({0.375, 0}) == doctest::Approx(0.5 * (0.1875 + 0.25)));
    CHECK(s.interpolate({0.0, 0}) == 0.0);

    auto bad = v;
    bad[0] = 1.0;
    CHECK_THROWS_AS(SteadyField(g, bad), std::invalid_argument);
    CHECK_THROWS_AS(SteadyField(g, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(s.interpolate({2.0, 0}), std::out_of_range);
}

TEST_CASE("2D bilinear interpolation treats absent corners as zero") {
    auto dom = ConvexDomain::disk({0, 0}, 0.5);
    auto g = std::make_shared<SpaceGrid>(build_grid(dom, 0.125));
    std::vector<double> v(g->node_count(), 0.0);
    for (std::size_t i = 0; i < g->node_count(); ++i)
        if (g->interior(i)) v[i] = 1.0;
    SteadyField s(g, v);
    CHECK(s.interpolate({0.0, 0.0}) == doctest::Approx(1.0));
    // a cell straddling the boundary mixes interior ones with boundary zeros
    double near = s.interpolate({0.0, 0.47});
    CHECK(near >= 0.0);
    CHECK(near <= 1.0);
}
