#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "parcav/concavity.hpp"
#include "parcav/exponents.hpp"
#include "parcav/solver.hpp"

using namespace parcav;

namespace {

SpaceTimeField torch(double h, double dt, double T = 3.0) {
    return solve_parabolic(ConvexDomain::interval(0, 1), SourceSpec::constant(1.0), h, dt, T);
}

ConcavityQuery query(double alpha, Exponent p, double tol, std::size_t samples = 2000,
                     std::uint64_t seed = 1) {
    ConcavityQuery q;
    q.alpha = alpha;
    q.p = p;
    q.samples = samples;
    q.tolerance = tol;
    q.seed = seed;
    return q;
}

std::shared_ptr<const SpaceGrid> interval_grid(double h) {
    return std::make_shared<SpaceGrid>(build_grid(ConvexDomain::interval(0, 1), h));
}

// hand field u = x(1-x) * t with solver-style metadata
SpaceTimeField hand_field(double dt_meta) {
    auto g = interval_grid(1.0 / 32);
    std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<double> vals;
    for (double t : times)
        for (std::size_t i = 0; i < g->node_count(); ++i) {
            double x = g->node(i).x;
            vals.push_back(g->interior(i) ? x * (1 - x) * t : 0.0);
        }
    FieldMeta meta{"hand", dt_meta, "tabulated"};
    return SpaceTimeField(g, times, vals, meta);
}

} // namespace

TEST_CASE("certification tolerance follows the grid-error budget") {
    auto u = hand_field(0.01);
    double h = u.grid().spacing();
    double maxu = u.max_value();

    CHECK(certification_tolerance(u, 0.5) ==
          doctest::Approx(5.0 * (h * h + 0.01) * maxu));
    CHECK(certification_tolerance(u, 0.25) ==
          doctest::Approx(5.0 * (h * h + std::sqrt(0.01)) * maxu));
    CHECK(certification_tolerance(u, 1.0) ==
          doctest::Approx(5.0 * (h * h + 0.01) * maxu));
    CHECK(certification_tolerance(u, 0.5, 2.0) ==
          doctest::Approx(2.0 * (h * h + 0.01) * maxu));

    auto nodt = hand_field(0.0);
    CHECK_THROWS_AS(certification_tolerance(nodt, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(certification_tolerance(u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(certification_tolerance(u, -0.5), std::invalid_argument);
}

TEST_CASE("midpoint scan validates query parameters") {
    auto u = hand_field(0.01);
    CHECK_THROWS_AS(check_parabolic_concavity(u, query(0.5, Exponent(0.5), 0.0), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_parabolic_concavity(u, query(0.0, Exponent(0.5), 1e-3), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_parabolic_concavity(u, query(1.2, Exponent(0.5), 1e-3), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_parabolic_concavity(u, query(0.5, Exponent(0.5), 1e-3), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_parabolic_concavity(u, query(0.5, Exponent(0.5), 1e-3), 2.0),
                    std::invalid_argument);
    // solved fields refuse t_min below two stored steps
    auto v = torch(1.0 / 16, 0.01, 0.5);
    CHECK_THROWS_AS(check_parabolic_concavity(v, query(0.5, Exponent(0.5), 1e-3), 0.005),
                    std::invalid_argument);
}

TEST_CASE("constant forcing: certified at p = 1/2, refuted at p = 0.6") {
    auto u = torch(1.0 / 64, 5e-4);
    double tol = certification_tolerance(u, 0.5);

    auto pass = check_parabolic_concavity(u, query(0.5, Exponent(0.5), tol), 1e-3);
    CHECK(pass.pass);
    CHECK(pass.worst_defect <= tol);
    CHECK(pass.check == "parabolic-concavity");
    CHECK(pass.samples_tested > 2000);

    auto fail = check_parabolic_concavity(u, query(0.5, Exponent(0.6), tol), 1e-3);
    CHECK_FALSE(fail.pass);
    CHECK(fail.worst_defect > tol);
    CHECK(fail.worst_defect > 8e-4);
    CHECK(fail.worst_defect < 4e-3);

    // the offending triple is reported inside the probed cylinder
    const auto& w = fail.worst;
    CHECK(u.grid().domain().in_closure(w.x1));
    CHECK(u.grid().domain().in_closure(w.x2));
    CHECK(w.t1 >= 1e-3);
    CHECK(w.t1 <= u.final_time() + 1e-12);
    CHECK(w.t2 >= 1e-3);
    CHECK(w.t2 <= u.final_time() + 1e-12);
    CHECK(w.lambda > 0.0);
    CHECK(w.lambda < 1.0);
}

TEST_CASE("scans are deterministic given the seed") {
    auto u = torch(1.0 / 32, 1e-3, 1.0);
    auto q = query(0.5, Exponent(0.6), 1e-4, 800, 42);
    auto a = check_parabolic_concavity(u, q, 2e-3);
    auto b = check_parabolic_concavity(u, q, 2e-3);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.worst_defect == b.worst_defect);
    CHECK(a.samples_tested == b.samples_tested);
}

TEST_CASE("defects are positively homogeneous in the field") {
    auto u = torch(1.0 / 32, 1e-3, 1.0);
    std::vector<double> tripled(u.level_count() * u.grid().node_count());
    for (std::size_t k = 0; k < u.level_count(); ++k)
        for (std::size_t i = 0; i < u.grid().node_count(); ++i)
            tripled[k * u.grid().node_count() + i] = 3.0 * u.at(k, i);
    SpaceTimeField u3(u.grid_ptr(), u.times(), tripled, u.meta());

    auto q1 = query(0.5, Exponent(0.6), 1e-4, 600, 9);
    auto q3 = query(0.5, Exponent(0.6), 3e-4, 600, 9);
    auto r1 = check_parabolic_concavity(u, q1, 2e-3);
    auto r3 = check_parabolic_concavity(u3, q3, 2e-3);
    CHECK(r3.worst_defect == doctest::Approx(3.0 * r1.worst_defect).epsilon(1e-12));
    CHECK(r1.pass == r3.pass);
}

TEST_CASE("spatial scan separates concave from non-concave powers") {
    auto g = interval_grid(1.0 / 64);
    std::vector<double> v(g->node_count(), 0.0);
    for (std::size_t i = 0; i < g->node_count(); ++i) {
        double x = g->node(i).x;
        if (g->interior(i)) v[i] = x * x * x * (1 - x);
    }
    SteadyField w(g, v);

    // x^3(1-x) raised to 1/4 is concave; the function itself is not.
    // The tolerance absorbs the piecewise-linear kink error of the sampled
    // profile (O(h^2) near the leftmost interior node); the genuine p=1
    // defect is ~2e-2, two orders above it.
    const double tol = 5e-4;
    auto pass = check_spatial_concavity(w, Exponent(0.25), 500, tol, 3);
    CHECK(pass.pass);
    CHECK(pass.check == "spatial-concavity");

    auto fail = check_spatial_concavity(w, Exponent(1.0), 500, tol, 3);
    CHECK_FALSE(fail.pass);
    CHECK(fail.worst_defect > 1e-2);

    // the same slice read through the space-time overload agrees
    std::vector<double> times{0.0, 1.0};
    std::vector<double> vals(g->node_count(), 0.0);
    vals.insert(vals.end(), v.begin(), v.end());
    SpaceTimeField uf(g, times, vals);
    auto pass2 = check_spatial_concavity(uf, 1.0, Exponent(0.25), 500, tol, 3);
    CHECK(pass2.pass);
    auto fail2 = check_spatial_concavity(uf, 1.0, Exponent(1.0), 500, tol, 3);
    CHECK_FALSE(fail2.pass);
}

TEST_CASE("exponent bisection needs a sign change and then brackets the edge") {
    auto u = torch(1.0 / 64, 5e-4);
    double tol = certification_tolerance(u, 0.5);
    auto base = query(0.5, Exponent(0.5), tol, 1200, 5);

    CHECK_THROWS_AS(estimate_max_exponent(u, base, 1e-3, 0.1, 0.2, 0.02), std::runtime_error);
    CHECK_THROWS_AS(estimate_max_exponent(u, base, 1e-3, 0.7, 0.9, 0.02), std::runtime_error);

    double edge = estimate_max_exponent(u, base, 1e-3, 0.3, 0.8, 0.02);
    CHECK(edge > 0.45);
    CHECK(edge < 0.75);
}

TEST_CASE("structure condition matches hand analysis for constant forcing") {
    auto src = SourceSpec::constant(1.0);
    StructureRegion region;

    // exponent of the prefactor is 3 - 1/p: inside [0,1] for p in [1/3,1/2]
    auto pass = check_structure_condition(src, 0.5, 0.45, 4, region, 400, 1e-9, 2);
    CHECK(pass.pass);
    CHECK(pass.check == "structure-condition");
    auto fail = check_structure_condition(src, 0.5, 0.6, 4, region, 400, 1e-9, 2);
    CHECK_FALSE(fail.pass);

    // below p = 1/3 the prefactor turns convex although the aggregate
    // exponent heuristic still raises its flag
    auto low = check_structure_condition(src, 0.5, 0.2, 4, region, 400, 1e-9, 2);
    CHECK_FALSE(low.pass);
    CHECK(structure_beta(0.2, Exponent::pos_inf(), 0.0).concavity_valid);
}

TEST_CASE("structure condition for the distance source") {
    auto src = SourceSpec::dist_power(1.0, 0.0);
    StructureRegion region;
    // q = 1: g concave only at p = 1/3 exactly; p = 0.45 must fail
    auto ok = check_structure_condition(src, 0.5, 1.0 / 3, 4, region, 400, 1e-9, 2);
    CHECK(ok.pass);
    auto bad = check_structure_condition(src, 0.5, 0.45, 4, region, 400, 1e-9, 2);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("mean-inequality properties hold on a solved field") {
    auto u = torch(1.0 / 32, 1e-3);
    auto w = solve_steady(ConvexDomain::interval(0, 1), SourceSpec::constant(1.0), 1.0 / 32);
    double tol = certification_tolerance(u, 0.5);
    auto base = query(0.5, Exponent(0.5), tol, 600, 11);

    auto verdicts = property_suite(u, w, 0.5, Exponent(0.5), Exponent(0.5), base, 2e-3);
    REQUIRE(verdicts.size() == 4);
    for (const auto& v : verdicts) {
        INFO(v.property);
        CHECK(v.pass);
        CHECK_FALSE(v.property.empty());
    }
}
