#include "parcav/concavity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parcav/sampling.hpp"

namespace parcav {

namespace {

double alpha_mean(double t1, double t2, double lam, double alpha) {
    return std::pow((1 - lam) * std::pow(t1, alpha) + lam * std::pow(t2, alpha), 1.0 / alpha);
}

// quasi-random point in the domain: Halton coordinates (seed-shifted) with
// rejection against the domain; gives up after 64 skips per draw
struct DomainSampler {
    const ConvexDomain& dom;
    std::array<double, 4> bb;
    std::array<double, 8> shift{};
    std::uint64_t cursor = 0;

    DomainSampler(const ConvexDomain& d, std::uint64_t seed) : dom(d), bb(d.bounding_box()) {
        SplitMix64 rng(seed ^ 0x5eedULL);
        for (double& s : shift) s = rng.uniform();
    }
    double coord(std::uint64_t idx, int dim) {
        double v = halton(idx, kHaltonPrimes[dim]) + shift[dim];
        return v - std::floor(v);
    }
    // draws the next in-domain point using halton dims [dim0, dim0+dim)
    Pt point(int dim0) {
        for (int tries = 0; tries < 64; ++tries) {
            const std::uint64_t idx = cursor++;
            Pt p{bb[0] + (bb[2] - bb[0]) * coord(idx, dim0), 0.0};
            if (dom.dimension() == 2) p.y = bb[1] + (bb[3] - bb[1]) * coord(idx, dim0 + 1);
            if (dom.dimension() == 1 ? (p.x > bb[0] && p.x < bb[2]) : dom.contains(p)) return p;
        }
        return dom.dimension() == 1 ? Pt{(bb[0] + bb[2]) / 2, 0.0}
                                    : Pt{(bb[0] + bb[2]) / 2, (bb[1] + bb[3]) / 2};
    }
    double unit(int dim) { return coord(cursor, dim); }
};

std::vector<std::size_t> sweep_nodes(const SpaceGrid& g) {
    const std::size_t stride =
        g.dim() == 1 ? 4 : std::max<std::size_t>(1, g.node_count() / 40);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.node_count(); i += stride) out.push_back(i);
    return out;
}

std::vector<double> geom_ladder(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int j = 0; j < count; ++j)
        out[j] = lo * std::pow(hi / lo, j / double(count - 1));
    return out;
}

struct WorstTracker {
    double worst = -std::numeric_limits<double>::infinity();
    WorstTriple triple;
    std::size_t tested = 0;

    void feed(double d, Pt x1, double t1, Pt x2, double t2, double lam) {
        ++tested;
        if (d > worst) {
            worst = d;
            triple = {x1, x2, t1, t2, lam};
        }
    }
};

constexpr double kSweepLambdas[3] = {0.25, 0.5, 0.75};

} // namespace

double certification_tolerance(const SpaceTimeField& u, double alpha, double c_tol) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    const double dt = u.meta().dt;
    if (!(dt > 0))
        throw std::invalid_argument("certification tolerance needs solver metadata (dt)");
    const double h = u.grid().spacing();
    return c_tol * (h * h + std::pow(dt, std::min(1.0, 2 * alpha))) * u.max_value();
}

ConcavityReport check_parabolic_concavity(const SpaceTimeField& u, const ConcavityQuery& q,
                                          double t_min) {
    if (!(q.tolerance > 0)) throw std::invalid_argument("concavity check needs tolerance > 0");
    if (!(q.alpha > 0) || !(q.alpha <= 1))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    const double T = u.final_time();
    if (!(t_min > 0) || !(t_min < T))
        throw std::invalid_argument("t_min must lie in (0, T)");
    if (u.meta().dt > 0 && t_min < 2 * u.meta().dt - 1e-15)
        throw std::invalid_argument("t_min must exclude the initial layer (>= 2 dt)");

    const double alpha = q.alpha;
    auto uval = [&](Pt x, double t) { return u.interpolate(x, t, alpha); };
    WorstTracker w;
    auto probe = [&](Pt x1, double t1, Pt x2, double t2, double lam) {
        const double u1 = uval(x1, t1);
        const double u2 = uval(x2, t2);
        const Pt xm{(1 - lam) * x1.x + lam * x2.x, (1 - lam) * x1.y + lam * x2.y};
        const double tm = alpha_mean(t1, t2, lam, alpha);
        w.feed(p_mean(u1, u2, lam, q.p) - uval(xm, tm), x1, t1, x2, t2, lam);
    };

    // quasi-random triples
    DomainSampler s1(u.grid().domain(), q.seed);
    DomainSampler s2(u.grid().domain(), q.seed * 0x9e37ULL + 17);
    SplitMix64 aux(q.seed ^ 0xabcdULL);
    const std::array<double, 3> tshift{aux.uniform(), aux.uniform(), aux.uniform()};
    for (std::size_t i = 0; i < q.samples; ++i) {
        const Pt x1 = s1.point(0);
        const Pt x2 = s2.point(2);
        auto frac = [](double v) { return v - std::floor(v); };
        const double t1 = t_min + (T - t_min) * frac(halton(i, 11) + tshift[0]);
        const double t2 = t_min + (T - t_min) * frac(halton(i, 13) + tshift[1]);
        const double lam =
            std::clamp(frac(halton(i, 17) + tshift[2]), 1e-3, 1.0 - 1e-3);
        probe(x1, t1, x2, t2, lam);
    }

    // deterministic sweep: node pairs, geometric time ladder, three lambdas
    const auto nodes = sweep_nodes(u.grid());
    const auto tc = geom_ladder(t_min, T, 12);
    const double t1cand[3] = {tc[0], tc[4], tc[11]};
    const double t2cand[6] = {tc[0], tc[2], tc[4], tc[6], tc[8], tc[10]};
    for (std::size_t i : nodes)
        for (std::size_t j : nodes)
            for (double t1 : t1cand)
                for (double t2 : t2cand)
                    for (double lam : kSweepLambdas)
                        probe(u.grid().node(i), t1, u.grid().node(j), t2, lam);

    ConcavityReport rep;
    rep.check = "parabolic-concavity";
    rep.worst_defect = w.worst;
    rep.worst = w.triple;
    rep.samples_tested = w.tested;
    rep.tolerance = q.tolerance;
    rep.seed = q.seed;
    rep.pass = w.worst <= q.tolerance;
    return rep;
}

namespace {

template <typename Eval>
ConcavityReport spatial_scan(const SpaceGrid& grid, Eval&& val, double t, Exponent p,
                             std::size_t samples, double tolerance, std::uint64_t seed) {
    if (!(tolerance > 0)) throw std::invalid_argument("concavity check needs tolerance > 0");
    WorstTracker w;
    auto probe = [&](Pt x1, Pt x2, double lam) {
        const Pt xm{(1 - lam) * x1.x + lam * x2.x, (1 - lam) * x1.y + lam * x2.y};
        w.feed(p_mean(val(x1), val(x2), lam, p) - val(xm), x1, t, x2, t, lam);
    };
    DomainSampler s1(grid.domain(), seed);
    DomainSampler s2(grid.domain(), seed * 0x9e37ULL + 17);
    SplitMix64 aux(seed ^ 0xabcdULL);
    const double lshift = aux.uniform();
    for (std::size_t i = 0; i < samples; ++i) {
        double lam = halton(i, 11) + lshift;
        lam = std::clamp(lam - std::floor(lam), 1e-3, 1.0 - 1e-3);
        probe(s1.point(0), s2.point(2), lam);
    }
    // node pairs at half the parabolic sweep stride (slices are cheap)
    const std::size_t stride =
        grid.dim() == 1 ? 2 : std::max<std::size_t>(1, grid.node_count() / 80);
    for (std::size_t i = 0; i < grid.node_count(); i += stride)
        for (std::size_t j = i; j < grid.node_count(); j += stride)
            for (double lam : kSweepLambdas) probe(grid.node(i), grid.node(j), lam);

    ConcavityReport rep;
    rep.check = "spatial-concavity";
    rep.worst_defect = w.worst;
    rep.worst = w.triple;
    rep.samples_tested = w.tested;
    rep.tolerance = tolerance;
    rep.seed = seed;
    rep.pass = w.worst <= tolerance;
    return rep;
}

} // namespace

ConcavityReport check_spatial_concavity(const SpaceTimeField& u, double t, Exponent p,
                                        std::size_t samples, double tolerance,
                                        std::uint64_t seed) {
    if (!(t >= 0) || !(t <= u.final_time() * (1 + 1e-12)))
        throw std::invalid_argument("slice time outside the stored range");
    return spatial_scan(
        u.grid(), [&](Pt x) { return u.interpolate_raw(x, t); }, t, p, samples, tolerance,
        seed);
}

ConcavityReport check_spatial_concavity(const SteadyField& v, Exponent p,
                                        std::size_t samples, double tolerance,
                                        std::uint64_t seed) {
    return spatial_scan(
        v.grid(), [&](Pt x) { return v.interpolate(x); }, 0.0, p, samples, tolerance, seed);
}

double estimate_max_exponent(const SpaceTimeField& u, const ConcavityQuery& base,
                             double t_min, double p_lo, double p_hi, double tol_p) {
    if (!(p_lo < p_hi)) throw std::invalid_argument("bracket needs p_lo < p_hi");
    if (!(tol_p > 0)) throw std::invalid_argument("bracket width tolerance must be positive");
    auto passes = [&](double p) {
        ConcavityQuery q = base;
        q.p = Exponent(p);
        return check_parabolic_concavity(u, q, t_min).pass;
    };
    if (!passes(p_lo) || passes(p_hi))
        throw std::runtime_error("no verdict sign change across the exponent bracket");
    double lo = p_lo, hi = p_hi;
    while (hi - lo > tol_p) {
        const double mid = (lo + hi) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

ConcavityReport check_structure_condition(const SourceSpec& src, double alpha, double p,
                                          std::size_t theta_samples,
                                          const StructureRegion& region,
                                          std::size_t samples, double tolerance,
                                          std::uint64_t seed) {
    (void)theta_samples; // gradient-free source families; theta never enters g
    if (!(tolerance > 0)) throw std::invalid_argument("structure check needs tolerance > 0");
    if (!(p > 0) || !(p < 1)) throw std::invalid_argument("structure check needs p in (0, 1)");
    if (!(alpha > 0) || !(alpha <= 1))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    if (!(region.v_lo > 0) || !(region.v_lo < region.v_hi))
        throw std::invalid_argument("value box must satisfy 0 < v_lo < v_hi");
    if (!(region.t_lo > 0) || !(region.t_lo < region.t_hi))
        throw std::invalid_argument("time box must satisfy 0 < t_lo < t_hi");
    if (src.kind() == SourceSpec::Kind::tabulated)
        throw std::invalid_argument("structure check needs an analytic source");

    const double a = 3.0 - 1.0 / p;
    auto g = [&](Pt x, double t, double v) {
        const double va = std::pow(v, a);
        switch (src.kind()) {
        case SourceSpec::Kind::semilinear_power:
            return va * std::pow(std::pow(v, 1.0 / p), src.gamma());
        case SourceSpec::Kind::semilinear_regularized:
            return va * std::pow(std::pow(v, 1.0 / p) + src.eps(), src.gamma());
        default:
            return va * src.value_at(region.dom, x, std::pow(t, 1.0 / alpha));
        }
    };

    WorstTracker w;
    auto probe = [&](Pt x1, double t1, double v1, Pt x2, double t2, double v2, double lam) {
        const Pt xm{(1 - lam) * x1.x + lam * x2.x, (1 - lam) * x1.y + lam * x2.y};
        const double tm = (1 - lam) * t1 + lam * t2;
        const double vm = (1 - lam) * v1 + lam * v2;
        const double d = (1 - lam) * g(x1, t1, v1) + lam * g(x2, t2, v2) - g(xm, tm, vm);
        // worst triple records (x,t); the value coordinates ride along in y
        w.feed(d, {x1.x, v1}, t1, {x2.x, v2}, t2, lam);
    };

    // deterministic probes: value axis, time axis, and joint rays, anchored
    // at a few interior stations
    const auto bb = region.dom.bounding_box();
    std::vector<Pt> stations;
    for (double f : {0.2, 0.35, 0.5, 0.65, 0.8}) {
        Pt pt{bb[0] + f * (bb[2] - bb[0]),
              region.dom.dimension() == 2 ? bb[1] + f * (bb[3] - bb[1]) : 0.0};
        if (region.dom.dimension() == 1 || region.dom.contains(pt)) stations.push_back(pt);
    }
    const double tmid = (region.t_lo + region.t_hi) / 2;
    const double vmid = (region.v_lo + region.v_hi) / 2;
    for (const Pt& st : stations) {
        for (double lam : kSweepLambdas) {
            for (double t : {region.t_lo, tmid, region.t_hi})
                probe(st, t, region.v_lo, st, t, region.v_hi, lam); // value axis
            for (double v : {region.v_lo, vmid, region.v_hi})
                probe(st, region.t_lo, v, st, region.t_hi, v, lam); // time axis
            probe(st, region.t_lo, region.v_lo, st, region.t_hi, region.v_hi, lam);
        }
    }
    if (stations.size() >= 2) { // spatial and fully joint rays
        for (double lam : kSweepLambdas) {
            probe(stations.front(), tmid, vmid, stations.back(), tmid, vmid, lam);
            probe(stations.front(), region.t_lo, region.v_lo, stations.back(), region.t_hi,
                  region.v_hi, lam);
        }
    }

    // random pairs
    DomainSampler s1(region.dom, seed);
    DomainSampler s2(region.dom, seed * 0x9e37ULL + 17);
    SplitMix64 rng(seed ^ 0xf00dULL);
    for (std::size_t i = 0; i < samples; ++i) {
        const Pt x1 = s1.point(0);
        const Pt x2 = s2.point(2);
        const double t1 = rng.uniform(region.t_lo, region.t_hi);
        const double t2 = rng.uniform(region.t_lo, region.t_hi);
        const double v1 = rng.uniform(region.v_lo, region.v_hi);
        const double v2 = rng.uniform(region.v_lo, region.v_hi);
        probe(x1, t1, v1, x2, t2, v2, kSweepLambdas[i % 3]);
    }

    ConcavityReport rep;
    rep.check = "structure-condition";
    rep.worst_defect = w.worst;
    rep.worst = w.triple;
    rep.samples_tested = w.tested;
    rep.tolerance = tolerance;
    rep.seed = seed;
    rep.pass = w.worst <= tolerance;
    return rep;
}

std::vector<PropertyVerdict> property_suite(const SpaceTimeField& u, const SteadyField& w,
                                            double alpha, Exponent p, Exponent q,
                                            const ConcavityQuery& base, double t_min) {
    std::vector<PropertyVerdict> out;

    // (b) the time-constant extension of a spatially p-concave w satisfies
    // the full parabolic inequality: sample pairs with time coordinates and
    // alpha-mean midpoints riding along, which w ignores
    {
        const ConcavityReport rs =
            check_spatial_concavity(w, p, base.samples, base.tolerance, base.seed);
        WorstTracker tr;
        DomainSampler s1(w.grid().domain(), base.seed + 1);
        DomainSampler s2(w.grid().domain(), base.seed * 0x9e37ULL + 18);
        SplitMix64 rng(base.seed ^ 0xbeefULL);
        for (std::size_t i = 0; i < base.samples; ++i) {
            const Pt x1 = s1.point(0);
            const Pt x2 = s2.point(2);
            const double t1 = rng.uniform(0.1, 2.0);
            const double t2 = rng.uniform(0.1, 2.0);
            const double lam = std::clamp(rng.uniform(), 1e-3, 1.0 - 1e-3);
            const Pt xm{(1 - lam) * x1.x + lam * x2.x, (1 - lam) * x1.y + lam * x2.y};
            (void)alpha_mean(t1, t2, lam, alpha); // midpoint time, not read by w
            tr.feed(p_mean(w.interpolate(x1), w.interpolate(x2), lam, p) - w.interpolate(xm),
                    x1, t1, x2, t2, lam);
        }
        out.push_back(
            {"time-constant-extension", !rs.pass || tr.worst <= base.tolerance, tr.worst});
    }

    // (d) downgrade: a pass at p must survive at 0 and at -inf
    {
        ConcavityQuery qq = base;
        qq.p = p;
        const bool at_p = check_parabolic_concavity(u, qq, t_min).pass;
        qq.p = Exponent(0.0);
        const bool at_0 = check_parabolic_concavity(u, qq, t_min).pass;
        qq.p = Exponent::neg_inf();
        const bool at_minf = check_parabolic_concavity(u, qq, t_min).pass;
        out.push_back({"exponent-downgrade", !at_p || (at_0 && at_minf),
                       at_p ? (at_0 && at_minf ? 1.0 : 0.0) : 1.0});
    }

    // (e) alpha upgrade under time monotonicity: pass at alpha implies pass
    // at alpha' = 1 on the same samples
    {
        ConcavityQuery qq = base;
        qq.p = p;
        qq.alpha = alpha;
        const bool at_a = check_parabolic_concavity(u, qq, t_min).pass;
        qq.alpha = 1.0;
        const bool at_1 = check_parabolic_concavity(u, qq, t_min).pass;
        out.push_back({"alpha-upgrade", !at_a || at_1, at_a ? (at_1 ? 1.0 : 0.0) : 1.0});
    }

    // (g) product rule on a spatial slice: u(.,T) p-concave times w q-concave
    // is r-concave with 1/r = 1/p + 1/q
    {
        const double T = u.final_time();
        auto val = [&](Pt x) { return u.interpolate_raw(x, T) * w.interpolate(x); };
        double inv_r = 0.0;
        if (p.finite()) inv_r += 1.0 / p.value();
        if (q.finite()) inv_r += 1.0 / q.value();
        const Exponent r = inv_r == 0.0 ? Exponent::pos_inf() : Exponent(1.0 / inv_r);
        WorstTracker tr;
        DomainSampler s1(u.grid().domain(), base.seed);
        DomainSampler s2(u.grid().domain(), base.seed * 0x9e37ULL + 17);
        SplitMix64 aux(base.seed ^ 0xabcdULL);
        const double lshift = aux.uniform();
        for (std::size_t i = 0; i < base.samples; ++i) {
            const Pt x1 = s1.point(0);
            const Pt x2 = s2.point(2);
            double lam = halton(i, 11) + lshift;
            lam = std::clamp(lam - std::floor(lam), 1e-3, 1.0 - 1e-3);
            const Pt xm{(1 - lam) * x1.x + lam * x2.x, (1 - lam) * x1.y + lam * x2.y};
            tr.feed(p_mean(val(x1), val(x2), lam, r) - val(xm), x1, T, x2, T, lam);
        }
        out.push_back({"product-rule", tr.worst <= base.tolerance, tr.worst});
    }

    return out;
}

} // namespace parcav
