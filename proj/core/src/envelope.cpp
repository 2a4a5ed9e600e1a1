#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parcav/concavity.hpp"
#include "parcav/hull.hpp"

namespace parcav {

namespace {

// geometric ladder of stored level indices; level 0 always kept, early
// levels dense
std::vector<std::size_t> level_subsample(std::size_t level_count, std::size_t cap) {
    const std::size_t last = level_count - 1;
    std::vector<std::size_t> idx{0};
    if (last == 0) return idx;
    const std::size_t nt = std::min(cap, last);
    if (nt == 1) {
        idx.push_back(last);
    } else {
        for (std::size_t j = 0; j < nt; ++j) {
            const double r = std::pow(static_cast<double>(last),
                                      static_cast<double>(j) / static_cast<double>(nt - 1));
            idx.push_back(std::clamp<std::size_t>(static_cast<std::size_t>(r), 1, last));
        }
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

void check_envelope_args(double alpha, double p) {
    if (!(alpha > 0) || !(alpha <= 1)) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (!(p > 0) || !(p <= 1)) throw std::invalid_argument("envelope exponent must lie in (0, 1]");
}

EnvelopeResult envelope_shell(const SpaceTimeField& u, const std::vector<std::size_t>& idx) {
    EnvelopeResult res;
    res.times.reserve(idx.size());
    for (std::size_t k : idx) res.times.push_back(u.times()[k]);
    res.values.assign(idx.size() * u.grid().node_count(), 0.0);
    return res;
}

void record_value(EnvelopeResult& res, const SpaceTimeField& u, std::size_t a,
                  std::size_t node, std::size_t level, double env) {
    env = std::max(env, u.at(level, node));
    res.values[a * u.grid().node_count() + node] = env;
    const double gap = env - u.at(level, node);
    if (gap > res.max_gap) {
        res.max_gap = gap;
        res.gap_location = u.grid().node(node);
        res.gap_time = u.times()[level];
    }
}

EnvelopeResult envelope_hull_1d(const SpaceTimeField& u, double alpha, double p) {
    const SpaceGrid& g = u.grid();
    const std::size_t m = g.node_count();
    const auto idx = level_subsample(u.level_count(), 160);
    EnvelopeResult res = envelope_shell(u, idx);
    res.support_points = 3;

    std::vector<Vec3> cloud;
    cloud.reserve(idx.size() * m);
    for (std::size_t k : idx) {
        const double tau = std::pow(u.times()[k], alpha);
        for (std::size_t i = 0; i < m; ++i)
            cloud.push_back({g.node(i).x, tau, std::pow(u.at(k, i), p)});
    }
    // normalize each axis to [0,1] so the hull tolerance is scale free
    Vec3 lo = cloud[0], hi = cloud[0];
    for (const Vec3& c : cloud) {
        lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
        hi = {std::max(hi.x, c.x), std::max(hi.y, c.y), std::max(hi.z, c.z)};
    }
    auto span = [](double a, double b) { return b - a > 0 ? b - a : 1.0; };
    const Vec3 sc{span(lo.x, hi.x), span(lo.y, hi.y), span(lo.z, hi.z)};
    std::vector<Vec3> npts(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        npts[i] = {(cloud[i].x - lo.x) / sc.x, (cloud[i].y - lo.y) / sc.y,
                   (cloud[i].z - lo.z) / sc.z};

    const auto hull = convex_hull_3d(npts);
    std::vector<HullFacet> upper;
    for (const HullFacet& f : hull)
        if (f.normal.z > 1e-9) upper.push_back(f);
    if (upper.empty()) {
        // flat cloud (u^p affine in (x, tau)): u is its own envelope
        res.degenerate_hull = true;
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t i = 0; i < m; ++i)
                record_value(res, u, a, i, idx[a], u.at(idx[a], i));
        res.relative_gap = 0.0;
        return res;
    }

    for (std::size_t a = 0; a < idx.size(); ++a) {
        const std::size_t k = idx[a];
        const double Y = (std::pow(u.times()[k], alpha) - lo.y) / sc.y;
        for (std::size_t i = 0; i < m; ++i) {
            const double X = (g.node(i).x - lo.x) / sc.x;
            double env = std::numeric_limits<double>::infinity();
            for (const HullFacet& f : upper) {
                const double v = (f.offset - f.normal.x * X - f.normal.y * Y) / f.normal.z;
                env = std::min(env, v);
            }
            const double v = env * sc.z + lo.z;
            record_value(res, u, a, i, k, std::pow(std::max(v, 0.0), 1.0 / p));
        }
    }
    res.relative_gap = res.max_gap / std::max(u.max_value(), 1e-300);
    return res;
}

// Fixed-weight envelope estimate by direct search: per evaluation point,
// maximize M_p over tuples of samples whose weighted space and tau means hit
// the point.  The last sample is solved from the constraint; the free ones
// run over a coarse grid, then integer coordinate descent at full
// resolution.  Values are clamped to >= u, so the estimate stays a majorant.
struct TupleSearch {
    const SpaceTimeField& u;
    const SpaceTimeField& up;           // u^p on the subsampled levels
    double alpha;
    Exponent p;
    std::vector<double> w;              // tuple weights, last one solves the constraint
    WeightVector wvec;
    std::vector<double> taus;           // tau values of the subsampled levels
    std::vector<std::size_t> levels;    // their level indices
    double tau_max;
    mutable std::vector<double> vals;   // tuple sample buffer

    TupleSearch(const SpaceTimeField& fld, const SpaceTimeField& powered, double a, double pp,
                std::vector<double> weights, const std::vector<std::size_t>& idx)
        : u(fld), up(powered), alpha(a), p(pp), w(weights), wvec(std::move(weights)) {
        for (std::size_t k : idx) {
            levels.push_back(k);
            taus.push_back(std::pow(u.times()[k], alpha));
        }
        tau_max = std::pow(u.final_time(), alpha);
        vals.resize(w.size());
    }

    // off-lattice samples read linear interpolation of u^p over the stored
    // levels, never of u itself: interpolating u and powering afterwards
    // overshoots (power means of p < 1 lie below arithmetic means), which
    // would let a weight-constrained search exceed the hull of the cloud
    double eval(Pt x, double tau) const {
        const double t = std::min(std::pow(std::max(tau, 0.0), 1.0 / alpha), up.final_time());
        const double vp = std::max(up.interpolate(x, t, alpha), 0.0);
        return std::pow(vp, 1.0 / p.value());
    }

    // value of the tuple whose free samples are (node, tau index) pairs;
    // -1 when the solved last sample leaves the cylinder
    double tuple_value(Pt xt, double taut, const std::size_t* ni, const std::size_t* ti) const {
        const std::size_t mfree = w.size() - 1;
        double sx = 0, sy = 0, stau = 0;
        for (std::size_t j = 0; j < mfree; ++j) {
            const Pt y = u.grid().node(ni[j]);
            const double tau = taus[ti[j]];
            sx += w[j] * y.x;
            sy += w[j] * y.y;
            stau += w[j] * tau;
            vals[j] = u.at(levels[ti[j]], ni[j]);
        }
        const double wl = w.back();
        const Pt last{(xt.x - sx) / wl, (xt.y - sy) / wl};
        double tau_last = (taut - stau) / wl;
        if (tau_last < -1e-12 || tau_last > tau_max * (1 + 1e-12)) return -1.0;
        tau_last = std::clamp(tau_last, 0.0, tau_max);
        if (!u.grid().domain().in_closure(last)) return -1.0;
        vals[mfree] = eval(last, tau_last);
        return p_mean(vals, wvec, p);
    }

    double search(Pt xt, double taut) const {
        const std::size_t mfree = w.size() - 1;
        const std::size_t nnodes = u.grid().node_count();
        const std::size_t ntaus = taus.size();

        // coarse pass, stride 4 on both axes of every free sample
        std::vector<std::size_t> ni(mfree, 0), ti(mfree, 0), best_ni(mfree, 0),
            best_ti(mfree, 0);
        double best = -1.0;
        const std::size_t nstep = 4, tstep = 4;
        auto visit = [&](auto&& self, std::size_t j) -> void {
            if (j == mfree) {
                const double v = tuple_value(xt, taut, ni.data(), ti.data());
                if (v > best) {
                    best = v;
                    best_ni = ni;
                    best_ti = ti;
                }
                return;
            }
            for (ni[j] = 0; ni[j] < nnodes; ni[j] += nstep)
                for (ti[j] = 0; ti[j] < ntaus; ti[j] += tstep) self(self, j + 1);
        };
        visit(visit, 0);
        if (best < 0) return -1.0;

        // stride-1 coordinate descent around the coarse optimum
        bool improved = true;
        for (int round = 0; round < 200 && improved; ++round) {
            improved = false;
            for (std::size_t j = 0; j < mfree; ++j) {
                for (int dn = -1; dn <= 1; ++dn)
                    for (int dtp = -1; dtp <= 1; ++dtp) {
                        if (dn == 0 && dtp == 0) continue;
                        const long nn = static_cast<long>(best_ni[j]) + dn;
                        const long tt = static_cast<long>(best_ti[j]) + dtp;
                        if (nn < 0 || nn >= static_cast<long>(nnodes) || tt < 0 ||
                            tt >= static_cast<long>(ntaus))
                            continue;
                        ni = best_ni;
                        ti = best_ti;
                        ni[j] = static_cast<std::size_t>(nn);
                        ti[j] = static_cast<std::size_t>(tt);
                        const double v = tuple_value(xt, taut, ni.data(), ti.data());
                        if (v > best) {
                            best = v;
                            best_ni = ni;
                            best_ti = ti;
                            improved = true;
                        }
                    }
            }
        }
        return best;
    }
};

EnvelopeResult envelope_tuple(const SpaceTimeField& u, double alpha, double p,
                              const std::vector<std::vector<double>>& weight_set,
                              std::size_t level_cap) {
    const SpaceGrid& g = u.grid();
    const auto idx = level_subsample(u.level_count(), level_cap);
    EnvelopeResult res = envelope_shell(u, idx);
    res.support_points = static_cast<int>(weight_set.front().size());

    std::vector<double> sub_times, sub_vals;
    sub_times.reserve(idx.size());
    sub_vals.reserve(idx.size() * g.node_count());
    for (std::size_t k : idx) {
        sub_times.push_back(u.times()[k]);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            sub_vals.push_back(std::pow(u.at(k, i), p));
    }
    const SpaceTimeField up(u.grid_ptr(), std::move(sub_times), std::move(sub_vals), u.meta());

    std::vector<TupleSearch> searches;
    searches.reserve(weight_set.size());
    for (const auto& w : weight_set) searches.emplace_back(u, up, alpha, p, w, idx);

    for (std::size_t a = 0; a < idx.size(); ++a) {
        const double tau = std::pow(u.times()[idx[a]], alpha);
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            double env = u.at(idx[a], i); // infeasible searches fall back to u
            for (const TupleSearch& s : searches)
                env = std::max(env, s.search(g.node(i), tau));
            record_value(res, u, a, i, idx[a], env);
        }
    }
    res.relative_gap = res.max_gap / std::max(u.max_value(), 1e-300);
    return res;
}

} // namespace

EnvelopeResult full_envelope(const SpaceTimeField& u, double alpha, double p) {
    check_envelope_args(alpha, p);
    if (u.grid().dim() == 1) return envelope_hull_1d(u, alpha, p);
    // 2D: sampled weight vectors, a certified lower bound of the envelope
    static const std::vector<std::vector<double>> kWeights = {
        {1.0 / 3, 1.0 / 3, 1.0 / 3},
        {0.5, 0.25, 0.25},
        {0.25, 0.5, 0.25},
        {0.25, 0.25, 0.5},
    };
    return envelope_tuple(u, alpha, p, kWeights, 8);
}

EnvelopeResult lambda_envelope(const SpaceTimeField& u, double alpha, double p,
                               const WeightVector& lambda) {
    check_envelope_args(alpha, p);
    const std::size_t want = static_cast<std::size_t>(u.grid().dim()) + 1;
    if (lambda.size() != want)
        throw std::invalid_argument("weight vector size must be the spatial dimension + 1");
    // the 1D cap matches the hull path so both sides subsample identical levels
    return envelope_tuple(u, alpha, p, {lambda.weights()}, u.grid().dim() == 1 ? 160 : 8);
}

} // namespace parcav
