#include "parcav/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "parcav/means.hpp"

namespace parcav {

namespace {

// quadrature weight per node: 1D trapezoid reduces to unit weight on
// interior nodes because boundary values vanish
std::vector<double> node_weights(const SpaceGrid& g) {
    const std::size_t n = g.node_count();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.interior(i)) continue;
        if (g.dim() == 1) {
            w[i] = g.spacing();
            continue;
        }
        const auto [ix, iy] = g.lattice_coords(i);
        bool touches_boundary = false;
        const long nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
        for (const auto& q : nb) {
            const std::size_t j = g.at(q[0], q[1]);
            if (j == SpaceGrid::npos || !g.interior(j)) touches_boundary = true;
        }
        w[i] = (touches_boundary ? 0.5 : 1.0) * g.spacing() * g.spacing();
    }
    return w;
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (k >= xs.size() - 1) k = xs.size() - 2;
    const double th = std::clamp((x - xs[k]) / (xs[k + 1] - xs[k]), 0.0, 1.0);
    return (1.0 - th) * ys[k] + th * ys[k + 1];
}

// shared pair sweep; midpoint formed in transformed coordinates s = t^alpha
ConcavityReport curve_sweep(const EnergyCurve& c, Exponent q, double t_min,
                            double tolerance, double alpha, const char* label) {
    if (!(tolerance > 0)) throw std::invalid_argument("curve check needs tolerance > 0");
    if (c.times.size() != c.values.size() || c.times.size() < 2)
        throw std::invalid_argument("curve needs matching times and values");
    std::vector<double> ts, hs;
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        if (c.times[k] >= t_min) {
            ts.push_back(std::pow(c.times[k], alpha));
            hs.push_back(c.values[k]);
        }
    }
    ConcavityReport rep;
    rep.check = label;
    rep.tolerance = tolerance;
    if (ts.size() < 2) throw std::invalid_argument("curve check needs >= 2 samples past t_min");

    const std::size_t stride = std::max<std::size_t>(1, ts.size() / 120);
    const double lambdas[3] = {0.25, 0.5, 0.75};
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); i += stride) {
        for (std::size_t j = i + 1; j < ts.size(); j += stride) {
            for (double lam : lambdas) {
                const double sm = (1 - lam) * ts[i] + lam * ts[j];
                const double d = p_mean(hs[i], hs[j], lam, q) - interp_linear(ts, hs, sm);
                ++rep.samples_tested;
                if (d > worst) {
                    worst = d;
                    rep.worst = {{}, {}, std::pow(ts[i], 1 / alpha),
                                 std::pow(ts[j], 1 / alpha), lam};
                }
            }
        }
    }
    rep.worst_defect = worst;
    rep.pass = worst <= tolerance;
    return rep;
}

} // namespace

EnergyCurve heat_energy(const SpaceTimeField& u, double m) {
    if (!(m > 0)) throw std::invalid_argument("energy order m must be positive");
    const SpaceGrid& g = u.grid();
    const auto w = node_weights(g);
    EnergyCurve c;
    c.m = m;
    c.quadrature = g.dim() == 1 ? "trapezoid" : "masked-cell";
    c.times = u.times();
    c.values.reserve(c.times.size());
    for (std::size_t k = 0; k < u.level_count(); ++k) {
        auto s = u.slice(k);
        double acc = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (w[i] == 0.0) continue;
            acc += w[i] * (m == 1.0 ? s[i] : std::pow(s[i], m));
        }
        c.values.push_back(m == 1.0 ? acc : std::pow(acc, 1.0 / m));
    }
    return c;
}

Exponent energy_concavity_exponent(Exponent p, int n, double m) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(m > 0)) throw std::invalid_argument("energy order m must be positive");
    if (p.is_pos_inf()) return Exponent(1.0 / n);
    if (p.is_neg_inf() || p.value() < -m / n)
        throw std::invalid_argument("energy exponent needs p >= -m/n");
    const double pv = p.value();
    if (pv == -m / n) return Exponent::neg_inf();
    return Exponent(pv / (n * pv + m));
}

ConcavityReport check_curve_concavity(const EnergyCurve& c, Exponent q, double t_min,
                                      double tolerance) {
    return curve_sweep(c, q, t_min, tolerance, 1.0, "curve-concavity");
}

ConcavityReport check_time_reparametrized(const EnergyCurve& c, double alpha, Exponent q,
                                          double t_min, double tolerance) {
    if (!(alpha > 0) || !(alpha <= 1))
        throw std::invalid_argument("reparametrization exponent must lie in (0, 1]");
    return curve_sweep(c, q, t_min, tolerance, alpha, "curve-reparametrized");
}

std::string curve_to_csv(const EnergyCurve& c) {
    std::string out = "t,value\n";
    char buf[64];
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", c.times[k], c.values[k]);
        out += buf;
    }
    return out;
}

} // namespace parcav
