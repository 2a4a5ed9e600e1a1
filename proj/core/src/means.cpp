#include "parcav/means.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace parcav {

namespace {

[[noreturn]] void fail(const char* what) { throw std::invalid_argument(what); }

} // namespace

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.size() < 2) fail("WeightVector: need at least 2 weights");
    double sum = 0.0;
    for (double x : w_) {
        if (!(x > 0.0 && x < 1.0)) fail("WeightVector: weights must lie in (0,1)");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) fail("WeightVector: weights must sum to 1 within 1e-12");
    for (double& x : w_) x /= sum;
}

WeightVector WeightVector::pair(double lambda) {
    return WeightVector({1.0 - lambda, lambda});
}

double p_mean(std::span<const double> a, const WeightVector& lam, Exponent p) {
    if (a.size() != lam.size()) fail("p_mean: dimension mismatch");
    bool any_zero = false;
    for (double x : a) {
        if (x < 0.0) fail("p_mean: negative entry");
        if (x == 0.0) any_zero = true;
    }
    if (p.is_pos_inf()) return *std::max_element(a.begin(), a.end());
    if (p.is_neg_inf()) return *std::min_element(a.begin(), a.end());

    double pv = p.value();
    // p <= 0 with a vanishing entry: the convention (and the p = 0 limit) give 0.
    if (any_zero && pv <= 0.0) return 0.0;

    if (std::abs(pv) < 1e-8) {
        // log-space geometric mean; the finite-p formula cancels catastrophically here
        double lg = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) lg += lam[i] * std::log(a[i]);
        return std::exp(lg);
    }
    if (std::abs(pv) < 1e-3) {
        // expm1/log1p form of the same power mean; the plain form loses
        // eps/|p| digits as sum lam_i a_i^p approaches 1
        // (zero entries only reach here with pv > 0; expm1(-inf) = -1 is exact)
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += lam[i] * std::expm1(pv * std::log(a[i]));
        if (s <= -1.0) return 0.0;
        return std::exp(std::log1p(s) / pv);
    }
    if (std::abs(pv) > 100.0) {
        // log-sum-exp evaluation: sum lam_i a_i^p = exp(max + log sum exp(...))
        // keeps p = +-1e6 finite for the limit check
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) continue; // pv > 0 here; zero terms drop out
            double e = std::log(lam[i]) + pv * std::log(a[i]);
            mx = std::max(mx, e);
        }
        if (mx == -std::numeric_limits<double>::infinity()) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) continue;
            s += std::exp(std::log(lam[i]) + pv * std::log(a[i]) - mx);
        }
        return std::exp((mx + std::log(s)) / pv);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue; // pv > 0 if we got here with a zero entry
        s += lam[i] * std::pow(a[i], pv);
    }
    if (s == 0.0) return 0.0;
    return std::pow(s, 1.0 / pv);
}

double p_mean(double a, double b, double lambda, Exponent p) {
    if (!(lambda > 0.0 && lambda < 1.0)) fail("p_mean: lambda must lie in (0,1)");
    const double v[2] = {a, b};
    return p_mean(std::span<const double>(v, 2), WeightVector::pair(lambda), p);
}

std::pair<double, double> p_mean_limit_check(std::span<const double> a, const WeightVector& lam) {
    for (double x : a)
        if (!(x > 0.0)) fail("p_mean_limit_check: entries must be positive");
    return {p_mean(a, lam, Exponent(1e6)), p_mean(a, lam, Exponent(-1e6))};
}

} // namespace parcav
