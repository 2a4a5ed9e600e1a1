#pragma once

#include <span>
#include <utility>
#include <vector>

#include "parcav/exponent.hpp"

namespace parcav {

// A point of the open simplex: m >= 2 positive weights summing to 1.
// Construction renormalizes if the sum is within 1e-12 of 1 and rejects
// anything further off (configs carry rounded decimal weights).
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w);

    // The two-point weight pair {1-lambda, lambda} used by midpoint checks;
    // lambda is the weight of the *second* argument.
    static WeightVector pair(double lambda);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> w_;
};

/// Weighted p-mean M_p(a; lam) of nonnegative entries, p in [-inf, +inf].
/// Finite p != 0: [sum lam_i a_i^p]^(1/p); p = 0: prod a_i^lam_i;
/// p = +inf / -inf: max / min.  Zero entries follow the convention of the
/// underlying theory: the mean is 0 whenever p <= 0 and some a_i = 0.
double p_mean(std::span<const double> a, const WeightVector& lam, Exponent p);

/// Two-point mean M_p(a, b; lambda) with weight lambda on b.
double p_mean(double a, double b, double lambda, Exponent p);

/// Evaluates M_p at p = +1e6 and p = -1e6; for positive entries both land
/// within 1e-3 relative of max / min.  Returned as (near_max, near_min).
std::pair<double, double> p_mean_limit_check(std::span<const double> a, const WeightVector& lam);

} // namespace parcav
