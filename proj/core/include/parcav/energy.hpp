#pragma once

#include <string>
#include <vector>

#include "parcav/exponent.hpp"
#include "parcav/field.hpp"
#include "parcav/report.hpp"

namespace parcav {

// H_m(t) = (integral of u(.,t)^m)^{1/m}; m=1 is the heat energy.
struct EnergyCurve {
    std::vector<double> times;
    std::vector<double> values;
    double m = 1.0;
    std::string quadrature; // "trapezoid" (1D) or "masked-cell" (2D)
};

// Per-level quadrature: 1D trapezoid (boundary values are zero); 2D cell sum
// with half weight on interior nodes that touch a boundary node.
EnergyCurve heat_energy(const SpaceTimeField& u, double m = 1.0);

// q = p/(np+m), the time-concavity exponent the solution exponent p induces
// on H_m; 1/n at p=+inf, -inf at p=-m/n (requires p >= -m/n).
Exponent energy_concavity_exponent(Exponent p, int n, double m = 1.0);

// Midpoint q-mean test of the curve on [t_min, T]; pair sweep over stored
// samples with lambda in {1/4, 1/2, 3/4}, midpoints by linear interpolation.
ConcavityReport check_curve_concavity(const EnergyCurve& c, Exponent q, double t_min,
                                      double tolerance);

// Same test after the monotone resampling t -> t^{1/alpha} (the midpoint is
// formed in tau = t^alpha coordinates).  alpha = 1 reduces to the plain test.
ConcavityReport check_time_reparametrized(const EnergyCurve& c, double alpha, Exponent q,
                                          double t_min, double tolerance);

// Two-column CSV with header "t,value".
std::string curve_to_csv(const EnergyCurve& c);

} // namespace parcav
