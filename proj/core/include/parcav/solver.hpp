#pragma once

#include <optional>
#include <vector>

#include "parcav/domain.hpp"
#include "parcav/field.hpp"
#include "parcav/source.hpp"

namespace parcav {

// Backward-Euler diffusion with the source taken explicitly at the previous
// level (IMEX).  The first macro step runs as 10 substeps of dt/10 to resolve
// the initial layer (u(.,0)=0 while f may be positive at once).  Levels are
// stored every store_stride macro steps; t=0 and t=T are always stored.
SpaceTimeField solve_parabolic(const ConvexDomain& dom, const SourceSpec& src,
                               double h, double dt, double T,
                               std::size_t store_stride = 1);

struct SemilinearResult {
    SpaceTimeField field;                // smallest-eps solve
    std::vector<double> eps_sequence;
    double cauchy_gap = 0.0;             // max-norm gap of the last two sweeps
    double worst_ordering_violation = 0.0; // max of (smaller-eps u) - (larger-eps u)
};

// Sweeps the regularized source (u+eps)^gamma down eps_sequence and returns
// the last solve; the sweeps must stay pointwise ordered (within 1e-10) or
// the scheme is considered to have failed.
SemilinearResult solve_semilinear_maximal(const ConvexDomain& dom, double gamma,
                                          double h, double dt, double T,
                                          std::vector<double> eps_sequence,
                                          std::size_t store_stride = 1);

// -Lap v = f for constant / dist_power(gamma=0) / tabulated sources, and the
// damped fixed point v <- (-Lap)^{-1} v^gamma for semilinear_power (started
// from the constant-1 linear solve, residual < 1e-10).
SteadyField solve_steady(const ConvexDomain& dom, const SourceSpec& src, double h);

struct MonotonicityReport {
    bool pass = false;
    double min_increment = 0.0; // most negative consecutive time difference
    double tolerance = 0.0;
};

// min over nodes and consecutive stored levels of u(x,t_{k+1}) - u(x,t_k);
// pass iff >= -tolerance (default 1e-10 * max u)
MonotonicityReport time_monotonicity_check(const SpaceTimeField& u,
                                           std::optional<double> tolerance = {});

// Least-squares slope s of log u(x*+rho nu, rho^{1/alpha}) against log rho
// over 8 log-spaced rho in [4h, 16h], nu the unit vector from x_star toward
// y_star (zero if equal).  Interpolation is linear in raw t.  Throws
// std::runtime_error if u vanishes at a sample point.
double boundary_scaling_exponent(const SpaceTimeField& u, Pt x_star, Pt y_star,
                                 double alpha);

} // namespace parcav
