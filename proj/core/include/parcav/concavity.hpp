#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parcav/domain.hpp"
#include "parcav/exponent.hpp"
#include "parcav/field.hpp"
#include "parcav/means.hpp"
#include "parcav/report.hpp"
#include "parcav/source.hpp"

namespace parcav {

// Defect threshold below which grid interpolation error must not trigger a
// refutation: C_tol * (h^2 + dt^{min(1,2 alpha)}) * max u.  dt comes from the
// field's solver metadata.
double certification_tolerance(const SpaceTimeField& u, double alpha, double c_tol = 5.0);

// Midpoint test of u((1-l)x1+l x2, M_alpha(t1,t2;l)) >= M_p(u1,u2;l) over
// quasi-random triples (seeded) plus a deterministic sweep over node pairs,
// a geometric time ladder anchored at t_min, and l in {1/4,1/2,3/4}.  Values
// are read by multilinear interpolation in (x, t^alpha).
ConcavityReport check_parabolic_concavity(const SpaceTimeField& u, const ConcavityQuery& q,
                                          double t_min);

// Same inequality restricted to a single time slice (spatial p-concavity).
ConcavityReport check_spatial_concavity(const SpaceTimeField& u, double t, Exponent p,
                                        std::size_t samples, double tolerance,
                                        std::uint64_t seed = 0);
ConcavityReport check_spatial_concavity(const SteadyField& v, Exponent p,
                                        std::size_t samples, double tolerance,
                                        std::uint64_t seed = 0);

// Envelope values live on the field's grid at a subsampled set of stored
// times (early times kept dense on a geometric ladder).  Gaps are reported
// in solution units.
struct EnvelopeResult {
    std::vector<double> times;
    std::vector<double> values;     // time-major over grid nodes, >= u - 1e-12
    double max_gap = 0.0;
    double relative_gap = 0.0;      // max_gap / max u
    Pt gap_location;
    double gap_time = 0.0;
    bool degenerate_hull = false;   // flat cloud treated as exactly concave
    int support_points = 0;         // points per combination the search used
};

// Smallest alpha-parabolically p-concave majorant: upper convex hull of the
// cloud (x, t^alpha, u^p) mapped back through ( . )^{1/p}.  Exact hull for
// 1D fields; 2D fields use a per-node local tuple search (lower bound of the
// true envelope, still a majorant of u).
EnvelopeResult full_envelope(const SpaceTimeField& u, double alpha, double p);

// Envelope restricted to a fixed weight vector: per evaluation point,
// maximize the weighted p-mean over (n+1)-tuples of grid samples satisfying
// the two mean constraints; coarse stride-4 search then stride-1 descent.
EnvelopeResult lambda_envelope(const SpaceTimeField& u, double alpha, double p,
                               const WeightVector& lambda);

// Bisection for the largest certified exponent: base.p is ignored, the
// bracket [p_lo, p_hi] must have check(p_lo) pass and check(p_hi) fail.
double estimate_max_exponent(const SpaceTimeField& u, const ConcavityQuery& base,
                             double t_min, double p_lo, double p_hi, double tol_p);

// Sampling box for the structure check: spatial domain x time x value range.
struct StructureRegion {
    ConvexDomain dom = ConvexDomain::interval(0, 1);
    double t_lo = 0.1, t_hi = 2.0;
    double v_lo = 0.1, v_hi = 1.0;
};

// Plain midpoint concavity of g(x,t,v) = v^{3-1/p} f(x, t^{1/alpha}, v^{1/p})
// over random pairs in the region plus deterministic axis and ray pairs.
// theta_samples is accepted for interface parity; the supported source
// families have no gradient argument, so theta never enters g.
ConcavityReport check_structure_condition(const SourceSpec& src, double alpha, double p,
                                          std::size_t theta_samples,
                                          const StructureRegion& region,
                                          std::size_t samples, double tolerance,
                                          std::uint64_t seed = 0);

struct PropertyVerdict {
    std::string property;
    bool pass = false;
    double detail = 0.0; // worst defect or margin backing the verdict
};

// Sampled checks of the mean-inequality calculus on concrete fields:
//  - time-constant extension of a spatially p-concave w stays concave for
//    any alpha,
//  - a pass survives lowering p (downgrade),
//  - a pass survives raising alpha when u is time-nondecreasing,
//  - products multiply concavity exponents harmonically (1/r = 1/p + 1/q).
std::vector<PropertyVerdict> property_suite(const SpaceTimeField& u, const SteadyField& w,
                                            double alpha, Exponent p, Exponent q,
                                            const ConcavityQuery& base, double t_min);

} // namespace parcav
