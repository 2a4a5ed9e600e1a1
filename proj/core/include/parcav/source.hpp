#pragma once

#include <string>
#include <vector>

#include "parcav/domain.hpp"

namespace parcav {

// Spatial factor of a separable source: 1, c, dist(x,bdry)^d, or a per-node
// table bound to a specific grid.
struct SpatialProfile {
    enum class Kind { constant, dist_power, tabulated };
    Kind kind = Kind::constant;
    double c = 1.0;              // constant value
    double d = 1.0;              // dist exponent
    std::vector<double> table;   // per grid node, tabulated only

    static SpatialProfile constant(double value);
    static SpatialProfile dist_power(double d);
    static SpatialProfile tabulated(std::vector<double> node_values);

    // continuous-space evaluation; tabulated profiles have no off-grid value
    bool analytic() const { return kind != Kind::tabulated; }
    double value(const ConvexDomain& dom, Pt x) const;
};

// Declarative right-hand side f for  du/dt = Lap u + f.  Only the families
// the theory covers; there is deliberately no general callback kind and no
// grad-u dependence.
class SourceSpec {
public:
    enum class Kind {
        constant,               // f = c
        dist_power,             // f = t^gamma * dist(x,bdry)^d
        time_weighted,          // f = t^gamma * profile(x)
        semilinear_power,       // f = u^gamma
        semilinear_regularized, // f = (u+eps)^gamma
        tabulated               // f = table[node]
    };

    static SourceSpec constant(double c);
    static SourceSpec dist_power(double d, double gamma);
    static SourceSpec time_weighted(double gamma, SpatialProfile f);
    static SourceSpec semilinear_power(double gamma);
    static SourceSpec semilinear_regularized(double gamma, double eps);
    static SourceSpec tabulated(std::vector<double> node_values);

    Kind kind() const { return kind_; }
    bool semilinear() const {
        return kind_ == Kind::semilinear_power || kind_ == Kind::semilinear_regularized;
    }
    bool time_dependent() const {
        return (kind_ == Kind::dist_power || kind_ == Kind::time_weighted) && gamma_ > 0;
    }
    double gamma() const { return gamma_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double eps() const { return eps_; }
    const SpatialProfile& profile() const { return profile_; }
    std::string kind_name() const;

    // spatial factor sampled on grid nodes (all-ones for semilinear kinds);
    // validates tabulated length against the grid
    std::vector<double> spatial_on(const SpaceGrid& grid) const;
    // t^gamma for the time-weighted kinds, 1 otherwise (0^0 treated as 1)
    double time_factor(double t) const;
    // continuous-space f(x, t) for non-semilinear analytic kinds (structure
    // condition sampling); throws for tabulated
    double value_at(const ConvexDomain& dom, Pt x, double t) const;

private:
    SourceSpec() = default;
    Kind kind_ = Kind::constant;
    double c_ = 0.0;
    double d_ = 0.0;
    double gamma_ = 0.0;
    double eps_ = 0.0;
    SpatialProfile profile_;
};

} // namespace parcav
