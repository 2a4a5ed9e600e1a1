#include "parcav/source.hpp"

#include <cmath>
#include <stdexcept>

namespace parcav {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_nonneg(const std::vector<double>& v, const char* msg) {
    for (double x : v) require(std::isfinite(x) && x >= 0.0, msg);
}

} // namespace

SpatialProfile SpatialProfile::constant(double value) {
    require(std::isfinite(value) && value >= 0.0, "constant profile needs value >= 0");
    SpatialProfile p;
    p.kind = Kind::constant;
    p.c = value;
    return p;
}

SpatialProfile SpatialProfile::dist_power(double d) {
    require(std::isfinite(d) && d >= 0.0, "dist profile needs exponent d >= 0");
    SpatialProfile p;
    p.kind = Kind::dist_power;
    p.d = d;
    return p;
}

SpatialProfile SpatialProfile::tabulated(std::vector<double> node_values) {
    require(!node_values.empty(), "tabulated profile needs at least one value");
    require_nonneg(node_values, "tabulated profile values must be finite and >= 0");
    SpatialProfile p;
    p.kind = Kind::tabulated;
    p.table = std::move(node_values);
    return p;
}

double SpatialProfile::value(const ConvexDomain& dom, Pt x) const {
    switch (kind) {
    case Kind::constant:
        return c;
    case Kind::dist_power: {
        double dist = dom.boundary_distance(x);
        if (d == 0.0) return 1.0;
        return std::pow(dist, d);
    }
    case Kind::tabulated:
        throw std::logic_error("tabulated profile has no off-grid value");
    }
    return 0.0;
}

SourceSpec SourceSpec::constant(double c) {
    require(std::isfinite(c) && c >= 0.0, "constant source needs c >= 0");
    SourceSpec s;
    s.kind_ = Kind::constant;
    s.c_ = c;
    return s;
}

SourceSpec SourceSpec::dist_power(double d, double gamma) {
    require(std::isfinite(d) && d >= 0.0, "dist_power source needs d >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= 0.5,
            "dist_power source needs gamma in [0, 1/2]");
    SourceSpec s;
    s.kind_ = Kind::dist_power;
    s.d_ = d;
    s.gamma_ = gamma;
    return s;
}

SourceSpec SourceSpec::time_weighted(double gamma, SpatialProfile f) {
    require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= 0.5,
            "time_weighted source needs gamma in [0, 1/2]");
    SourceSpec s;
    s.kind_ = Kind::time_weighted;
    s.gamma_ = gamma;
    s.profile_ = std::move(f);
    return s;
}

SourceSpec SourceSpec::semilinear_power(double gamma) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
            "semilinear source needs gamma in (0,1)");
    SourceSpec s;
    s.kind_ = Kind::semilinear_power;
    s.gamma_ = gamma;
    return s;
}

SourceSpec SourceSpec::semilinear_regularized(double gamma, double eps) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
            "semilinear source needs gamma in (0,1)");
    require(std::isfinite(eps) && eps > 0.0, "regularization eps must be > 0");
    SourceSpec s;
    s.kind_ = Kind::semilinear_regularized;
    s.gamma_ = gamma;
    s.eps_ = eps;
    return s;
}

SourceSpec SourceSpec::tabulated(std::vector<double> node_values) {
    require(!node_values.empty(), "tabulated source needs at least one value");
    require_nonneg(node_values, "tabulated source values must be finite and >= 0");
    SourceSpec s;
    s.kind_ = Kind::tabulated;
    s.profile_ = SpatialProfile::tabulated(std::move(node_values));
    return s;
}

std::string SourceSpec::kind_name() const {
    switch (kind_) {
    case Kind::constant: return "constant";
    case Kind::dist_power: return "dist_power";
    case Kind::time_weighted: return "time_weighted";
    case Kind::semilinear_power: return "semilinear_power";
    case Kind::semilinear_regularized: return "semilinear_regularized";
    case Kind::tabulated: return "tabulated";
    }
    return "?";
}

std::vector<double> SourceSpec::spatial_on(const SpaceGrid& grid) const {
    const std::size_t n = grid.node_count();
    std::vector<double> out(n, 0.0);
    switch (kind_) {
    case Kind::constant:
        for (std::size_t i = 0; i < n; ++i) out[i] = c_;
        break;
    case Kind::dist_power:
        for (std::size_t i = 0; i < n; ++i) {
            double dist = grid.boundary_distance(i);
            out[i] = (d_ == 0.0) ? 1.0 : std::pow(dist, d_);
        }
        break;
    case Kind::time_weighted:
        if (profile_.kind == SpatialProfile::Kind::tabulated) {
            if (profile_.table.size() != n)
                throw std::invalid_argument("tabulated profile length != grid node count");
            out = profile_.table;
        } else {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = profile_.value(grid.domain(), grid.node(i));
        }
        break;
    case Kind::semilinear_power:
    case Kind::semilinear_regularized:
        for (std::size_t i = 0; i < n; ++i) out[i] = 1.0;
        break;
    case Kind::tabulated:
        if (profile_.table.size() != n)
            throw std::invalid_argument("tabulated source length != grid node count");
        out = profile_.table;
        break;
    }
    return out;
}

double SourceSpec::time_factor(double t) const {
    if (kind_ != Kind::dist_power && kind_ != Kind::time_weighted) return 1.0;
    if (gamma_ == 0.0) return 1.0;
    if (t <= 0.0) return 0.0;
    return std::pow(t, gamma_);
}

double SourceSpec::value_at(const ConvexDomain& dom, Pt x, double t) const {
    switch (kind_) {
    case Kind::constant:
        return c_;
    case Kind::dist_power: {
        double dist = dom.boundary_distance(x);
        double sp = (d_ == 0.0) ? 1.0 : std::pow(dist, d_);
        return time_factor(t) * sp;
    }
    case Kind::time_weighted:
        return time_factor(t) * profile_.value(dom, x);
    case Kind::semilinear_power:
    case Kind::semilinear_regularized:
        throw std::logic_error("semilinear source has no (x,t) value without u");
    case Kind::tabulated:
        throw std::logic_error("tabulated source has no off-grid value");
    }
    return 0.0;
}

} // namespace parcav
