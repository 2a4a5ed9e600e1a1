#include "parcav/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parcav {

namespace {

// clamp-and-sanitize shared by both field types
double sanitize_values(std::vector<double>& values) {
    double maxabs = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("field value not finite");
        maxabs = std::max(maxabs, std::abs(v));
    }
    const double tol = 1e-12 * std::max(1.0, maxabs);
    double mx = 0.0;
    for (double& v : values) {
        if (v < -tol) throw std::invalid_argument("field value negative beyond roundoff");
        if (v < 0.0) v = 0.0;
        mx = std::max(mx, v);
    }
    return mx;
}

} // namespace

double interpolate_on_grid(const SpaceGrid& grid, std::span<const double> node_values, Pt x) {
    if (node_values.size() != grid.node_count())
        throw std::invalid_argument("node value count != grid node count");
    const double h = grid.spacing();
    const Pt o = grid.origin();
    const double slack = 1e-9 * h;

    double sx = (x.x - o.x) / h;
    if (sx < 0.0 || sx > static_cast<double>(grid.nx())) {
        if (sx < -slack / h || sx > static_cast<double>(grid.nx()) + slack / h)
            throw std::out_of_range("interpolation point outside grid box");
        sx = std::clamp(sx, 0.0, static_cast<double>(grid.nx()));
    }
    long ix = std::min(static_cast<long>(std::floor(sx)), grid.nx() - 1);
    ix = std::max(ix, 0L);
    const double tx = sx - static_cast<double>(ix);

    if (grid.dim() == 1) {
        if (x.y != 0.0) throw std::out_of_range("1D grid interpolation needs y = 0");
        const std::size_t i0 = grid.at(ix, 0);
        const std::size_t i1 = grid.at(ix + 1, 0);
        const double v0 = (i0 == SpaceGrid::npos) ? 0.0 : node_values[i0];
        const double v1 = (i1 == SpaceGrid::npos) ? 0.0 : node_values[i1];
        return (1.0 - tx) * v0 + tx * v1;
    }

    double sy = (x.y - o.y) / h;
    if (sy < 0.0 || sy > static_cast<double>(grid.ny())) {
        if (sy < -slack / h || sy > static_cast<double>(grid.ny()) + slack / h)
            throw std::out_of_range("interpolation point outside grid box");
        sy = std::clamp(sy, 0.0, static_cast<double>(grid.ny()));
    }
    long iy = std::min(static_cast<long>(std::floor(sy)), grid.ny() - 1);
    iy = std::max(iy, 0L);
    const double ty = sy - static_cast<double>(iy);

    auto corner = [&](long cx, long cy) {
        const std::size_t i = grid.at(cx, cy);
        return (i == SpaceGrid::npos) ? 0.0 : node_values[i];
    };
    const double v00 = corner(ix, iy);
    const double v10 = corner(ix + 1, iy);
    const double v01 = corner(ix, iy + 1);
    const double v11 = corner(ix + 1, iy + 1);
    return (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 +
           (1.0 - tx) * ty * v01 + tx * ty * v11;
}

SpaceTimeField::SpaceTimeField(std::shared_ptr<const SpaceGrid> grid,
                               std::vector<double> times,
                               std::vector<double> values,
                               FieldMeta meta)
    : grid_(std::move(grid)), times_(std::move(times)), values_(std::move(values)),
      meta_(std::move(meta)) {
    if (!grid_) throw std::invalid_argument("field needs a grid");
    if (times_.size() < 2) throw std::invalid_argument("field needs at least two time levels");
    if (times_.front() != 0.0) throw std::invalid_argument("field must start at t = 0");
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(std::isfinite(times_[k]) && times_[k] > times_[k - 1]))
            throw std::invalid_argument("field times must increase strictly");
    }
    const std::size_t n = grid_->node_count();
    if (values_.size() != times_.size() * n)
        throw std::invalid_argument("field value count != levels * nodes");
    max_value_ = sanitize_values(values_);
    for (std::size_t i = 0; i < n; ++i) {
        if (values_[i] != 0.0)
            throw std::invalid_argument("field must vanish at t = 0");
    }
    const double btol = 1e-12 * std::max(1.0, max_value_);
    for (std::size_t k = 0; k < times_.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!grid_->interior(i) && values_[k * n + i] > btol)
                throw std::invalid_argument("field must vanish on boundary nodes");
        }
    }
}

std::span<const double> SpaceTimeField::slice(std::size_t k) const {
    const std::size_t n = grid_->node_count();
    return {values_.data() + k * n, n};
}

std::size_t SpaceTimeField::locate_time(double t) const {
    const double T = times_.back();
    if (t < -1e-12 || t > T * (1.0 + 1e-9) + 1e-12)
        throw std::out_of_range("interpolation time outside stored range");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = (it == times_.begin()) ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    if (k >= times_.size() - 1) k = times_.size() - 2;
    return k;
}

double SpaceTimeField::space_value(std::size_t k, Pt x) const {
    return interpolate_on_grid(*grid_, slice(k), x);
}

double SpaceTimeField::interpolate(Pt x, double t, double alpha) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("time transform exponent must be positive");
    const std::size_t k = locate_time(t);
    const double tau0 = std::pow(times_[k], alpha);
    const double tau1 = std::pow(times_[k + 1], alpha);
    const double tau = std::pow(std::max(t, 0.0), alpha);
    const double th = std::clamp((tau - tau0) / (tau1 - tau0), 0.0, 1.0);
    return (1.0 - th) * space_value(k, x) + th * space_value(k + 1, x);
}

double SpaceTimeField::interpolate_raw(Pt x, double t) const {
    const std::size_t k = locate_time(t);
    const double th = std::clamp((t - times_[k]) / (times_[k + 1] - times_[k]), 0.0, 1.0);
    return (1.0 - th) * space_value(k, x) + th * space_value(k + 1, x);
}

SteadyField::SteadyField(std::shared_ptr<const SpaceGrid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("field needs a grid");
    if (values_.size() != grid_->node_count())
        throw std::invalid_argument("field value count != grid node count");
    max_value_ = sanitize_values(values_);
    const double btol = 1e-12 * std::max(1.0, max_value_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!grid_->interior(i) && values_[i] > btol)
            throw std::invalid_argument("field must vanish on boundary nodes");
    }
}

double SteadyField::interpolate(Pt x) const {
    return interpolate_on_grid(*grid_, values_, x);
}

} // namespace parcav
