#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "parcav/domain.hpp"

namespace parcav {

// provenance carried by a solved field
struct FieldMeta {
    std::string scheme;  // e.g. "imex-be"
    double dt = 0.0;     // macro step of the solve, 0 for hand-built fields
    std::string source;  // source kind description
};

// Nonnegative scalar field on grid nodes at stored time levels, time-major.
// Invariants checked at construction: times strictly increasing from 0, the
// t=0 slice identically zero, boundary nodes zero at every level, all values
// finite and >= 0 (negative roundoff within 1e-12 of scale is clamped).
class SpaceTimeField {
public:
    SpaceTimeField(std::shared_ptr<const SpaceGrid> grid,
                   std::vector<double> times,
                   std::vector<double> values,
                   FieldMeta meta = {});

    const SpaceGrid& grid() const { return *grid_; }
    std::shared_ptr<const SpaceGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& times() const { return times_; }
    std::size_t level_count() const { return times_.size(); }
    double final_time() const { return times_.back(); }
    double max_value() const { return max_value_; }
    const FieldMeta& meta() const { return meta_; }

    std::span<const double> slice(std::size_t k) const;
    double at(std::size_t k, std::size_t node) const {
        return values_[k * grid_->node_count() + node];
    }

    // multilinear in space, linear in tau = t^alpha between stored levels
    double interpolate(Pt x, double t, double alpha) const;
    // multilinear in space, linear in raw t
    double interpolate_raw(Pt x, double t) const;
    // spatial interpolation within one stored level
    double space_value(std::size_t k, Pt x) const;

private:
    std::size_t locate_time(double t) const; // k with times[k] <= t <= times[k+1]
    std::shared_ptr<const SpaceGrid> grid_;
    std::vector<double> times_;
    std::vector<double> values_;
    FieldMeta meta_;
    double max_value_ = 0.0;
};

// Time-independent nonnegative field on grid nodes (steady states).
class SteadyField {
public:
    SteadyField(std::shared_ptr<const SpaceGrid> grid, std::vector<double> values);

    const SpaceGrid& grid() const { return *grid_; }
    std::shared_ptr<const SpaceGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double at(std::size_t node) const { return values_[node]; }
    double max_value() const { return max_value_; }

    double interpolate(Pt x) const;

private:
    std::shared_ptr<const SpaceGrid> grid_;
    std::vector<double> values_;
    double max_value_ = 0.0;
};

// shared node-value interpolation: piecewise linear (1D) or bilinear with
// absent lattice corners contributing 0 (2D cut cells); throws
// std::out_of_range beyond the lattice box
double interpolate_on_grid(const SpaceGrid& grid, std::span<const double> node_values, Pt x);

} // namespace parcav
