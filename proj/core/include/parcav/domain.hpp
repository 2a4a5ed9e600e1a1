#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace parcav {

// Point in R^1 or R^2; 1D callers leave y at 0.
struct Pt {
    double x = 0.0;
    double y = 0.0;
};

// Raised by boundary_distance for points outside the closure.
struct OutsideDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Bounded convex domain: interval (n=1), disk or convex CCW polygon (n=2).
class ConvexDomain {
public:
    enum class Shape { interval, disk, polygon };

    static ConvexDomain interval(double a, double b);
    static ConvexDomain disk(Pt center, double radius);
    // vertices must be counterclockwise and strictly convex turns
    static ConvexDomain polygon(std::vector<Pt> vertices);

    Shape shape() const { return shape_; }
    int dimension() const { return shape_ == Shape::interval ? 1 : 2; }

    // true iff x lies in the open domain; a 1e-12 band around the boundary
    // counts as boundary (false)
    bool contains(Pt x) const;

    // true iff x lies in the closed domain (same 1e-12 band, outward)
    bool in_closure(Pt x) const;

    // Euclidean distance to the boundary; exact for interval and disk, min
    // over edges for polygons.  Throws OutsideDomainError beyond the closure
    // (beyond a 1e-12 slack band).
    double boundary_distance(Pt x) const;

    double inradius() const;
    // x0, y0, x1, y1 (1D: y0 = y1 = 0)
    std::array<double, 4> bounding_box() const;

    // interval parameters (valid when shape()==interval)
    double a() const { return a_; }
    double b() const { return b_; }
    Pt center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<Pt>& vertices() const { return verts_; }

private:
    ConvexDomain() = default;
    Shape shape_ = Shape::interval;
    double a_ = 0.0, b_ = 1.0;   // interval
    Pt center_;                  // disk
    double radius_ = 0.0;        // disk
    std::vector<Pt> verts_;      // polygon, CCW
    double inradius_ = 0.0;      // cached for polygon
};

// Uniform lattice over the domain.  Interior nodes are lattice points
// strictly inside; boundary nodes are the lattice neighbors of interior
// nodes (they carry the Dirichlet value and may sit slightly outside a
// curved boundary: first-order cut-cell masking).
class SpaceGrid {
public:
    const ConvexDomain& domain() const { return dom_; }
    int dim() const { return dom_.dimension(); }
    double spacing() const { return h_; }

    std::size_t node_count() const { return nodes_.size(); }
    Pt node(std::size_t i) const { return nodes_[i]; }
    bool interior(std::size_t i) const { return interior_[i]; }
    double boundary_distance(std::size_t i) const { return bdist_[i]; }
    std::size_t interior_count() const { return interior_count_; }

    // lattice shape: node index at integer coords, or npos if absent
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t at(long ix, long iy) const;
    long nx() const { return nx_; }
    long ny() const { return ny_; }
    Pt origin() const { return origin_; }
    std::array<long, 2> lattice_coords(std::size_t i) const { return coords_[i]; }

    friend SpaceGrid build_grid(const ConvexDomain& dom, double h);

private:
    ConvexDomain dom_ = ConvexDomain::interval(0, 1);
    double h_ = 0.0;
    Pt origin_;
    long nx_ = 0, ny_ = 0; // lattice extent in steps (inclusive index range 0..nx)
    std::vector<Pt> nodes_;
    std::vector<bool> interior_;
    std::vector<double> bdist_;
    std::vector<std::array<long, 2>> coords_;
    std::vector<std::size_t> index_; // dense (nx+1)*(ny+1) -> node index / npos
    std::size_t interior_count_ = 0;
};

// pre: h <= inradius and the clipped lattice keeps an interior node
// ("h too coarse" otherwise)
SpaceGrid build_grid(const ConvexDomain& dom, double h);

} // namespace parcav
