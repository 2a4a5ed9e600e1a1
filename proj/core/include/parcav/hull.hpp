#pragma once

#include <array>
#include <vector>

namespace parcav {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Oriented hull facet: unit outward normal n with n . p <= offset for every
// input point (within the construction tolerance).
struct HullFacet {
    std::array<int, 3> v{};
    Vec3 normal;
    double offset = 0.0;
};

// Facets of the 3D convex hull (quickhull).  Inputs that are affinely
// degenerate (fewer than 4 points, or all collinear/coplanar within eps)
// yield an empty facet list; callers treat that as an exactly flat cloud.
// eps is an absolute thickness tolerance, so scale inputs to O(1) first.
std::vector<HullFacet> convex_hull_3d(const std::vector<Vec3>& pts, double eps = 1e-10);

} // namespace parcav
