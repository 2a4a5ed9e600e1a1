#include "parcav/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parcav {

namespace {

constexpr double kBoundaryBand = 1e-12;

double hypot2(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

// signed distance of x to the line through v with inward unit normal nrm
double edge_signed(const Pt& x, const Pt& v, const Pt& nrm) {
    return nrm.x * (x.x - v.x) + nrm.y * (x.y - v.y);
}

double point_segment_distance(const Pt& x, const Pt& a, const Pt& b) {
    double ex = b.x - a.x, ey = b.y - a.y;
    double len2 = ex * ex + ey * ey;
    double t = ((x.x - a.x) * ex + (x.y - a.y) * ey) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return hypot2(x.x - (a.x + t * ex), x.y - (a.y + t * ey));
}

} // namespace

ConvexDomain ConvexDomain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval: requires a < b");
    ConvexDomain d;
    d.shape_ = Shape::interval;
    d.a_ = a;
    d.b_ = b;
    d.inradius_ = (b - a) / 2;
    return d;
}

ConvexDomain ConvexDomain::disk(Pt center, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disk: requires radius > 0");
    ConvexDomain d;
    d.shape_ = Shape::disk;
    d.center_ = center;
    d.radius_ = radius;
    d.inradius_ = radius;
    return d;
}

ConvexDomain ConvexDomain::polygon(std::vector<Pt> vertices) {
    const std::size_t m = vertices.size();
    if (m < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Pt& p = vertices[i];
        const Pt& q = vertices[(i + 1) % m];
        area2 += p.x * q.y - q.x * p.y;
    }
    if (!(area2 > 1e-14)) throw std::invalid_argument("polygon: vertices must be CCW with positive area");
    for (std::size_t i = 0; i < m; ++i) {
        const Pt& a = vertices[i];
        const Pt& b = vertices[(i + 1) % m];
        const Pt& c = vertices[(i + 2) % m];
        double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if (!(cross > 0)) throw std::invalid_argument("polygon: not strictly convex CCW");
    }
    ConvexDomain d;
    d.shape_ = Shape::polygon;
    d.verts_ = std::move(vertices);

    // Chebyshev radius: maximize r subject to n_i.x - r >= n_i.v_i over all
    // edges.  The optimum of this 3-variable LP sits on a triple of active
    // constraints (pairs of parallel edges are covered by triples too), so
    // plain enumeration is exact and fast at polygon sizes we accept.
    const std::size_t n = d.verts_.size();
    std::vector<Pt> nrm(n), base(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& p = d.verts_[i];
        const Pt& q = d.verts_[(i + 1) % n];
        double ex = q.x - p.x, ey = q.y - p.y;
        double len = hypot2(ex, ey);
        nrm[i] = {-ey / len, ex / len};
        base[i] = p;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                // solve [n_i -1; n_j -1; n_k -1] (x y r)^T = (n.v)
                double A[3][4] = {
                    {nrm[i].x, nrm[i].y, -1, nrm[i].x * base[i].x + nrm[i].y * base[i].y},
                    {nrm[j].x, nrm[j].y, -1, nrm[j].x * base[j].x + nrm[j].y * base[j].y},
                    {nrm[k].x, nrm[k].y, -1, nrm[k].x * base[k].x + nrm[k].y * base[k].y}};
                for (int c = 0; c < 3; ++c) { // Gaussian elimination, partial pivot
                    int piv = c;
                    for (int rr = c + 1; rr < 3; ++rr)
                        if (std::abs(A[rr][c]) > std::abs(A[piv][c])) piv = rr;
                    if (std::abs(A[piv][c]) < 1e-14) goto next_triple;
                    std::swap(A[c], A[piv]);
                    for (int rr = 0; rr < 3; ++rr) {
                        if (rr == c) continue;
                        double f = A[rr][c] / A[c][c];
                        for (int cc = c; cc < 4; ++cc) A[rr][cc] -= f * A[c][cc];
                    }
                }
                {
                    Pt x{A[0][3] / A[0][0], A[1][3] / A[1][1]};
                    double r = A[2][3] / A[2][2];
                    if (r <= best) goto next_triple;
                    for (std::size_t e = 0; e < n; ++e)
                        if (edge_signed(x, base[e], nrm[e]) < r - 1e-12) goto next_triple;
                    best = r;
                }
            next_triple:;
            }
    d.inradius_ = best;
    if (!(best > 0)) throw std::invalid_argument("polygon: degenerate (zero inradius)");
    return d;
}

bool ConvexDomain::contains(Pt x) const {
    switch (shape_) {
    case Shape::interval:
        if (x.y != 0.0) throw std::invalid_argument("contains: dimension mismatch (interval expects scalar point)");
        return x.x > a_ + kBoundaryBand && x.x < b_ - kBoundaryBand;
    case Shape::disk:
        return radius_ - hypot2(x.x - center_.x, x.y - center_.y) > kBoundaryBand;
    case Shape::polygon: {
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Pt& p = verts_[i];
            const Pt& q = verts_[(i + 1) % n];
            double ex = q.x - p.x, ey = q.y - p.y;
            double len = hypot2(ex, ey);
            double sd = (-ey * (x.x - p.x) + ex * (x.y - p.y)) / len;
            if (sd <= kBoundaryBand) return false;
        }
        return true;
    }
    }
    return false;
}

bool ConvexDomain::in_closure(Pt x) const {
    switch (shape_) {
    case Shape::interval:
        if (x.y != 0.0) throw std::invalid_argument("in_closure: dimension mismatch");
        return x.x >= a_ - kBoundaryBand && x.x <= b_ + kBoundaryBand;
    case Shape::disk:
        return radius_ - hypot2(x.x - center_.x, x.y - center_.y) >= -kBoundaryBand;
    case Shape::polygon: {
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Pt& p = verts_[i];
            const Pt& q = verts_[(i + 1) % n];
            double ex = q.x - p.x, ey = q.y - p.y;
            double len = hypot2(ex, ey);
            double sd = (-ey * (x.x - p.x) + ex * (x.y - p.y)) / len;
            if (sd < -kBoundaryBand) return false;
        }
        return true;
    }
    }
    return false;
}

double ConvexDomain::boundary_distance(Pt x) const {
    switch (shape_) {
    case Shape::interval: {
        if (x.y != 0.0) throw std::invalid_argument("boundary_distance: dimension mismatch");
        double d = std::min(x.x - a_, b_ - x.x);
        if (d < -kBoundaryBand) throw OutsideDomainError("boundary_distance: point outside closure");
        return std::max(d, 0.0);
    }
    case Shape::disk: {
        double d = radius_ - hypot2(x.x - center_.x, x.y - center_.y);
        if (d < -kBoundaryBand) throw OutsideDomainError("boundary_distance: point outside closure");
        return std::max(d, 0.0);
    }
    case Shape::polygon: {
        const std::size_t n = verts_.size();
        double inside = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const Pt& p = verts_[i];
            const Pt& q = verts_[(i + 1) % n];
            double ex = q.x - p.x, ey = q.y - p.y;
            double len = hypot2(ex, ey);
            double sd = (-ey * (x.x - p.x) + ex * (x.y - p.y)) / len;
            inside = std::min(inside, sd);
        }
        if (inside < -kBoundaryBand) throw OutsideDomainError("boundary_distance: point outside closure");
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            d = std::min(d, point_segment_distance(x, verts_[i], verts_[(i + 1) % n]));
        return d;
    }
    }
    return 0.0;
}

double ConvexDomain::inradius() const { return inradius_; }

std::array<double, 4> ConvexDomain::bounding_box() const {
    switch (shape_) {
    case Shape::interval:
        return {a_, 0.0, b_, 0.0};
    case Shape::disk:
        return {center_.x - radius_, center_.y - radius_, center_.x + radius_, center_.y + radius_};
    case Shape::polygon: {
        double x0 = verts_[0].x, y0 = verts_[0].y, x1 = x0, y1 = y0;
        for (const Pt& v : verts_) {
            x0 = std::min(x0, v.x);
            y0 = std::min(y0, v.y);
            x1 = std::max(x1, v.x);
            y1 = std::max(y1, v.y);
        }
        return {x0, y0, x1, y1};
    }
    }
    return {};
}

std::size_t SpaceGrid::at(long ix, long iy) const {
    if (ix < 0 || ix > nx_ || iy < 0 || iy > ny_) return npos;
    return index_[static_cast<std::size_t>(iy) * (nx_ + 1) + ix];
}

SpaceGrid build_grid(const ConvexDomain& dom, double h) {
    if (!(h > 0)) throw std::invalid_argument("build_grid: h must be positive");
    if (!(h <= dom.inradius()))
        throw std::invalid_argument("build_grid: h too coarse (exceeds the inradius)");

    SpaceGrid g;
    g.dom_ = dom;

    if (dom.dimension() == 1) {
        // snap spacing so the endpoints are lattice points
        long n = std::lround((dom.b() - dom.a()) / h);
        g.h_ = (dom.b() - dom.a()) / static_cast<double>(n);
        g.origin_ = {dom.a(), 0.0};
        g.nx_ = n;
        g.ny_ = 0;
        g.index_.assign(n + 1, SpaceGrid::npos);
        for (long i = 0; i <= n; ++i) {
            Pt p{dom.a() + i * g.h_, 0.0};
            bool in = i > 0 && i < n;
            g.index_[i] = g.nodes_.size();
            g.coords_.push_back({i, 0});
            g.nodes_.push_back(p);
            g.interior_.push_back(in);
            g.bdist_.push_back(in ? dom.boundary_distance(p) : 0.0);
        }
    } else {
        auto bb = dom.bounding_box();
        g.h_ = h;
        g.origin_ = {bb[0], bb[1]};
        g.nx_ = static_cast<long>(std::ceil((bb[2] - bb[0]) / h - 1e-9));
        g.ny_ = static_cast<long>(std::ceil((bb[3] - bb[1]) / h - 1e-9));
        auto pt = [&](long ix, long iy) { return Pt{bb[0] + ix * h, bb[1] + iy * h}; };
        std::vector<char> inside((g.nx_ + 1) * (g.ny_ + 1), 0);
        auto idx = [&](long ix, long iy) { return static_cast<std::size_t>(iy) * (g.nx_ + 1) + ix; };
        for (long iy = 0; iy <= g.ny_; ++iy)
            for (long ix = 0; ix <= g.nx_; ++ix)
                inside[idx(ix, iy)] = dom.contains(pt(ix, iy)) ? 1 : 0;
        // node set: every lattice point in the closure, plus stencil
        // neighbors of interior points (those carry the Dirichlet zero just
        // outside a curved boundary; cut-cell masking)
        std::vector<char> keep((g.nx_ + 1) * (g.ny_ + 1), 0);
        for (long iy = 0; iy <= g.ny_; ++iy)
            for (long ix = 0; ix <= g.nx_; ++ix)
                keep[idx(ix, iy)] = dom.in_closure(pt(ix, iy)) ? 1 : 0;
        for (long iy = 0; iy <= g.ny_; ++iy)
            for (long ix = 0; ix <= g.nx_; ++ix) {
                if (!inside[idx(ix, iy)]) continue;
                const long nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
                for (auto& q : nb)
                    if (q[0] >= 0 && q[0] <= g.nx_ && q[1] >= 0 && q[1] <= g.ny_) keep[idx(q[0], q[1])] = 1;
            }
        g.index_.assign((g.nx_ + 1) * (g.ny_ + 1), SpaceGrid::npos);
        for (long iy = 0; iy <= g.ny_; ++iy)
            for (long ix = 0; ix <= g.nx_; ++ix) {
                if (!keep[idx(ix, iy)]) continue;
                bool in = inside[idx(ix, iy)];
                g.index_[idx(ix, iy)] = g.nodes_.size();
                g.coords_.push_back({ix, iy});
                g.nodes_.push_back(pt(ix, iy));
                g.interior_.push_back(in);
                g.bdist_.push_back(in ? dom.boundary_distance(pt(ix, iy)) : 0.0);
            }
    }
    for (bool b : g.interior_)
        if (b) ++g.interior_count_;
    if (g.interior_count_ == 0)
        throw std::invalid_argument("build_grid: h too coarse (no interior nodes)");
    return g;
}

} // namespace parcav
