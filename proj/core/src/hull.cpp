#include "parcav/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parcav {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct Face {
    int a, b, c;            // CCW seen from outside
    Vec3 n;                 // unit outward normal
    double off;             // n . x = off on the face plane
    std::vector<int> outside;
    bool alive = true;
};

Face make_face(const std::vector<Vec3>& p, int a, int b, int c, const Vec3& inner) {
    Face f;
    f.a = a;
    f.b = b;
    f.c = c;
    Vec3 n = cross(sub(p[b], p[a]), sub(p[c], p[a]));
    double len = norm(n);
    if (len == 0.0) len = 1.0;
    n = {n.x / len, n.y / len, n.z / len};
    double off = dot(n, p[a]);
    if (dot(n, inner) > off) { // flip so the interior point is below
        std::swap(f.b, f.c);
        n = {-n.x, -n.y, -n.z};
        off = -off;
    }
    f.n = n;
    f.off = off;
    return f;
}

} // namespace

std::vector<HullFacet> convex_hull_3d(const std::vector<Vec3>& pts, double eps) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) return {};

    // initial extremes along x, then farthest from the line, then the plane
    int i0 = 0, i1 = 0;
    for (int i = 1; i < n; ++i) {
        if (pts[i].x < pts[i0].x) i0 = i;
        if (pts[i].x > pts[i1].x) i1 = i;
    }
    if (pts[i1].x - pts[i0].x < eps) {
        for (int i = 1; i < n; ++i) { // fall back to y
            if (pts[i].y < pts[i0].y) i0 = i;
            if (pts[i].y > pts[i1].y) i1 = i;
        }
    }
    if (i0 == i1) return {};
    int i2 = -1;
    double best = eps;
    const Vec3 d01 = sub(pts[i1], pts[i0]);
    const double len01 = norm(d01);
    for (int i = 0; i < n; ++i) {
        const double dist = norm(cross(d01, sub(pts[i], pts[i0]))) / len01;
        if (dist > best) {
            best = dist;
            i2 = i;
        }
    }
    if (i2 < 0) return {}; // collinear
    int i3 = -1;
    best = eps;
    Vec3 pn = cross(d01, sub(pts[i2], pts[i0]));
    const double pnl = norm(pn);
    pn = {pn.x / pnl, pn.y / pnl, pn.z / pnl};
    const double poff = dot(pn, pts[i0]);
    for (int i = 0; i < n; ++i) {
        const double dist = std::abs(dot(pn, pts[i]) - poff);
        if (dist > best) {
            best = dist;
            i3 = i;
        }
    }
    if (i3 < 0) return {}; // coplanar

    const Vec3 inner{(pts[i0].x + pts[i1].x + pts[i2].x + pts[i3].x) / 4,
                     (pts[i0].y + pts[i1].y + pts[i2].y + pts[i3].y) / 4,
                     (pts[i0].z + pts[i1].z + pts[i2].z + pts[i3].z) / 4};

    std::vector<Face> faces;
    faces.push_back(make_face(pts, i0, i1, i2, inner));
    faces.push_back(make_face(pts, i0, i1, i3, inner));
    faces.push_back(make_face(pts, i0, i2, i3, inner));
    faces.push_back(make_face(pts, i1, i2, i3, inner));

    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        double worst = eps;
        int which = -1;
        for (int f = 0; f < 4; ++f) {
            const double d = dot(faces[f].n, pts[i]) - faces[f].off;
            if (d > worst) {
                worst = d;
                which = f;
            }
        }
        if (which >= 0) faces[which].outside.push_back(i);
    }

    // quickhull loop: expand to the farthest conflict point of some face
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        if (!faces[fi].alive || faces[fi].outside.empty()) continue;
        int apex = -1;
        double far = -1.0;
        for (int i : faces[fi].outside) {
            const double d = dot(faces[fi].n, pts[i]) - faces[fi].off;
            if (d > far) {
                far = d;
                apex = i;
            }
        }
        // visible set and its horizon
        std::vector<int> visible;
        std::vector<int> orphan;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive) continue;
            if (dot(faces[f].n, pts[apex]) - faces[f].off > eps) {
                visible.push_back(static_cast<int>(f));
                faces[f].alive = false;
                orphan.insert(orphan.end(), faces[f].outside.begin(), faces[f].outside.end());
            }
        }
        // horizon edges: edges of visible faces shared with no other visible face
        auto edge_key = [](int u, int v) {
            return (static_cast<long long>(std::min(u, v)) << 32) | std::max(u, v);
        };
        std::vector<std::pair<long long, std::pair<int, int>>> edges;
        for (int f : visible) {
            const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                const int u = vs[e], v = vs[(e + 1) % 3];
                edges.emplace_back(edge_key(u, v), std::make_pair(u, v));
            }
        }
        std::sort(edges.begin(), edges.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<std::pair<int, int>> horizon;
        for (std::size_t e = 0; e < edges.size();) {
            std::size_t e2 = e;
            while (e2 < edges.size() && edges[e2].first == edges[e].first) ++e2;
            if (e2 - e == 1) horizon.push_back(edges[e].second);
            e = e2;
        }
        // cone of new faces from the apex over the horizon
        const std::size_t first_new = faces.size();
        for (const auto& [u, v] : horizon)
            faces.push_back(make_face(pts, u, v, apex, inner));
        // reassign orphans
        std::sort(orphan.begin(), orphan.end());
        orphan.erase(std::unique(orphan.begin(), orphan.end()), orphan.end());
        for (int i : orphan) {
            if (i == apex) continue;
            double worst = eps;
            int which = -1;
            for (std::size_t f = first_new; f < faces.size(); ++f) {
                const double d = dot(faces[f].n, pts[i]) - faces[f].off;
                if (d > worst) {
                    worst = d;
                    which = static_cast<int>(f);
                }
            }
            if (which >= 0) faces[which].outside.push_back(i);
        }
        // no rescan: earlier faces were visited with empty conflict sets and
        // orphans only ever land on the cone faces appended above
    }

    std::vector<HullFacet> out;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        out.push_back(HullFacet{{f.a, f.b, f.c}, f.n, f.off});
    }
    return out;
}

} // namespace parcav
