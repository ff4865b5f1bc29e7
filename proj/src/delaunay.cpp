#include "ddce/delaunay.hpp"

#include "ddce/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace ddce {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFlipTol = 1e-12;

} // namespace

TriangleGeometry face_geometry(const DecoratedMetric& m, int f) { return face_circle(m.triangle(f)); }

double edge_weight(const DecoratedMetric& m, int e) {
    auto hs = m.tri.edge_halfedges(e);
    double w = 0;
    for (int h : hs) w += face_geometry(m, Triangulation::face_of(h)).weight[Triangulation::slot_of(h)];
    return w;
}

std::vector<double> edge_weights(const DecoratedMetric& m) {
    std::vector<double> w(m.tri.edge_count(), 0.0);
    for (int f = 0; f < m.tri.face_count(); ++f) {
        TriangleGeometry g = face_geometry(m, f);
        for (int s = 0; s < 3; ++s) w[m.tri.edge(3 * f + s)] += g.weight[s];
    }
    return w;
}

double center_distance_sum(const DecoratedMetric& m, int e) {
    auto hs = m.tri.edge_halfedges(e);
    double t = 0;
    for (int h : hs) t += face_geometry(m, Triangulation::face_of(h)).t_face[Triangulation::slot_of(h)];
    return t;
}

namespace {

// Angle sums of the quad at both endpoints of e.
std::array<double, 2> quad_angle_sums(const DecoratedMetric& m, int e) {
    auto hs = m.tri.edge_halfedges(e);
    auto a0 = interior_angles(m.bg, m.triangle(Triangulation::face_of(hs[0])).l);
    auto a1 = interior_angles(m.bg, m.triangle(Triangulation::face_of(hs[1])).l);
    int s0 = Triangulation::slot_of(hs[0]), s1 = Triangulation::slot_of(hs[1]);
    return {a0[s0] + a1[(s1 + 1) % 3], a0[(s0 + 1) % 3] + a1[s1]};
}

} // namespace

bool is_local_delaunay(const DecoratedMetric& m, int e, bool strict) {
    if (m.tri.is_self_glued(e)) return true;
    auto sums = quad_angle_sums(m, e);
    if (sums[0] >= kPi - kFlipTol || sums[1] >= kPi - kFlipTol) return true;
    double t = center_distance_sum(m, e);
    double scale = kFlipTol * m.length[e];
    return strict ? t > scale : t >= -scale;
}

double face_support_minimum(const DecoratedMetric& m, int f) {
    if (m.bg != Background::Spherical)
        throw Error(ErrorCode::NotComparable, "support function is defined for the spherical background");
    DecoratedTriangle t = m.triangle(f);
    TriangleGeometry g = face_circle(t);
    double cf = std::cos(g.face_radius);
    bool inside = g.t_face[0] >= 0 && g.t_face[1] >= 0 && g.t_face[2] >= 0;
    double cos_dmin = 1.0;
    if (!inside) {
        cos_dmin = -1.0;
        for (int s = 0; s < 3; ++s) {
            double foot = g.d_vertex[s];
            double c;
            if (foot >= 0 && foot <= t.l[s]) c = std::cos(g.d_face[s]);
            else c = std::max(std::cos(t.r[s]) * cf, std::cos(t.r[(s + 1) % 3]) * cf);
            cos_dmin = std::max(cos_dmin, c);
        }
    }
    return cf / cos_dmin;
}

double support_minimum(const DecoratedMetric& m) {
    double s = std::numeric_limits<double>::infinity();
    for (int f = 0; f < m.tri.face_count(); ++f) s = std::min(s, face_support_minimum(m, f));
    return s;
}

FlipResult flip_to_delaunay(const DecoratedMetric& m, const FlipOptions& opt) {
    FlipResult res;
    res.metric = m;
    DecoratedMetric& w = res.metric;
    Triangulation& T = w.tri;
    const int ne = T.edge_count();
    const long cap = opt.max_flips >= 0 ? opt.max_flips : 1000L * ne + 1000;
    const bool track = opt.track_support && m.bg == Background::Spherical;
    if (track) res.initial_support_min = support_minimum(w);

    std::deque<int> queue;
    std::vector<char> queued(ne, 1);
    for (int e = 0; e < ne; ++e) queue.push_back(e);
    while (!queue.empty()) {
        int e = queue.front();
        queue.pop_front();
        queued[e] = 0;
        if (is_local_delaunay(w, e, false)) continue;
        if (static_cast<long>(res.log.size()) >= cap)
            throw Error(ErrorCode::FlipLimitExceeded, "more than " + std::to_string(cap) + " flips");

        auto hs = T.edge_halfedges(e);
        int h0 = hs[0], h1 = hs[1];
        double l = diagonal_length(w.triangle(Triangulation::face_of(h0)), Triangulation::slot_of(h0),
                                   w.triangle(Triangulation::face_of(h1)), Triangulation::slot_of(h1));
        int boundary[4] = {T.edge(Triangulation::next(h0)), T.edge(Triangulation::prev(h0)),
                           T.edge(Triangulation::next(h1)), T.edge(Triangulation::prev(h1))};
        T.flip_in_place(e);
        w.length[e] = l;

        FlipRecord rec;
        rec.edge = e;
        rec.label = T.edge_label(e);
        rec.length = l;
        if (track) rec.support_min = support_minimum(w);
        res.log.push_back(rec);

        for (int b : boundary) {
            if (!queued[b]) {
                queued[b] = 1;
                queue.push_back(b);
            }
        }
    }
    return res;
}

Tessellation extract_tessellation(const DecoratedMetric& m, double tol) {
    const Triangulation& T = m.tri;
    auto w = edge_weights(m);
    Tessellation tess;
    std::vector<int> parent(T.face_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < T.edge_count(); ++e) {
        if (w[e] < -tol)
            throw Error(ErrorCode::NotDelaunay,
                        "edge " + halfedge_label(T.edge_label(e)) + " has weight " + std::to_string(w[e]));
        if (w[e] > tol) {
            tess.kept.push_back(e);
            continue;
        }
        tess.removed.push_back(e);
        auto hs = T.edge_halfedges(e);
        int a = find(Triangulation::face_of(hs[0])), b = find(Triangulation::face_of(hs[1]));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    tess.face_group.assign(T.face_count(), -1);
    std::vector<int> root_group(T.face_count(), -1);
    for (int f = 0; f < T.face_count(); ++f) {
        int r = find(f);
        if (root_group[r] == -1) {
            root_group[r] = static_cast<int>(tess.group_sizes.size());
            tess.group_sizes.push_back(0);
        }
        tess.face_group[f] = root_group[r];
        ++tess.group_sizes[root_group[r]];
    }
    return tess;
}

} // namespace ddce
