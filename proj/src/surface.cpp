#include "ddce/surface.hpp"

#include "ddce/error.hpp"

#include <algorithm>
#include <numeric>

namespace ddce {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonInvolution: return "NonInvolution";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::UnflippableSelfGluing: return "UnflippableSelfGluing";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::NoRealFaceCircle: return "NoRealFaceCircle";
    case ErrorCode::FlipGeometryInvalid: return "FlipGeometryInvalid";
    case ErrorCode::FlipLimitExceeded: return "FlipLimitExceeded";
    case ErrorCode::ScaleOutOfDomain: return "ScaleOutOfDomain";
    case ErrorCode::ResultInvalid: return "ResultInvalid";
    case ErrorCode::HeightsOutOfDomain: return "HeightsOutOfDomain";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotDelaunay: return "NotDelaunay";
    case ErrorCode::PathLeavesDomain: return "PathLeavesDomain";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::LineSearchStalled: return "LineSearchStalled";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::string halfedge_label(int h) {
    return std::to_string(h / 3) + ":" + std::to_string(h % 3);
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a < b) parent[b] = a;
        else if (b < a) parent[a] = b;
    }
};

} // namespace

Triangulation Triangulation::from_gluing(int face_count, const Gluing& gluing) {
    if (face_count <= 0)
        throw Error(ErrorCode::NonInvolution, "surface needs at least one face");
    const int n = 3 * face_count;
    std::vector<int> twin(n, -1);
    auto index = [&](const HalfEdge& he) {
        if (he.face < 0 || he.face >= face_count || he.slot < 0 || he.slot > 2)
            throw Error(ErrorCode::NonInvolution,
                        "half-edge (" + std::to_string(he.face) + "," + std::to_string(he.slot) +
                            ") out of range");
        return 3 * he.face + he.slot;
    };
    for (const auto& [a, b] : gluing) {
        int ha = index(a), hb = index(b);
        if (ha == hb)
            throw Error(ErrorCode::NonInvolution, "half-edge " + halfedge_label(ha) + " glued to itself");
        if (twin[ha] != -1)
            throw Error(ErrorCode::NonInvolution, "half-edge " + halfedge_label(ha) + " used twice");
        if (twin[hb] != -1)
            throw Error(ErrorCode::NonInvolution, "half-edge " + halfedge_label(hb) + " used twice");
        twin[ha] = hb;
        twin[hb] = ha;
    }
    for (int h = 0; h < n; ++h)
        if (twin[h] == -1)
            throw Error(ErrorCode::NonInvolution, "half-edge " + halfedge_label(h) + " is not glued");

    // Gluing h to t reverses direction: tail(h) ~ head(t), head(h) ~ tail(t).
    UnionFind uf(n);
    for (int h = 0; h < n; ++h) {
        int t = twin[h];
        uf.unite(h, next(t));
        uf.unite(next(h), t);
    }

    Triangulation T;
    T.twin_ = std::move(twin);
    T.corner_vertex_.assign(n, -1);
    T.he_edge_.assign(n, -1);
    int nv = 0;
    std::vector<int> root_id(n, -1);
    for (int c = 0; c < n; ++c) {
        int r = uf.find(c);
        if (root_id[r] == -1) root_id[r] = nv++;
        T.corner_vertex_[c] = root_id[r];
    }
    T.vertex_count_ = nv;
    for (int h = 0; h < n; ++h) {
        if (T.he_edge_[h] != -1) continue;
        int e = static_cast<int>(T.edge_he_.size());
        T.edge_he_.push_back(h);
        T.he_edge_[h] = e;
        T.he_edge_[T.twin_[h]] = e;
    }

    // Each vertex link must close up into a single cycle of corners.
    std::vector<int> seen(n, 0);
    for (int c = 0; c < n; ++c) {
        if (seen[c]) continue;
        int cur = c;
        do {
            seen[cur] = 1;
            cur = next(T.twin_[cur]);
            if (T.corner_vertex_[cur] != T.corner_vertex_[c])
                throw Error(ErrorCode::NonOrientable, "vertex link of corner " + halfedge_label(c) + " is inconsistent");
        } while (cur != c);
    }
    std::vector<int> cycles(nv, 0);
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
        if (seen[c]) continue;
        ++cycles[T.corner_vertex_[c]];
        int cur = c;
        do {
            seen[cur] = 1;
            cur = next(T.twin_[cur]);
        } while (cur != c);
    }
    for (int v = 0; v < nv; ++v)
        if (cycles[v] != 1)
            throw Error(ErrorCode::NonOrientable, "vertex link is not a single cycle");

    int chi = T.euler_characteristic();
    if (chi > 2 || chi % 2 != 0)
        throw Error(ErrorCode::NonOrientable, "Euler characteristic " + std::to_string(chi) + " is not that of a closed oriented surface");
    return T;
}

std::array<int, 2> Triangulation::edge_halfedges(int e) const {
    int h = edge_he_[e];
    int t = twin_[h];
    return h < t ? std::array<int, 2>{h, t} : std::array<int, 2>{t, h};
}

std::array<int, 2> Triangulation::edge_vertices(int e) const {
    auto hs = edge_halfedges(e);
    return {tail(hs[0]), head(hs[0])};
}

bool Triangulation::is_self_glued(int e) const {
    auto hs = edge_halfedges(e);
    return face_of(hs[0]) == face_of(hs[1]);
}

std::vector<int> Triangulation::vertex_corners(int v) const {
    std::vector<int> out;
    for (int c = 0; c < halfedge_count(); ++c)
        if (corner_vertex_[c] == v) out.push_back(c);
    return out;
}

int Triangulation::vertex_label(int v) const {
    for (int c = 0; c < halfedge_count(); ++c)
        if (corner_vertex_[c] == v) return c;
    return -1;
}

int Triangulation::edge_label(int e) const { return edge_halfedges(e)[0]; }

Gluing Triangulation::gluing() const {
    Gluing out;
    for (int h = 0; h < halfedge_count(); ++h) {
        int t = twin_[h];
        if (h < t) out.push_back({HalfEdge{face_of(h), slot_of(h)}, HalfEdge{face_of(t), slot_of(t)}});
    }
    return out;
}

void Triangulation::flip_in_place(int e) {
    if (is_self_glued(e))
        throw Error(ErrorCode::UnflippableSelfGluing, "edge " + halfedge_label(edge_label(e)) + " bounds one face on both sides");
    int h0 = edge_he_[e];
    int h1 = twin_[h0];
    int f0 = face_of(h0), f1 = face_of(h1);
    int n0 = next(h0), p0 = prev(h0), n1 = next(h1), p1 = prev(h1);
    int vi = tail(h0), vj = head(h0), vk = tail(p0), vl = tail(p1);
    int e_n0 = he_edge_[n0], e_p0 = he_edge_[p0], e_n1 = he_edge_[n1], e_p1 = he_edge_[p1];

    // New faces: f0 = (k, i, l) from p0, n1, diag; f1 = (l, j, k) from p1, n0, diag.
    int a0 = 3 * f0, a1 = 3 * f0 + 1, a2 = 3 * f0 + 2;
    int b0 = 3 * f1, b1 = 3 * f1 + 1, b2 = 3 * f1 + 2;
    auto remap = [&](int old) {
        if (old == p0) return a0;
        if (old == n1) return a1;
        if (old == p1) return b0;
        if (old == n0) return b1;
        return old;
    };
    int t_p0 = remap(twin_[p0]), t_n1 = remap(twin_[n1]);
    int t_p1 = remap(twin_[p1]), t_n0 = remap(twin_[n0]);

    twin_[a0] = t_p0; twin_[t_p0] = a0;
    twin_[a1] = t_n1; twin_[t_n1] = a1;
    twin_[b0] = t_p1; twin_[t_p1] = b0;
    twin_[b1] = t_n0; twin_[t_n0] = b1;
    twin_[a2] = b2; twin_[b2] = a2;

    corner_vertex_[a0] = vk; corner_vertex_[a1] = vi; corner_vertex_[a2] = vl;
    corner_vertex_[b0] = vl; corner_vertex_[b1] = vj; corner_vertex_[b2] = vk;

    he_edge_[a0] = e_p0; he_edge_[a1] = e_n1; he_edge_[a2] = e;
    he_edge_[b0] = e_p1; he_edge_[b1] = e_n0; he_edge_[b2] = e;
    for (int h : {a0, a1, b0, b1}) edge_he_[he_edge_[h]] = h;
    edge_he_[e] = a2;
}

Triangulation Triangulation::flipped(int e) const {
    Triangulation T = *this;
    T.flip_in_place(e);
    return T;
}

} // namespace ddce
