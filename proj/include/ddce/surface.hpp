#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace ddce {

// Directed half-edge (face, slot). Slot s runs from corner s to corner s+1 of
// the face; corner s and half-edge s share the flat index 3*face + slot.
struct HalfEdge {
    int face = 0;
    int slot = 0;
};

using Gluing = std::vector<std::pair<HalfEdge, HalfEdge>>;

std::string halfedge_label(int h);

// Closed oriented surface built from triangles by an involution on half-edges.
// Self-gluings and multi-edges are allowed. Vertex and edge ids are stable
// under flips; their labels (least corner / least half-edge) are not.
class Triangulation {
public:
    Triangulation() = default;

    static Triangulation from_gluing(int face_count, const Gluing& gluing);

    int face_count() const { return static_cast<int>(twin_.size() / 3); }
    int halfedge_count() const { return static_cast<int>(twin_.size()); }
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edge_he_.size()); }

    int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
    int genus() const { return (2 - euler_characteristic()) / 2; }

    static int face_of(int h) { return h / 3; }
    static int slot_of(int h) { return h % 3; }
    static int next(int h) { return 3 * (h / 3) + (h % 3 + 1) % 3; }
    static int prev(int h) { return 3 * (h / 3) + (h % 3 + 2) % 3; }

    int twin(int h) const { return twin_[h]; }
    int edge(int h) const { return he_edge_[h]; }
    int vertex(int corner) const { return corner_vertex_[corner]; }
    int tail(int h) const { return corner_vertex_[h]; }
    int head(int h) const { return corner_vertex_[next(h)]; }

    // Half-edges of an edge, smaller index first.
    std::array<int, 2> edge_halfedges(int e) const;
    std::array<int, 2> edge_vertices(int e) const;
    bool is_self_glued(int e) const;

    std::vector<int> vertex_corners(int v) const;
    int vertex_label(int v) const;
    int edge_label(int e) const;

    // Canonical gluing pairs, each pair with the smaller half-edge first,
    // sorted by the first half-edge.
    Gluing gluing() const;

    void flip_in_place(int e);
    Triangulation flipped(int e) const;

    bool operator==(const Triangulation& o) const {
        return twin_ == o.twin_ && corner_vertex_ == o.corner_vertex_ && he_edge_ == o.he_edge_;
    }

private:
    std::vector<int> twin_;
    std::vector<int> corner_vertex_;
    std::vector<int> he_edge_;
    std::vector<int> edge_he_;
    int vertex_count_ = 0;
};

} // namespace ddce
