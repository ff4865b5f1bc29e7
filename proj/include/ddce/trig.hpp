#pragma once

#include <array>
#include <string>

namespace ddce {

enum class Background { Spherical, Euclidean, Hyperbolic };

int curvature(Background bg);
std::string to_string(Background bg);
Background background_from_string(const std::string& s);

// tau_y(x) = (e^x + y e^-x) / 2
double tau(double y, double x);

// sin / identity / sinh, cos / 1 / cosh, tan / identity / tanh by curvature.
double gsin(Background bg, double x);
double gcos(Background bg, double x);
double gtan(Background bg, double x);

// acosh(1 + x) for x >= 0 without cancellation near 1.
double acosh1p(double x);

// Lengths l[s] run from corner s to corner s+1; r[c] is the radius at corner c.
struct DecoratedTriangle {
    Background bg = Background::Euclidean;
    std::array<double, 3> l{};
    std::array<double, 3> r{};
};

// Data attached to an edge with endpoint radii, independent of the face.
struct EdgeSection {
    double d_from_i = 0; // signed distance from i to the foot of the face-circle center
    double d_from_j = 0;
    double r_ij = 0;     // half the distance between the limiting points
};

struct TriangleGeometry {
    std::array<double, 3> angle{};  // at corner c
    // Indexed by edge slot s (corner s -> corner s+1, opposite corner s+2).
    std::array<double, 3> alpha{};
    std::array<double, 3> r_edge{};
    std::array<double, 3> d_face{}; // signed center distance; +-inf for hyperbolic horo/hypercycles
    std::array<double, 3> t_face{}; // tan / identity / tanh of d_face, always finite
    std::array<double, 3> d_vertex{}; // from corner s along the edge
    std::array<double, 3> weight{};   // this face's share of the cotan weight
    double face_radius = 0;           // +inf when the hyperbolic face-circle is not a circle
    bool face_circle_is_circle = true;
};

// Throws DegenerateTriangle on violated triangle/perimeter/length bounds.
void check_triangle_lengths(Background bg, const std::array<double, 3>& l);

std::array<double, 3> interior_angles(Background bg, const std::array<double, 3>& l);

double inversive_distance(Background bg, double l, double ri, double rj);
double inversive_distance_minus_one(Background bg, double l, double ri, double rj);

// Throws NoRealFaceCircle if the two vertex circles meet.
EdgeSection edge_section(Background bg, double l, double ri, double rj);

TriangleGeometry face_circle(const DecoratedTriangle& t);

// Length of the diagonal kl of the quad formed by t0 (edge slot s0 = i->j)
// and t1 (edge slot s1 = j->i). Throws FlipGeometryInvalid when the flipped
// triangles would not be valid decorated triangles.
double diagonal_length(const DecoratedTriangle& t0, int s0, const DecoratedTriangle& t1, int s1);

// Third side from two sides and the included angle.
double law_of_cosines(Background bg, double a, double b, double gamma);

} // namespace ddce
