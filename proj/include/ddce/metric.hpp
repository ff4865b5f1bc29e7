#pragma once

#include "ddce/surface.hpp"
#include "ddce/trig.hpp"

#include <string>
#include <vector>

namespace ddce {

// Lengths per edge id, radii per vertex id of the owned triangulation.
struct DecoratedMetric {
    Triangulation tri;
    Background bg = Background::Euclidean;
    std::vector<double> length;
    std::vector<double> radius;

    int eps(int v) const { return radius[v] > 0 ? 1 : 0; }
    DecoratedTriangle triangle(int f) const;
};

struct Diagnostic {
    std::string kind;  // "radius", "length", "hyperideality", "triangle"
    std::string where; // "vertex 0:0", "edge 0:1", "face 3"
    std::string message;
};

std::vector<Diagnostic> validate(const DecoratedMetric& m);
std::string format_diagnostics(const std::vector<Diagnostic>& d);

// Lambda-lengths per edge id and ideal/hyperideal flags per vertex id. Ideal
// vertices use horospheres whose total horocycle length in the invariant
// surface is 1.
struct Invariant {
    Triangulation tri;
    std::vector<double> lambda;
    std::vector<int> eps;
};

using Heights = std::vector<double>;

DecoratedMetric conformal_change(const DecoratedMetric& m, const std::vector<double>& u);

Invariant lambda_lengths(const DecoratedMetric& m);
Heights heights_from_decoration(const DecoratedMetric& m);
DecoratedMetric decoration_from_heights(const Invariant& inv, Background bg, const Heights& h);

double height_from_radius(Background bg, double r);
double radius_from_height(Background bg, int eps, double h);

// Edge length from lambda and endpoint heights; NaN when no length exists.
double length_from_heights(Background bg, double lambda, int ei, int ej, double hi, double hj);

// Total horocycle length at each ideal vertex for the horospheres encoded by
// lambda (zero entries at hyperideal vertices).
std::vector<double> horocycle_lengths(const Triangulation& tri, const std::vector<double>& lambda,
                                      const std::vector<int>& eps);

double default_reference_radius(Background bg);
std::vector<double> omega_map(Background bg, double R, const Heights& h, const std::vector<int>& eps);
Heights omega_inverse(Background bg, double R, const std::vector<double>& omega, const std::vector<int>& eps);

std::vector<double> scale_factors(const DecoratedMetric& m, const DecoratedMetric& mt);

// Lambda-length of the opposite diagonal after flipping e inside the invariant
// surface (Ptolemy relation for decorated ideal/hyperideal quads).
double flipped_lambda(const Invariant& inv, int e);
void flip_invariant(Invariant& inv, int e);

} // namespace ddce
