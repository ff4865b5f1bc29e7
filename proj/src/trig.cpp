#include "ddce/trig.hpp"

#include "ddce/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ddce {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateTol = 1e-12;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

int curvature(Background bg) {
    switch (bg) {
    case Background::Spherical: return 1;
    case Background::Euclidean: return 0;
    case Background::Hyperbolic: return -1;
    }
    return 0;
}

std::string to_string(Background bg) {
    switch (bg) {
    case Background::Spherical: return "spherical";
    case Background::Euclidean: return "euclidean";
    case Background::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

Background background_from_string(const std::string& s) {
    if (s == "spherical") return Background::Spherical;
    if (s == "euclidean") return Background::Euclidean;
    if (s == "hyperbolic") return Background::Hyperbolic;
    throw Error(ErrorCode::ParseError, "unknown background '" + s + "'");
}

double tau(double y, double x) { return 0.5 * (std::exp(x) + y * std::exp(-x)); }

double gsin(Background bg, double x) {
    switch (bg) {
    case Background::Spherical: return std::sin(x);
    case Background::Hyperbolic: return std::sinh(x);
    default: return x;
    }
}

double gcos(Background bg, double x) {
    switch (bg) {
    case Background::Spherical: return std::cos(x);
    case Background::Hyperbolic: return std::cosh(x);
    default: return 1.0;
    }
}

double gtan(Background bg, double x) {
    switch (bg) {
    case Background::Spherical: return std::tan(x);
    case Background::Hyperbolic: return std::tanh(x);
    default: return x;
    }
}

double acosh1p(double x) {
    if (x <= 0) return 0.0;
    return std::log1p(x + std::sqrt(x * (2.0 + x)));
}

void check_triangle_lengths(Background bg, const std::array<double, 3>& l) {
    double sum = l[0] + l[1] + l[2];
    for (int s = 0; s < 3; ++s) {
        if (!std::isfinite(l[s]) || l[s] <= 0)
            throw Error(ErrorCode::DegenerateTriangle, "non-positive length " + num(l[s]));
        if (bg == Background::Spherical && l[s] >= kPi)
            throw Error(ErrorCode::DegenerateTriangle, "spherical length " + num(l[s]) + " not below pi");
    }
    for (int s = 0; s < 3; ++s) {
        double slack = l[(s + 1) % 3] + l[(s + 2) % 3] - l[s];
        if (slack <= kDegenerateTol * sum)
            throw Error(ErrorCode::DegenerateTriangle, "triangle inequality fails for side " + num(l[s]));
    }
    if (bg == Background::Spherical && sum >= 2 * kPi * (1 - kDegenerateTol))
        throw Error(ErrorCode::DegenerateTriangle, "spherical perimeter " + num(sum) + " not below 2pi");
}

std::array<double, 3> interior_angles(Background bg, const std::array<double, 3>& l) {
    check_triangle_lengths(bg, l);
    double s = 0.5 * (l[0] + l[1] + l[2]);
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
        double a = l[(c + 1) % 3];
        double b = l[c];
        double cc = l[(c + 2) % 3];
        double num = gsin(bg, s - b) * gsin(bg, s - cc);
        double den = gsin(bg, s) * gsin(bg, s - a);
        out[c] = 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
    }
    return out;
}

double inversive_distance_minus_one(Background bg, double l, double ri, double rj) {
    if (ri <= 0 || rj <= 0)
        throw Error(ErrorCode::ZeroRadius, "inversive distance needs positive radii");
    double p = 0.5 * (l + ri + rj), m = 0.5 * (l - ri - rj);
    switch (bg) {
    case Background::Spherical:
        return 2.0 * std::sin(p) * std::sin(m) / (std::sin(ri) * std::sin(rj));
    case Background::Hyperbolic:
        return 2.0 * std::sinh(p) * std::sinh(m) / (std::sinh(ri) * std::sinh(rj));
    default:
        return (l - ri - rj) * (l + ri + rj) / (2.0 * ri * rj);
    }
}

double inversive_distance(Background bg, double l, double ri, double rj) {
    return 1.0 + inversive_distance_minus_one(bg, l, ri, rj);
}

EdgeSection edge_section(Background bg, double l, double ri, double rj) {
    if (!(l > ri + rj))
        throw Error(ErrorCode::NoRealFaceCircle,
                    "vertex circles meet: " + num(ri) + " + " + num(rj) + " >= " + num(l));
    EdgeSection e;
    double a = 0.5 * (l + ri + rj), b = 0.5 * (l - ri - rj);
    double c = 0.5 * (l + ri - rj), d = 0.5 * (l - ri + rj);
    switch (bg) {
    case Background::Spherical: {
        double P = 4.0 * std::sin(a) * std::sin(b) * std::sin(c) * std::sin(d);
        double S = std::sin(l);
        double h2 = std::sin(0.5 * l);
        h2 *= h2;
        double xi = 2.0 * std::sin(0.5 * (ri + rj)) * std::sin(0.5 * (ri - rj)) + 2.0 * std::cos(ri) * h2;
        double xj = 2.0 * std::sin(0.5 * (ri + rj)) * std::sin(0.5 * (rj - ri)) + 2.0 * std::cos(rj) * h2;
        e.r_ij = std::atan2(std::sqrt(P), S);
        e.d_from_i = std::atan2(xi, std::cos(ri) * S);
        e.d_from_j = std::atan2(xj, std::cos(rj) * S);
        break;
    }
    case Background::Hyperbolic: {
        double P = 4.0 * std::sinh(a) * std::sinh(b) * std::sinh(c) * std::sinh(d);
        double S = std::sinh(l);
        double h2 = std::sinh(0.5 * l);
        h2 *= h2;
        double xi = 2.0 * std::sinh(0.5 * (ri + rj)) * std::sinh(0.5 * (ri - rj)) + 2.0 * std::cosh(ri) * h2;
        double xj = 2.0 * std::sinh(0.5 * (ri + rj)) * std::sinh(0.5 * (rj - ri)) + 2.0 * std::cosh(rj) * h2;
        e.r_ij = std::atanh(std::sqrt(P) / S);
        e.d_from_i = std::atanh(xi / (std::cosh(ri) * S));
        e.d_from_j = std::atanh(xj / (std::cosh(rj) * S));
        break;
    }
    case Background::Euclidean: {
        double P = 16.0 * a * b * c * d;
        e.r_ij = std::sqrt(P) / (2.0 * l);
        e.d_from_i = 0.5 * (l + (ri - rj) * (ri + rj) / l);
        e.d_from_j = 0.5 * (l + (rj - ri) * (ri + rj) / l);
        break;
    }
    }
    return e;
}

TriangleGeometry face_circle(const DecoratedTriangle& t) {
    const Background bg = t.bg;
    TriangleGeometry g;
    g.angle = interior_angles(bg, t.l);
    std::array<EdgeSection, 3> es;
    for (int s = 0; s < 3; ++s) es[s] = edge_section(bg, t.l[s], t.r[s], t.r[(s + 1) % 3]);

    for (int s = 0; s < 3; ++s) {
        double dij = es[s].d_from_i;
        double dik = es[(s + 2) % 3].d_from_j;
        double th = g.angle[s];
        double tv = (gcos(bg, dij) * gtan(bg, dik) - gsin(bg, dij) * std::cos(th)) / std::sin(th);
        double rij = es[s].r_ij;
        g.t_face[s] = tv;
        g.r_edge[s] = rij;
        g.d_vertex[s] = dij;
        g.alpha[s] = std::atan2(gsin(bg, rij), tv);
        g.weight[s] = tv / (gcos(bg, rij) * gsin(bg, t.l[s]));
        switch (bg) {
        case Background::Spherical: g.d_face[s] = std::atan(tv); break;
        case Background::Euclidean: g.d_face[s] = tv; break;
        case Background::Hyperbolic:
            g.d_face[s] = std::fabs(tv) < 1.0 ? std::atanh(tv)
                                              : std::copysign(std::numeric_limits<double>::infinity(), tv);
            break;
        }
    }

    double t0 = g.t_face[0];
    double r0 = g.r_edge[0];
    switch (bg) {
    case Background::Spherical: {
        double sr = std::sin(r0);
        g.face_radius = std::atan2(std::sqrt(t0 * t0 + sr * sr), std::cos(r0));
        break;
    }
    case Background::Euclidean: g.face_radius = std::hypot(t0, r0); break;
    case Background::Hyperbolic: {
        // 1/cosh^2 of the face radius; non-positive for horocycles and hypercycles.
        double c = std::cosh(r0);
        double q = (1.0 - t0 * t0) / (c * c);
        if (q > 0) {
            double sr = std::sinh(r0);
            g.face_radius = std::asinh(std::sqrt((sr * sr + t0 * t0) / (1.0 - t0 * t0)));
        } else {
            g.face_radius = std::numeric_limits<double>::infinity();
            g.face_circle_is_circle = false;
        }
        break;
    }
    }
    return g;
}

double law_of_cosines(Background bg, double a, double b, double gamma) {
    double sg = std::sin(0.5 * gamma);
    sg *= sg;
    switch (bg) {
    case Background::Spherical: {
        double x = std::sin(0.5 * (a - b));
        x = x * x + std::sin(a) * std::sin(b) * sg;
        return 2.0 * std::asin(std::sqrt(std::min(1.0, std::max(0.0, x))));
    }
    case Background::Hyperbolic: {
        double x = std::sinh(0.5 * (a - b));
        x = x * x + std::sinh(a) * std::sinh(b) * sg;
        return 2.0 * std::asinh(std::sqrt(std::max(0.0, x)));
    }
    default:
        return std::sqrt((a - b) * (a - b) + 4.0 * a * b * sg);
    }
}

double diagonal_length(const DecoratedTriangle& t0, int s0, const DecoratedTriangle& t1, int s1) {
    const Background bg = t0.bg;
    auto a0 = interior_angles(bg, t0.l);
    auto a1 = interior_angles(bg, t1.l);
    double gi = a0[s0] + a1[(s1 + 1) % 3];
    double gj = a0[(s0 + 1) % 3] + a1[s1];
    if (gi >= kPi - kDegenerateTol || gj >= kPi - kDegenerateTol)
        throw Error(ErrorCode::FlipGeometryInvalid, "quad is not convex (angle sums " + num(gi) + ", " + num(gj) + ")");
    double lki = t0.l[(s0 + 2) % 3];
    double ljk = t0.l[(s0 + 1) % 3];
    double lil = t1.l[(s1 + 1) % 3];
    double llj = t1.l[(s1 + 2) % 3];
    double rk = t0.r[(s0 + 2) % 3], rl = t1.r[(s1 + 2) % 3];
    double lkl = law_of_cosines(bg, lki, lil, gi);
    try {
        check_triangle_lengths(bg, {lki, lil, lkl});
        check_triangle_lengths(bg, {llj, ljk, lkl});
    } catch (const Error& e) {
        throw Error(ErrorCode::FlipGeometryInvalid, e.what());
    }
    if (!(rk + rl < lkl))
        throw Error(ErrorCode::FlipGeometryInvalid, "new diagonal " + num(lkl) + " violates hyperideality");
    return lkl;
}

} // namespace ddce
