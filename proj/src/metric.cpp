#include "ddce/metric.hpp"

#include "ddce/error.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace ddce {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string edge_name(const Triangulation& T, int e) { return "edge " + halfedge_label(T.edge_label(e)); }
std::string vertex_name(const Triangulation& T, int v) { return "vertex " + halfedge_label(T.vertex_label(v)); }

// tau_{ei ej}(lambda) + (ej e^{hi-hj} + ei e^{hj-hi}) / 2
double pair_term(double lambda, int ei, int ej, double hi, double hj) {
    return tau(ei * ej, lambda) + 0.5 * (ej * std::exp(hi - hj) + ei * std::exp(hj - hi));
}

// Lambda before normalizing ideal horospheres, heights h0 with ideal entries 0.
double raw_lambda(Background bg, double l, int ei, int ej, double hi, double hj, double ri, double rj) {
    if (ei && ej) return acosh1p(inversive_distance_minus_one(bg, l, ri, rj));
    double N = 0;
    switch (bg) {
    case Background::Hyperbolic: {
        double s = std::sinh(0.5 * l);
        N = 2.0 * s * s * tau(-ei, hi) * tau(-ej, hj);
        break;
    }
    case Background::Spherical: {
        double s = std::sin(0.5 * l);
        N = 2.0 * s * s * tau(ei, hi) * tau(ej, hj);
        break;
    }
    case Background::Euclidean: N = 0.5 * l * l * std::exp(hi + hj); break;
    }
    double y = N - 0.5 * (ej * std::exp(hi - hj) + ei * std::exp(hj - hi));
    return std::log(2.0 * y);
}

struct RawData {
    std::vector<double> h0;
    std::vector<double> lambda0;
    std::vector<int> eps;
};

RawData raw_data(const DecoratedMetric& m) {
    const Triangulation& T = m.tri;
    RawData d;
    d.h0.assign(T.vertex_count(), 0.0);
    d.eps.assign(T.vertex_count(), 0);
    for (int v = 0; v < T.vertex_count(); ++v) {
        d.eps[v] = m.eps(v);
        if (d.eps[v]) d.h0[v] = height_from_radius(m.bg, m.radius[v]);
    }
    d.lambda0.resize(T.edge_count());
    for (int e = 0; e < T.edge_count(); ++e) {
        auto [a, b] = T.edge_vertices(e);
        d.lambda0[e] = raw_lambda(m.bg, m.length[e], d.eps[a], d.eps[b], d.h0[a], d.h0[b], m.radius[a], m.radius[b]);
    }
    return d;
}

} // namespace

DecoratedTriangle DecoratedMetric::triangle(int f) const {
    DecoratedTriangle t;
    t.bg = bg;
    for (int s = 0; s < 3; ++s) {
        int h = 3 * f + s;
        t.l[s] = length[tri.edge(h)];
        t.r[s] = radius[tri.vertex(h)];
    }
    return t;
}

std::vector<Diagnostic> validate(const DecoratedMetric& m) {
    std::vector<Diagnostic> out;
    const Triangulation& T = m.tri;
    if (static_cast<int>(m.length.size()) != T.edge_count() || static_cast<int>(m.radius.size()) != T.vertex_count()) {
        out.push_back({"size", "metric", "length/radius arrays do not match the triangulation"});
        return out;
    }
    for (int v = 0; v < T.vertex_count(); ++v) {
        double r = m.radius[v];
        if (!std::isfinite(r) || r < 0)
            out.push_back({"radius", vertex_name(T, v), "radius " + num(r) + " is not a non-negative number"});
        else if (m.bg == Background::Spherical && r >= 0.5 * kPi)
            out.push_back({"radius", vertex_name(T, v), "spherical radius " + num(r) + " not below pi/2"});
    }
    for (int e = 0; e < T.edge_count(); ++e) {
        double l = m.length[e];
        auto [a, b] = T.edge_vertices(e);
        if (!std::isfinite(l) || l <= 0) {
            out.push_back({"length", edge_name(T, e), "length " + num(l) + " is not positive"});
            continue;
        }
        if (m.bg == Background::Spherical && l >= kPi)
            out.push_back({"length", edge_name(T, e), "spherical length " + num(l) + " not below pi"});
        if (!(m.radius[a] + m.radius[b] < l))
            out.push_back({"hyperideality", edge_name(T, e),
                           "radii " + num(m.radius[a]) + " + " + num(m.radius[b]) + " >= length " + num(l)});
    }
    for (int f = 0; f < T.face_count(); ++f) {
        try {
            check_triangle_lengths(m.bg, m.triangle(f).l);
        } catch (const Error& err) {
            out.push_back({"triangle", "face " + std::to_string(f), err.what()});
        }
    }
    return out;
}

std::string format_diagnostics(const std::vector<Diagnostic>& d) {
    std::string s;
    for (const auto& x : d) {
        if (!s.empty()) s += "; ";
        s += x.where + " [" + x.kind + "] " + x.message;
    }
    return s;
}

double height_from_radius(Background bg, double r) {
    switch (bg) {
    case Background::Spherical: return std::acosh(1.0 / std::sin(r));
    case Background::Hyperbolic: return std::asinh(1.0 / std::sinh(r));
    default: return -std::log(r);
    }
}

double radius_from_height(Background bg, int eps, double h) {
    if (!eps) return 0.0;
    switch (bg) {
    case Background::Spherical: return std::asin(1.0 / std::cosh(h));
    case Background::Hyperbolic: return std::asinh(1.0 / std::sinh(h));
    default: return std::exp(-h);
    }
}

double length_from_heights(Background bg, double lambda, int ei, int ej, double hi, double hj) {
    double N = pair_term(lambda, ei, ej, hi, hj);
    if (!(N > 0)) return std::numeric_limits<double>::quiet_NaN();
    switch (bg) {
    case Background::Hyperbolic: {
        double q = N / (tau(-ei, hi) * tau(-ej, hj));
        return 2.0 * std::asinh(std::sqrt(0.5 * q));
    }
    case Background::Spherical: {
        double q = 0.5 * N / (tau(ei, hi) * tau(ej, hj));
        if (!(q < 1.0)) return std::numeric_limits<double>::quiet_NaN();
        return 2.0 * std::asin(std::sqrt(q));
    }
    default: return std::sqrt(2.0 * N * std::exp(-hi - hj));
    }
}

std::vector<double> horocycle_lengths(const Triangulation& T, const std::vector<double>& lambda,
                                      const std::vector<int>& eps) {
    std::vector<double> L(T.vertex_count(), 0.0);
    for (int c = 0; c < T.halfedge_count(); ++c) {
        int v = T.vertex(c);
        if (eps[v]) continue;
        int nc = Triangulation::next(c), pc = Triangulation::prev(c);
        double lij = lambda[T.edge(c)];
        double lik = lambda[T.edge(pc)];
        double ljk = lambda[T.edge(nc)];
        int ej = eps[T.vertex(nc)], ek = eps[T.vertex(pc)];
        double inner = std::exp(ljk) + ej * ek * std::exp(-ljk) + ej * std::exp(lik - lij) + ek * std::exp(lij - lik);
        L[v] += std::exp(-0.5 * (lij + lik)) * std::sqrt(inner);
    }
    return L;
}

Invariant lambda_lengths(const DecoratedMetric& m) {
    RawData d = raw_data(m);
    const Triangulation& T = m.tri;
    auto L = horocycle_lengths(T, d.lambda0, d.eps);
    Invariant inv;
    inv.tri = T;
    inv.eps = d.eps;
    inv.lambda = d.lambda0;
    for (int e = 0; e < T.edge_count(); ++e) {
        auto [a, b] = T.edge_vertices(e);
        if (!d.eps[a]) inv.lambda[e] += std::log(L[a]);
        if (!d.eps[b]) inv.lambda[e] += std::log(L[b]);
    }
    return inv;
}

Heights heights_from_decoration(const DecoratedMetric& m) {
    RawData d = raw_data(m);
    auto L = horocycle_lengths(m.tri, d.lambda0, d.eps);
    Heights h = d.h0;
    for (int v = 0; v < m.tri.vertex_count(); ++v)
        if (!d.eps[v]) h[v] = std::log(L[v]);
    return h;
}

DecoratedMetric decoration_from_heights(const Invariant& inv, Background bg, const Heights& h) {
    const Triangulation& T = inv.tri;
    if (static_cast<int>(h.size()) != T.vertex_count())
        throw Error(ErrorCode::HeightsOutOfDomain, "height vector has the wrong size");
    for (int v = 0; v < T.vertex_count(); ++v) {
        if (!std::isfinite(h[v]))
            throw Error(ErrorCode::HeightsOutOfDomain, vertex_name(T, v) + " height is not finite");
        if (inv.eps[v] && bg != Background::Euclidean && !(h[v] > 0))
            throw Error(ErrorCode::HeightsOutOfDomain,
                        vertex_name(T, v) + " hyperideal height " + num(h[v]) + " is not positive");
    }
    DecoratedMetric m;
    m.tri = T;
    m.bg = bg;
    m.radius.resize(T.vertex_count());
    for (int v = 0; v < T.vertex_count(); ++v) m.radius[v] = radius_from_height(bg, inv.eps[v], h[v]);
    m.length.resize(T.edge_count());
    for (int e = 0; e < T.edge_count(); ++e) {
        auto [a, b] = T.edge_vertices(e);
        double l = length_from_heights(bg, inv.lambda[e], inv.eps[a], inv.eps[b], h[a], h[b]);
        if (!std::isfinite(l)) {
            if (bg == Background::Spherical && inv.eps[a] && inv.eps[b] && inv.lambda[e] >= h[a] + h[b])
                throw Error(ErrorCode::HeightsOutOfDomain, edge_name(T, e) + " has lambda >= h_i + h_j");
            throw Error(ErrorCode::HeightsOutOfDomain, edge_name(T, e) + " has no realizing length");
        }
        m.length[e] = l;
    }
    auto diag = validate(m);
    if (!diag.empty()) throw Error(ErrorCode::HeightsOutOfDomain, format_diagnostics(diag));
    return m;
}

DecoratedMetric conformal_change(const DecoratedMetric& m, const std::vector<double>& u) {
    const Triangulation& T = m.tri;
    if (static_cast<int>(u.size()) != T.vertex_count())
        throw Error(ErrorCode::ScaleOutOfDomain, "scale factor vector has the wrong size");
    DecoratedMetric out = m;
    const Background bg = m.bg;

    // s = sin/id/sinh of the new radius and (c - 1) for its cos/1/cosh.
    std::vector<double> s_old(T.vertex_count()), s_new(T.vertex_count());
    std::vector<double> cm1_old(T.vertex_count()), cm1_new(T.vertex_count());
    for (int v = 0; v < T.vertex_count(); ++v) {
        double r = m.radius[v];
        s_old[v] = gsin(bg, r);
        s_new[v] = std::exp(u[v]) * s_old[v];
        double hr = std::sin(0.5 * r), hh = std::sinh(0.5 * r);
        switch (bg) {
        case Background::Spherical: {
            if (s_new[v] > 1.0)
                throw Error(ErrorCode::ScaleOutOfDomain, vertex_name(T, v) + " has e^{2u} sin^2 r > 1");
            double c = std::sqrt((1.0 - s_new[v]) * (1.0 + s_new[v]));
            cm1_old[v] = -2.0 * hr * hr;
            cm1_new[v] = -s_new[v] * s_new[v] / (1.0 + c);
            if (u[v] != 0.0) out.radius[v] = std::asin(s_new[v]);
            break;
        }
        case Background::Hyperbolic: {
            double c = std::sqrt(1.0 + s_new[v] * s_new[v]);
            cm1_old[v] = 2.0 * hh * hh;
            cm1_new[v] = s_new[v] * s_new[v] / (1.0 + c);
            if (u[v] != 0.0) out.radius[v] = std::asinh(s_new[v]);
            break;
        }
        case Background::Euclidean:
            if (u[v] != 0.0) out.radius[v] = s_new[v];
            break;
        }
    }
    for (int e = 0; e < T.edge_count(); ++e) {
        auto [a, b] = T.edge_vertices(e);
        if (u[a] == 0.0 && u[b] == 0.0) continue;
        double l = m.length[e];
        double k = std::exp(u[a] + u[b]);
        switch (bg) {
        case Background::Spherical: {
            // 1 - cos l~ = (1 - c~a c~b) + k [ (1 - cos l) - (1 - ca cb) ]
            double hl = std::sin(0.5 * l);
            double one_minus_old = -(cm1_old[a] + cm1_old[b] + cm1_old[a] * cm1_old[b]);
            double one_minus_new = -(cm1_new[a] + cm1_new[b] + cm1_new[a] * cm1_new[b]);
            double x = one_minus_new + k * (2.0 * hl * hl - one_minus_old);
            double q = 0.5 * x;
            out.length[e] = (q >= 0 && q <= 1) ? 2.0 * std::asin(std::sqrt(q)) : std::numeric_limits<double>::quiet_NaN();
            break;
        }
        case Background::Hyperbolic: {
            // cosh l~ - 1 = (c~a c~b - 1) + k [ (cosh l - 1) - (ca cb - 1) ]
            double hl = std::sinh(0.5 * l);
            double old_m1 = cm1_old[a] + cm1_old[b] + cm1_old[a] * cm1_old[b];
            double new_m1 = cm1_new[a] + cm1_new[b] + cm1_new[a] * cm1_new[b];
            double x = new_m1 + k * (2.0 * hl * hl - old_m1);
            out.length[e] = x >= 0 ? 2.0 * std::asinh(std::sqrt(0.5 * x)) : std::numeric_limits<double>::quiet_NaN();
            break;
        }
        case Background::Euclidean: {
            double ra = m.radius[a], rb = m.radius[b];
            double x = out.radius[a] * out.radius[a] + out.radius[b] * out.radius[b] +
                       k * (l - ra - rb) * (l + ra + rb) + 2.0 * k * ra * rb;
            out.length[e] = x > 0 ? std::sqrt(x) : std::numeric_limits<double>::quiet_NaN();
            break;
        }
        }
    }
    auto diag = validate(out);
    if (!diag.empty()) throw Error(ErrorCode::ResultInvalid, format_diagnostics(diag));
    return out;
}

double default_reference_radius(Background bg) {
    switch (bg) {
    case Background::Hyperbolic: return std::asinh(1.0);
    case Background::Spherical: return std::acosh(std::sqrt(2.0));
    default: throw Error(ErrorCode::WeightOutOfRange, "no reference radius for the euclidean background");
    }
}

namespace {

double omega_scale(Background bg, double R) {
    switch (bg) {
    case Background::Hyperbolic: return std::sinh(R);
    case Background::Spherical: return std::cosh(R);
    default: throw Error(ErrorCode::WeightOutOfRange, "weights are defined for spherical and hyperbolic backgrounds");
    }
}

} // namespace

std::vector<double> omega_map(Background bg, double R, const Heights& h, const std::vector<int>& eps) {
    double c = omega_scale(bg, R);
    std::vector<double> w(h.size());
    for (size_t v = 0; v < h.size(); ++v) {
        double y = bg == Background::Hyperbolic ? eps[v] : -eps[v];
        w[v] = tau(y, h[v]) / c;
    }
    return w;
}

Heights omega_inverse(Background bg, double R, const std::vector<double>& omega, const std::vector<int>& eps) {
    double c = omega_scale(bg, R);
    Heights h(omega.size());
    for (size_t v = 0; v < omega.size(); ++v) {
        double x = omega[v] * c;
        if (!(omega[v] > 0))
            throw Error(ErrorCode::WeightOutOfRange, "weight " + num(omega[v]) + " is not positive");
        if (!eps[v]) {
            h[v] = std::log(2.0 * x);
        } else if (bg == Background::Spherical) {
            h[v] = std::asinh(x);
        } else {
            if (!(x > 1.0))
                throw Error(ErrorCode::WeightOutOfRange, "hyperideal weight " + num(omega[v]) + " not above 1/sinh R");
            h[v] = acosh1p(x - 1.0);
        }
    }
    return h;
}

std::vector<double> scale_factors(const DecoratedMetric& m, const DecoratedMetric& mt) {
    if (m.bg != mt.bg || m.tri.vertex_count() != mt.tri.vertex_count())
        throw Error(ErrorCode::NotComparable, "metrics differ in background or vertex count");
    int nv = m.tri.vertex_count();
    for (int v = 0; v < nv; ++v)
        if (m.eps(v) != mt.eps(v))
            throw Error(ErrorCode::NotComparable, vertex_name(m.tri, v) + " changes between ideal and hyperideal");
    std::vector<double> u(nv, 0.0);
    bool any_ideal = false;
    for (int v = 0; v < nv; ++v) {
        if (m.eps(v)) u[v] = std::log(gsin(m.bg, mt.radius[v]) / gsin(m.bg, m.radius[v]));
        else any_ideal = true;
    }
    if (any_ideal) {
        Heights h = heights_from_decoration(m), ht = heights_from_decoration(mt);
        for (int v = 0; v < nv; ++v)
            if (!m.eps(v)) u[v] = h[v] - ht[v];
    }
    return u;
}

double flipped_lambda(const Invariant& inv, int e) {
    const Triangulation& T = inv.tri;
    if (T.is_self_glued(e))
        throw Error(ErrorCode::UnflippableSelfGluing, edge_name(T, e) + " bounds one face on both sides");
    auto hs = T.edge_halfedges(e);
    int h0 = hs[0], h1 = hs[1];
    int vi = T.tail(h0), vj = T.head(h0);
    int vk = T.tail(Triangulation::prev(h0)), vl = T.tail(Triangulation::prev(h1));
    int ei = inv.eps[vi], ej = inv.eps[vj], ek = inv.eps[vk], el = inv.eps[vl];
    auto G = [](int ea, int eb, double lam) { return -4.0 * tau(ea * eb, lam); };
    double gij = G(ei, ej, inv.lambda[e]);
    double gjk = G(ej, ek, inv.lambda[T.edge(Triangulation::next(h0))]);
    double gki = G(ek, ei, inv.lambda[T.edge(Triangulation::prev(h0))]);
    double gil = G(ei, el, inv.lambda[T.edge(Triangulation::next(h1))]);
    double glj = G(el, ej, inv.lambda[T.edge(Triangulation::prev(h1))]);

    // Lift vertices to R^{2,1} with <X,X> = 4 eps and split off the plane of X_i, X_j.
    double det = 16.0 * ei * ej - gij * gij;
    auto quad = [&](double u0, double u1, double v0, double v1) {
        return (u0 * (4.0 * ej * v0 - gij * v1) + u1 * (-gij * v0 + 4.0 * ei * v1)) / det;
    };
    double pkl = quad(gki, gjk, gil, glj);
    double ck2 = 4.0 * ek - quad(gki, gjk, gki, gjk);
    double cl2 = 4.0 * el - quad(gil, glj, gil, glj);
    double gkl = pkl - std::sqrt(std::max(0.0, ck2) * std::max(0.0, cl2));
    double y = -0.25 * gkl;
    if (ek && el) return acosh1p(y - 1.0);
    return std::log(2.0 * y);
}

void flip_invariant(Invariant& inv, int e) {
    double lam = flipped_lambda(inv, e);
    inv.tri.flip_in_place(e);
    inv.lambda[e] = lam;
}

} // namespace ddce
