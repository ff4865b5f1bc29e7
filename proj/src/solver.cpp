#include "ddce/solver.hpp"

#include "ddce/delaunay.hpp"
#include "ddce/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace ddce {

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

std::vector<TriangleGeometry> all_face_geometry(const DecoratedMetric& m) {
    std::vector<TriangleGeometry> g(m.tri.face_count());
    parallel_for(m.tri.face_count(), [&](int f) { g[f] = face_geometry(m, f); });
    return g;
}

} // namespace

std::vector<double> cone_angles(const DecoratedMetric& m) {
    const Triangulation& T = m.tri;
    std::vector<std::array<double, 3>> a(T.face_count());
    parallel_for(T.face_count(), [&](int f) { a[f] = interior_angles(m.bg, m.triangle(f).l); });
    std::vector<double> theta(T.vertex_count(), 0.0);
    for (int c = 0; c < T.halfedge_count(); ++c) theta[T.vertex(c)] += a[c / 3][c % 3];
    return theta;
}

const char* to_string(Feasibility f) {
    switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    default: return "unknown";
    }
}

Feasibility gauss_bonnet_check(Background bg, const std::vector<double>& theta, int genus, int vertex_count) {
    double total = 0;
    for (double t : theta) total += t;
    double lhs = total / (2.0 * kPi);
    double rhs = 2.0 * genus - 2.0 + vertex_count;
    switch (bg) {
    case Background::Hyperbolic: return lhs < rhs ? Feasibility::Feasible : Feasibility::Infeasible;
    case Background::Euclidean:
        return std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)) ? Feasibility::Feasible
                                                                            : Feasibility::Infeasible;
    default: return Feasibility::Unknown;
    }
}

std::vector<double> gradient(const DecoratedMetric& m, const std::vector<double>& theta) {
    auto th = cone_angles(m);
    for (size_t v = 0; v < th.size(); ++v) th[v] = theta[v] - th[v];
    return th;
}

Eigen::MatrixXd hessian(const DecoratedMetric& m) {
    const Triangulation& T = m.tri;
    const int n = T.vertex_count();
    auto geo = all_face_geometry(m);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int f = 0; f < T.face_count(); ++f) {
        for (int s = 0; s < 3; ++s) {
            int h = 3 * f + s;
            int vi = T.tail(h), vj = T.head(h);
            double w = geo[f].weight[s];
            double c = gcos(m.bg, m.length[T.edge(h)]);
            J(vi, vi) += w * c;
            J(vj, vj) += w * c;
            J(vi, vj) -= w;
            J(vj, vi) -= w;
        }
    }
    return -J;
}

namespace {

void check_face(const DecoratedMetric& m, int f) {
    DecoratedTriangle t = m.triangle(f);
    check_triangle_lengths(m.bg, t.l);
    for (int s = 0; s < 3; ++s)
        if (!(t.r[s] + t.r[(s + 1) % 3] < t.l[s]))
            throw Error(ErrorCode::HeightsOutOfDomain, "edge in face " + std::to_string(f) + " violates hyperideality");
}

// Flips of the invariant until the realized metric is weighted Delaunay.
int make_delaunay(HeightState& s) {
    Triangulation& T = s.metric.tri;
    const int ne = T.edge_count();
    const long cap = 1000L * ne + 1000;
    long flips = 0;
    std::deque<int> queue;
    std::vector<char> queued(ne, 1);
    for (int e = 0; e < ne; ++e) queue.push_back(e);
    while (!queue.empty()) {
        int e = queue.front();
        queue.pop_front();
        queued[e] = 0;
        if (is_local_delaunay(s.metric, e, false)) continue;
        if (++flips > cap) throw Error(ErrorCode::FlipLimitExceeded, "invariant flips do not terminate");
        auto hs = T.edge_halfedges(e);
        int boundary[4] = {T.edge(Triangulation::next(hs[0])), T.edge(Triangulation::prev(hs[0])),
                           T.edge(Triangulation::next(hs[1])), T.edge(Triangulation::prev(hs[1]))};
        flip_invariant(s.inv, e);
        T.flip_in_place(e);
        auto [a, b] = T.edge_vertices(e);
        double l = length_from_heights(s.bg, s.inv.lambda[e], s.inv.eps[a], s.inv.eps[b], s.h[a], s.h[b]);
        if (!std::isfinite(l) || (s.bg == Background::Spherical && l >= kPi))
            throw Error(ErrorCode::HeightsOutOfDomain, "flipped edge has no realizing length");
        s.metric.length[e] = l;
        auto nh = T.edge_halfedges(e);
        check_face(s.metric, Triangulation::face_of(nh[0]));
        check_face(s.metric, Triangulation::face_of(nh[1]));
        for (int x : boundary) {
            if (!queued[x]) {
                queued[x] = 1;
                queue.push_back(x);
            }
        }
    }
    return static_cast<int>(flips);
}

int advance_rec(HeightState& s, const Heights& target, int depth) {
    HeightState trial;
    trial.bg = s.bg;
    trial.inv = s.inv;
    trial.h = target;
    try {
        trial.metric = decoration_from_heights(trial.inv, trial.bg, target);
        int flips = make_delaunay(trial);
        s = std::move(trial);
        return flips;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::FlipLimitExceeded) throw;
        if (depth >= 48) throw Error(ErrorCode::PathLeavesDomain, e.what());
    }
    Heights mid(target.size());
    for (size_t v = 0; v < target.size(); ++v) mid[v] = 0.5 * (s.h[v] + target[v]);
    int flips = advance_rec(s, mid, depth + 1);
    return flips + advance_rec(s, target, depth + 1);
}

// Gauss-Legendre nodes on [0, 1], ascending.
constexpr std::array<double, 5> kNodes = {0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155,
                                          0.953089922969332};
constexpr std::array<double, 5> kWeights = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                            0.23931433524968324, 0.11846344252809454};

// Integral of <Theta - theta, b - a> from s.h = a to b; leaves s at the last node.
double integrate_segment(HeightState& s, const Heights& b, const std::vector<double>& theta, int subintervals) {
    Heights a = s.h;
    const size_t n = a.size();
    Heights d(n), p(n);
    for (size_t v = 0; v < n; ++v) d[v] = b[v] - a[v];
    double total = 0;
    for (int j = 0; j < subintervals; ++j) {
        for (int q = 0; q < 5; ++q) {
            double x = (j + kNodes[q]) / subintervals;
            for (size_t v = 0; v < n; ++v) p[v] = a[v] + x * d[v];
            advance(s, p);
            auto g = gradient(s.metric, theta);
            double dot = 0;
            for (size_t v = 0; v < n; ++v) dot += g[v] * d[v];
            total += kWeights[q] * dot / subintervals;
        }
    }
    return total;
}

} // namespace

HeightState initial_state(const DecoratedMetric& m) {
    auto diag = validate(m);
    if (!diag.empty()) throw Error(ErrorCode::ResultInvalid, format_diagnostics(diag));
    HeightState s;
    s.bg = m.bg;
    s.metric = flip_to_delaunay(m).metric;
    s.inv = lambda_lengths(s.metric);
    s.h = heights_from_decoration(s.metric);
    return s;
}

int advance(HeightState& s, const Heights& target) {
    if (target.size() != s.h.size()) throw Error(ErrorCode::HeightsOutOfDomain, "height vector has the wrong size");
    return advance_rec(s, target, 0);
}

double functional_value(const DecoratedMetric& m0, const std::vector<Heights>& polyline,
                        const std::vector<double>& theta, int subintervals) {
    if (polyline.empty()) return 0.0;
    HeightState s = initial_state(m0);
    advance(s, polyline[0]);
    double total = 0;
    for (size_t k = 1; k < polyline.size(); ++k) {
        total += integrate_segment(s, polyline[k], theta, subintervals);
        advance(s, polyline[k]);
    }
    return total;
}

double functional_value(const DecoratedMetric& m0, const Heights& h, const std::vector<double>& theta,
                        int subintervals) {
    HeightState s = initial_state(m0);
    return integrate_segment(s, h, theta, subintervals);
}

namespace {

Eigen::VectorXd newton_direction(Background bg, const Eigen::MatrixXd& J, const Eigen::VectorXd& g) {
    const int n = static_cast<int>(g.size());
    if (bg == Background::Euclidean) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        if (n > 1) {
            Eigen::MatrixXd Jr = J.bottomRightCorner(n - 1, n - 1);
            Eigen::LLT<Eigen::MatrixXd> llt(Jr);
            if (llt.info() == Eigen::Success) d.tail(n - 1) = llt.solve(g.tail(n - 1));
            else d.tail(n - 1) = Jr.fullPivLu().solve(g.tail(n - 1));
        }
        return d;
    }
    if (bg == Background::Hyperbolic) {
        Eigen::LLT<Eigen::MatrixXd> llt(J);
        if (llt.info() == Eigen::Success) return llt.solve(g);
    }
    return J.fullPivLu().solve(g);
}

} // namespace

SolveResult newton_solve(const DecoratedMetric& m0, const std::vector<double>& theta, const SolveOptions& opt) {
    SolveReport report;
    const int n = m0.tri.vertex_count();
    if (static_cast<int>(theta.size()) != n)
        throw SolveError(ErrorCode::Infeasible, "target angle vector has the wrong size", report);
    for (double t : theta)
        if (!(t > 0)) throw SolveError(ErrorCode::Infeasible, "target angles must be positive", report);
    if (gauss_bonnet_check(m0.bg, theta, m0.tri.genus(), n) == Feasibility::Infeasible)
        throw SolveError(ErrorCode::Infeasible, "target angles violate the Gauss-Bonnet condition", report);

    HeightState s = initial_state(m0);
    if (opt.initial_heights) advance(s, *opt.initial_heights);
    bool moved = opt.initial_heights.has_value();

    auto g = gradient(s.metric, theta);
    double res = max_abs(g);
    report.residuals.push_back(res);
    while (res > opt.tol) {
        if (report.iterations >= opt.max_iter) {
            report.heights = s.h;
            throw SolveError(ErrorCode::MaxIterations,
                             "no convergence after " + std::to_string(opt.max_iter) + " iterations", report);
        }
        Eigen::MatrixXd J = -hessian(s.metric);
        Eigen::VectorXd gv = Eigen::Map<const Eigen::VectorXd>(g.data(), n);
        Eigen::VectorXd d = newton_direction(s.bg, J, gv);
        double step = 1.0;
        while (true) {
            if (step < 1e-10 || !d.allFinite()) {
                report.heights = s.h;
                throw SolveError(ErrorCode::LineSearchStalled,
                                 "step size underflow at residual " + std::to_string(res), report);
            }
            Heights target(n);
            for (int v = 0; v < n; ++v) target[v] = s.h[v] + step * d[v];
            HeightState trial = s;
            int flips = 0;
            double gain = 0;
            std::vector<double> g_new;
            bool ok = true;
            try {
                flips = advance(trial, target);
                g_new = gradient(trial.metric, theta);
                if (s.bg != Background::Spherical) {
                    HeightState path = s;
                    gain = integrate_segment(path, target, theta, 8);
                }
            } catch (const Error& e) {
                if (e.code() == ErrorCode::FlipLimitExceeded) throw;
                ok = false;
            }
            if (ok) {
                double res_new = max_abs(g_new);
                bool accept = s.bg == Background::Spherical ? res_new < res
                                                            : (gain > 0 || (res_new < res && gain > -1e-13));
                if (accept) {
                    s = std::move(trial);
                    g = std::move(g_new);
                    res = res_new;
                    report.flips.push_back(flips);
                    report.functional_increase.push_back(gain);
                    report.step_sizes.push_back(step);
                    report.residuals.push_back(res);
                    ++report.iterations;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
    }

    report.heights = s.h;
    SolveResult out;
    if (!moved) {
        out.metric = s.metric;
        report.scale_factors.assign(n, 0.0);
    } else {
        out.metric = s.metric;
        report.scale_factors = scale_factors(m0, s.metric);
    }
    out.report = std::move(report);
    return out;
}

} // namespace ddce
