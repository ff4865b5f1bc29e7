#include "ddce/transition.hpp"

#include "ddce/delaunay.hpp"
#include "ddce/error.hpp"
#include "ddce/parallel.hpp"

#include <cmath>

namespace ddce {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_curved(Background bg) {
    if (bg == Background::Euclidean)
        throw Error(ErrorCode::NotComparable, "transitions start from a spherical or hyperbolic metric");
}

} // namespace

Heights scale_family(Background bg, const Heights& h1, const std::vector<int>& eps, double t) {
    require_curved(bg);
    if (!(t >= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "transition parameter must be at least 1");
    if (t == 1.0) return h1;
    double R = default_reference_radius(bg);
    auto w = omega_map(bg, R, h1, eps);
    for (double& x : w) x *= t;
    return omega_inverse(bg, R, w, eps);
}

Heights euclidean_limit(Background bg, const Heights& h, const std::vector<int>& eps) {
    require_curved(bg);
    Heights out(h.size());
    auto log_tau = [&](size_t v) {
        int y = bg == Background::Hyperbolic ? eps[v] : -eps[v];
        return std::log(tau(y, h[v]));
    };
    double ref = h.empty() ? 0.0 : log_tau(0);
    for (size_t v = 0; v < h.size(); ++v) out[v] = log_tau(v) - ref;
    return out;
}

TransitionReport transition_diagnostics(const DecoratedMetric& m, const std::vector<double>& ts) {
    require_curved(m.bg);
    for (size_t k = 0; k < ts.size(); ++k) {
        if (!(ts[k] >= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "transition parameters must be at least 1");
        if (k > 0 && !(ts[k] > ts[k - 1]))
            throw Error(ErrorCode::WeightOutOfRange, "transition parameters must be strictly increasing");
    }
    TransitionReport rep;
    DecoratedMetric m1 = flip_to_delaunay(m).metric;
    rep.inv = lambda_lengths(m1);
    rep.h1 = heights_from_decoration(m1);
    rep.cusp = euclidean_limit(m.bg, rep.h1, rep.inv.eps);
    rep.limit = decoration_from_heights(rep.inv, Background::Euclidean, rep.cusp);
    auto w0 = edge_weights(rep.limit);

    rep.rows.resize(ts.size());
    parallel_for(static_cast<int>(ts.size()), [&](int k) {
        TransitionRow& row = rep.rows[k];
        row.t = ts[k];
        row.metric = ts[k] == 1.0 ? m1
                                  : decoration_from_heights(rep.inv, m.bg,
                                                            scale_family(m.bg, rep.h1, rep.inv.eps, ts[k]));
        for (int f = 0; f < row.metric.tri.face_count(); ++f) {
            auto a = interior_angles(m.bg, row.metric.triangle(f).l);
            row.max_anglesum_defect = std::max(row.max_anglesum_defect, std::fabs(a[0] + a[1] + a[2] - kPi));
        }
        auto w = edge_weights(row.metric);
        for (size_t e = 0; e < w.size(); ++e)
            row.max_weight_deviation = std::max(row.max_weight_deviation, std::fabs(w[e] - w0[e]));
    });
    return rep;
}

} // namespace ddce
