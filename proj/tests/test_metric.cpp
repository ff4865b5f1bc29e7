#include "generators.hpp"
#include "oracles.hpp"

#include "ddce/delaunay.hpp"
#include "ddce/error.hpp"
#include "ddce/metric.hpp"

#include <doctest.h>

#include <functional>

using namespace ddce;
using doctest::Approx;

namespace {

constexpr double pi = gen::kPi;
const Background kAll[] = {Background::Spherical, Background::Euclidean, Background::Hyperbolic};

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ParseError;
}

DecoratedMetric double_triangle(Background bg, std::array<double, 3> l, std::vector<double> r) {
    DecoratedMetric m = gen::to_metric(gen::double_triangle(l), bg);
    m.radius = std::move(r);
    return m;
}

int count_kind(const std::vector<Diagnostic>& d, const std::string& kind) {
    int n = 0;
    for (const auto& x : d) n += x.kind == kind;
    return n;
}

} // namespace

TEST_CASE("validation of double triangles") {
    CHECK(validate(double_triangle(Background::Euclidean, {1, 1, 1}, {0.2, 0.2, 0.2})).empty());
    auto bad = validate(double_triangle(Background::Euclidean, {1, 1, 1}, {0.6, 0.6, 0.6}));
    CHECK(count_kind(bad, "hyperideality") == 3);
    for (const auto& d : bad) CHECK(d.where.rfind("edge ", 0) == 0);
    CHECK(validate(double_triangle(Background::Spherical, {pi / 2, pi / 2, pi / 2}, {0.3, 0.3, 0.3})).empty());
    CHECK_FALSE(format_diagnostics(bad).empty());
}

TEST_CASE("validation reports each kind of defect") {
    auto neg = validate(double_triangle(Background::Hyperbolic, {1, 1, 1}, {-0.1, 0.1, 0.1}));
    CHECK(count_kind(neg, "radius") == 1);
    auto big = validate(double_triangle(Background::Spherical, {1, 1, 1}, {1.7, 0.1, 0.1}));
    CHECK(count_kind(big, "radius") == 1);
    auto tri = validate(double_triangle(Background::Euclidean, {1, 1, 2.5}, {0, 0, 0}));
    CHECK(count_kind(tri, "triangle") == 2);
    auto len = validate(double_triangle(Background::Euclidean, {1, -1, 1}, {0, 0, 0}));
    CHECK(count_kind(len, "length") == 1);
    DecoratedMetric wrong = double_triangle(Background::Euclidean, {1, 1, 1}, {0, 0});
    CHECK(count_kind(validate(wrong), "size") == 1);
}

TEST_CASE("conformal change by zero is the identity") {
    gen::Rng rng(1);
    for (Background bg : kAll) {
        DecoratedMetric m = gen::random_metric(rng, bg);
        DecoratedMetric c = conformal_change(m, std::vector<double>(m.tri.vertex_count(), 0.0));
        CHECK(c.length == m.length);
        CHECK(c.radius == m.radius);
    }
}

TEST_CASE("conformal change of an ideal hyperbolic edge") {
    DecoratedMetric m = double_triangle(Background::Hyperbolic, {1, 1, 1}, {0, 0, 0});
    DecoratedMetric c = conformal_change(m, {0.2, 0.2, 0.2});
    for (double l : c.length) CHECK(l == Approx(2 * std::asinh(std::exp(0.2) * std::sinh(0.5))).epsilon(1e-14));
}

TEST_CASE("conformal change matches lift scaling") {
    DecoratedMetric m = double_triangle(Background::Hyperbolic, {1, 1, 1}, {0.1, 0.1, 0.1});
    DecoratedMetric c = conformal_change(m, {0.3, -0.2, 0.0});
    oracle::R ri, rj;
    double ref = double(oracle::scaled_length(Background::Hyperbolic, 1, 0.1, 0.1, 0.3, -0.2, ri, rj));
    int e01 = m.tri.edge(0);
    CHECK(c.length[e01] == Approx(ref).epsilon(1e-13));
    CHECK(c.radius[m.tri.tail(0)] == Approx(double(ri)).epsilon(1e-14));
    CHECK(c.radius[m.tri.head(0)] == Approx(double(rj)).epsilon(1e-14));

    gen::Rng rng(2);
    for (Background bg : kAll) {
        double worst = 0;
        for (int k = 0; k < 30; ++k) {
            gen::Options opt;
            opt.ideal_fraction = 0;
            DecoratedMetric a = gen::random_metric(rng, bg, opt);
            std::vector<double> u(a.tri.vertex_count());
            for (double& x : u) x = gen::uniform(rng, -0.15, 0.15);
            DecoratedMetric b;
            try {
                b = conformal_change(a, u);
            } catch (const Error&) {
                continue;
            }
            for (int e = 0; e < a.tri.edge_count(); ++e) {
                auto [i, j] = a.tri.edge_vertices(e);
                oracle::R x, y;
                double l = double(oracle::scaled_length(bg, a.length[e], a.radius[i], a.radius[j], u[i], u[j], x, y));
                worst = std::max(worst, std::fabs(b.length[e] - l) / l);
            }
        }
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("conformal change outside the spherical domain") {
    DecoratedMetric m = double_triangle(Background::Spherical, {1, 1, 1}, {0.3, 0.3, 0.3});
    CHECK(code_of([&] { conformal_change(m, {2.0, 0, 0}); }) == ErrorCode::ScaleOutOfDomain);
    CHECK(code_of([&] { conformal_change(m, {0, 0}); }) == ErrorCode::ScaleOutOfDomain);
    DecoratedMetric e = double_triangle(Background::Euclidean, {1, 1, 1}, {0.2, 0.2, 0.2});
    CHECK(code_of([&] { conformal_change(e, {-3.0, 0, 0}); }) == ErrorCode::ResultInvalid);
}

TEST_CASE("lambda lengths of reference edges") {
    DecoratedMetric tangent = double_triangle(Background::Hyperbolic, {1, 1, 1}, {0.5, 0.5, 0.5});
    for (double x : lambda_lengths(tangent).lambda) CHECK(std::fabs(x) < 1e-15);

    DecoratedMetric h = double_triangle(Background::Hyperbolic, {2, 2, 2}, {0.5, 0.5, 0.5});
    double c = std::cosh(0.5), s = std::sinh(0.5);
    for (double x : lambda_lengths(h).lambda) CHECK(x == Approx(std::acosh((std::cosh(2.0) - c * c) / (s * s))).epsilon(1e-14));

    DecoratedMetric e = double_triangle(Background::Euclidean, {3, 3, 3}, {1, 1, 1});
    for (double x : lambda_lengths(e).lambda) CHECK(x == Approx(std::acosh(3.5)).epsilon(1e-14));
}

TEST_CASE("lambda lengths of hyperideal edges are inversive distances") {
    gen::Rng rng(4);
    for (Background bg : kAll) {
        for (int k = 0; k < 20; ++k) {
            DecoratedMetric m = gen::random_metric(rng, bg);
            Invariant inv = lambda_lengths(m);
            for (int e = 0; e < m.tri.edge_count(); ++e) {
                auto [i, j] = m.tri.edge_vertices(e);
                if (!m.eps(i) || !m.eps(j)) continue;
                double I = double(oracle::inversive_distance(bg, m.length[e], m.radius[i], m.radius[j]));
                CHECK(std::cosh(inv.lambda[e]) == Approx(I).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("ideal vertices carry unit horocycles") {
    gen::Rng rng(6);
    gen::Options opt;
    opt.ideal_fraction = 0.6;
    for (Background bg : kAll) {
        for (int k = 0; k < 10; ++k) {
            DecoratedMetric m = gen::random_metric(rng, bg, opt);
            Invariant inv = lambda_lengths(m);
            auto L = horocycle_lengths(inv.tri, inv.lambda, inv.eps);
            for (int v = 0; v < m.tri.vertex_count(); ++v)
                if (!inv.eps[v]) CHECK(L[v] == Approx(1).epsilon(1e-12));
        }
    }
}

TEST_CASE("heights of reference radii") {
    CHECK(height_from_radius(Background::Hyperbolic, std::asinh(1.0)) == Approx(std::asinh(1.0)).epsilon(1e-15));
    CHECK(radius_from_height(Background::Spherical, 1, std::asinh(1.0)) == Approx(pi / 4).epsilon(1e-15));
    CHECK(std::fabs(height_from_radius(Background::Euclidean, 1.0)) < 1e-15);
    for (Background bg : kAll)
        for (double r : {0.05, 0.3, 0.9})
            CHECK(radius_from_height(bg, 1, height_from_radius(bg, r)) == Approx(r).epsilon(1e-13));
}

TEST_CASE("heights and decorations are inverse to each other") {
    gen::Rng rng(8);
    for (Background bg : kAll) {
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            DecoratedMetric m = gen::random_metric(rng, bg);
            Invariant inv = lambda_lengths(m);
            Heights h = heights_from_decoration(m);
            DecoratedMetric back = decoration_from_heights(inv, bg, h);
            for (int e = 0; e < m.tri.edge_count(); ++e) worst = std::max(worst, std::fabs(back.length[e] - m.length[e]));
            for (int v = 0; v < m.tri.vertex_count(); ++v) worst = std::max(worst, std::fabs(back.radius[v] - m.radius[v]));
            for (double& x : h) x += gen::uniform(rng, -0.02, 0.02);
            Heights again = heights_from_decoration(decoration_from_heights(inv, bg, h));
            for (size_t v = 0; v < h.size(); ++v) worst = std::max(worst, std::fabs(again[v] - h[v]));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("spherical tangency heights") {
    double l = length_from_heights(Background::Spherical, 0.0, 1, 1, 1.0, 1.0);
    double c = std::cosh(1.0), s = std::sinh(1.0);
    CHECK(std::cos(l) == Approx((s * s - 1) / (c * c)).epsilon(1e-14));
    // Tangent vertex circles are not a valid decoration.
    DecoratedMetric m = double_triangle(Background::Spherical, {1, 1, 1}, {0.1, 0.1, 0.1});
    Invariant inv = lambda_lengths(m);
    std::fill(inv.lambda.begin(), inv.lambda.end(), 0.0);
    CHECK(code_of([&] { decoration_from_heights(inv, Background::Spherical, {1, 1, 1}); }) ==
          ErrorCode::HeightsOutOfDomain);
    CHECK(code_of([&] { decoration_from_heights(inv, Background::Spherical, {1, 1}); }) ==
          ErrorCode::HeightsOutOfDomain);
}

TEST_CASE("omega maps of reference heights") {
    auto w = omega_map(Background::Hyperbolic, std::asinh(1.0), {std::asinh(1.0)}, {1});
    CHECK(w[0] == Approx(std::sqrt(2.0)).epsilon(1e-15));
    auto w0 = omega_map(Background::Spherical, std::acosh(2.0), {0.0}, {0});
    CHECK(w0[0] == Approx(0.25).epsilon(1e-15));
    CHECK(omega_inverse(Background::Hyperbolic, std::asinh(1.0), w, {1})[0] == Approx(std::asinh(1.0)).epsilon(1e-14));
    CHECK(std::fabs(omega_inverse(Background::Spherical, std::acosh(2.0), w0, {0})[0]) < 1e-15);
    CHECK(code_of([] { omega_inverse(Background::Hyperbolic, 1.0, {0.5}, {1}); }) == ErrorCode::WeightOutOfRange);
    CHECK(code_of([] { omega_inverse(Background::Spherical, 1.0, {-1.0}, {0}); }) == ErrorCode::WeightOutOfRange);
    CHECK(code_of([] { omega_map(Background::Euclidean, 1.0, {0.0}, {0}); }) == ErrorCode::WeightOutOfRange);
    gen::Rng rng(10);
    for (Background bg : {Background::Hyperbolic, Background::Spherical}) {
        double R = default_reference_radius(bg);
        for (int k = 0; k < 100; ++k) {
            int eps = k % 2;
            double h = gen::uniform(rng, eps ? 0.1 : -2.0, 3.0);
            auto back = omega_inverse(bg, R, omega_map(bg, R, {h}, {eps}), {eps});
            CHECK(back[0] == Approx(h).epsilon(1e-12));
        }
    }
}

TEST_CASE("scale factors recover conformal changes") {
    gen::Rng rng(12);
    for (Background bg : kAll) {
        for (int k = 0; k < 10; ++k) {
            DecoratedMetric m = gen::random_metric(rng, bg);
            auto zero = scale_factors(m, m);
            for (double x : zero) CHECK(std::fabs(x) < 1e-12);
            std::vector<double> u(m.tri.vertex_count());
            for (double& x : u) x = gen::uniform(rng, -0.1, 0.1);
            DecoratedMetric mt;
            try {
                mt = conformal_change(m, u);
            } catch (const Error&) {
                continue;
            }
            auto got = scale_factors(m, mt);
            for (size_t v = 0; v < u.size(); ++v) CHECK(got[v] == Approx(u[v]).epsilon(1e-10).scale(1));
        }
    }
}

TEST_CASE("perturbed metrics are not reproduced by their scale factors") {
    gen::Rng rng(14);
    DecoratedMetric m = gen::random_metric(rng, Background::Hyperbolic);
    DecoratedMetric p = m;
    p.length[0] *= 1.01;
    auto u = scale_factors(m, p);
    DecoratedMetric back = conformal_change(m, u);
    double dev = 0;
    for (int e = 0; e < m.tri.edge_count(); ++e) dev = std::max(dev, std::fabs(back.length[e] - p.length[e]));
    CHECK(dev > 1e-4);
    DecoratedMetric other = gen::random_metric(rng, Background::Euclidean);
    CHECK(code_of([&] { scale_factors(m, other); }) == ErrorCode::NotComparable);
}

TEST_CASE("conformal change preserves lambda lengths") {
    gen::Rng rng(16);
    for (Background bg : kAll) {
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            DecoratedMetric m = gen::random_metric(rng, bg);
            std::vector<double> u(m.tri.vertex_count());
            for (double& x : u) x = gen::uniform(rng, -0.1, 0.1);
            DecoratedMetric mt;
            try {
                mt = conformal_change(m, u);
            } catch (const Error&) {
                continue;
            }
            auto a = lambda_lengths(m).lambda, b = lambda_lengths(mt).lambda;
            for (size_t e = 0; e < a.size(); ++e) worst = std::max(worst, std::fabs(a[e] - b[e]));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("flipped lambda satisfies the ideal Ptolemy relation") {
    gen::Rng rng(18);
    gen::Options opt;
    opt.ideal_fraction = 1.0;
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        DecoratedMetric m = gen::random_metric(rng, Background::Hyperbolic, opt);
        Invariant inv = lambda_lengths(m);
        auto E = [&](int h) { return std::exp(0.5 * inv.lambda[inv.tri.edge(h)]); };
        for (int e = 0; e < m.tri.edge_count(); ++e) {
            if (inv.tri.is_self_glued(e)) continue;
            auto [h0, h1] = inv.tri.edge_halfedges(e);
            using T = Triangulation;
            double rhs = (E(T::prev(h0)) * E(T::prev(h1)) + E(T::next(h0)) * E(T::next(h1))) / E(h0);
            worst = std::max(worst, std::fabs(std::exp(0.5 * flipped_lambda(inv, e)) - rhs) / rhs);
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("flipping the invariant twice restores it") {
    gen::Rng rng(20);
    for (int k = 0; k < 20; ++k) {
        DecoratedMetric m = gen::random_metric(rng, Background::Hyperbolic);
        Invariant inv = lambda_lengths(m);
        for (int e = 0; e < m.tri.edge_count(); ++e) {
            if (inv.tri.is_self_glued(e)) continue;
            Invariant a = inv;
            flip_invariant(a, e);
            if (a.tri.is_self_glued(e)) continue;
            flip_invariant(a, e);
            CHECK(a.lambda[e] == Approx(inv.lambda[e]).epsilon(1e-12));
        }
    }
}

TEST_CASE("flipping a co-circular edge agrees with the geometric flip") {
    std::vector<std::array<double, 2>> still(1, {0.0, 0.0});
    for (double r : {0.0, 0.2}) {
        DecoratedMetric m = gen::to_metric(gen::torus_grid(1, 1, 0.0, still), Background::Euclidean);
        m.radius = {r};
        int diag = -1;
        for (int e = 0; e < m.tri.edge_count(); ++e)
            if (std::fabs(edge_weight(m, e)) < 1e-12) diag = e;
        REQUIRE(diag >= 0);
        double sigma = flipped_lambda(lambda_lengths(m), diag);
        auto hs = m.tri.edge_halfedges(diag);
        double l = diagonal_length(m.triangle(Triangulation::face_of(hs[0])), Triangulation::slot_of(hs[0]),
                                   m.triangle(Triangulation::face_of(hs[1])), Triangulation::slot_of(hs[1]));
        DecoratedMetric g = m;
        g.tri.flip_in_place(diag);
        g.length[diag] = l;
        CHECK(lambda_lengths(g).lambda[diag] == Approx(sigma).epsilon(1e-12));
        CHECK(flip_to_delaunay(m).log.empty());
    }
}

TEST_CASE("self-glued edges cannot be flipped in the invariant") {
    DecoratedMetric m = double_triangle(Background::Hyperbolic, {1, 1, 1.8}, {0, 0, 0});
    Invariant inv = lambda_lengths(m);
    flip_invariant(inv, 0);
    int self = -1;
    for (int e = 0; e < 3; ++e)
        if (inv.tri.is_self_glued(e)) self = e;
    REQUIRE(self >= 0);
    CHECK(code_of([&] { flipped_lambda(inv, self); }) == ErrorCode::UnflippableSelfGluing);
}
