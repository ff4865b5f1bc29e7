#include "ddce/delaunay.hpp"
#include "ddce/error.hpp"
#include "ddce/io.hpp"
#include "ddce/metric.hpp"
#include "ddce/parallel.hpp"
#include "ddce/solver.hpp"
#include "ddce/transition.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace ddce;

namespace {

constexpr double kPi = 3.14159265358979323846;

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kNoConvergence = 3, kInfeasible = 4 };

std::string num(double x) { return json_number(x); }

int exit_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::Infeasible: return kInfeasible;
    case ErrorCode::MaxIterations:
    case ErrorCode::LineSearchStalled: return kNoConvergence;
    default: return kInvalid;
    }
}

SurfaceFile load_valid(const std::string& path) {
    SurfaceFile f = read_surface(path);
    auto diag = validate(f.metric);
    if (!diag.empty()) {
        for (const auto& d : diag) std::cerr << d.where << " [" << d.kind << "] " << d.message << "\n";
        throw Error(ErrorCode::ResultInvalid, "invalid decorated metric");
    }
    return f;
}

int cmd_validate(const std::string& path) {
    SurfaceFile f = read_surface(path);
    auto diag = validate(f.metric);
    const Triangulation& T = f.metric.tri;
    if (diag.empty()) {
        std::cout << "valid " << to_string(f.metric.bg) << " metric: faces " << T.face_count() << ", edges "
                  << T.edge_count() << ", vertices " << T.vertex_count() << ", genus " << T.genus() << "\n";
        return kOk;
    }
    for (const auto& d : diag) std::cout << d.where << " [" << d.kind << "] " << d.message << "\n";
    return kInvalid;
}

int cmd_delaunay(const std::string& path, const std::string& out) {
    SurfaceFile f = load_valid(path);
    FlipOptions opt;
    opt.track_support = f.metric.bg == Background::Spherical;
    FlipResult r = flip_to_delaunay(f.metric, opt);
    std::string log = "[";
    for (size_t k = 0; k < r.log.size(); ++k) {
        const FlipRecord& rec = r.log[k];
        log += (k ? ", " : "");
        log += "{\"edge\": " + json_string(halfedge_label(rec.label)) + ", \"length\": " + num(rec.length);
        if (opt.track_support) log += ", \"support_min\": " + num(rec.support_min);
        log += "}";
    }
    log += "]";
    JsonMembers extra = {{"flips", log}};
    if (opt.track_support) extra.insert(extra.begin(), {"initial_support_min", num(r.initial_support_min)});
    SurfaceFile o;
    o.metric = r.metric;
    if (!out.empty()) write_file(out, write_surface(o, extra));
    std::cout << "flips " << r.log.size() << "\n";
    if (opt.track_support) {
        std::cout << "support_min " << num(r.initial_support_min);
        for (const auto& rec : r.log) std::cout << " " << num(rec.support_min);
        std::cout << "\n";
    }
    return kOk;
}

int cmd_invariant(const std::string& path) {
    SurfaceFile f = load_valid(path);
    DecoratedMetric m = flip_to_delaunay(f.metric).metric;
    Invariant inv = lambda_lengths(m);
    Tessellation tess = extract_tessellation(m);
    const Triangulation& T = m.tri;
    std::vector<std::pair<int, int>> verts, edges;
    for (int v = 0; v < T.vertex_count(); ++v) verts.push_back({T.vertex_label(v), v});
    for (int e : tess.kept) edges.push_back({T.edge_label(e), e});
    std::sort(verts.begin(), verts.end());
    std::sort(edges.begin(), edges.end());
    for (auto& [lab, v] : verts) std::cout << "vertex " << halfedge_label(lab) << " eps " << inv.eps[v] << "\n";
    for (auto& [lab, e] : edges) {
        auto [a, b] = T.edge_vertices(e);
        std::cout << "edge " << halfedge_label(lab) << " " << halfedge_label(T.vertex_label(a)) << " "
                  << halfedge_label(T.vertex_label(b)) << " lambda " << num(inv.lambda[e]) << "\n";
    }
    std::cout << "faces";
    for (int s : tess.group_sizes) std::cout << " " << s;
    std::cout << "\n";
    return kOk;
}

std::vector<double> parse_theta(const std::string& arg, const SurfaceFile& f) {
    int n = f.metric.tri.vertex_count();
    if (arg == "file") {
        if (!f.theta_target) throw Error(ErrorCode::ParseError, "input has no theta_target");
        return *f.theta_target;
    }
    if (arg == "2pi") return std::vector<double>(n, 2 * kPi);
    char* end = nullptr;
    double x = std::strtod(arg.c_str(), &end);
    if (end && *end == '\0' && end != arg.c_str()) return std::vector<double>(n, x);
    SurfaceFile t = read_surface(arg);
    if (!t.theta_target || t.metric.tri.vertex_count() != n)
        throw Error(ErrorCode::ParseError, "'" + arg + "' has no matching theta_target");
    return *t.theta_target;
}

std::string report_json(const SolveReport& r) {
    return "{\"iterations\": " + std::to_string(r.iterations) + ", \"residuals\": " + json_array(r.residuals) +
           ", \"flips\": " + json_array(r.flips) + ", \"functional_increase\": " + json_array(r.functional_increase) +
           ", \"step_sizes\": " + json_array(r.step_sizes) + ", \"scale_factors\": " + json_array(r.scale_factors) +
           "}";
}

void print_report(const SolveReport& r) {
    std::cout << "iterations " << r.iterations << "\n";
    for (size_t k = 0; k < r.residuals.size(); ++k) std::cout << "residual " << k << " " << num(r.residuals[k]) << "\n";
}

int cmd_solve(const std::string& path, const std::string& theta_spec, double tol, int max_iter,
              const std::string& out) {
    SurfaceFile f = load_valid(path);
    auto theta = parse_theta(theta_spec, f);
    SolveOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.initial_heights = f.heights;
    try {
        SolveResult r = newton_solve(f.metric, theta, opt);
        print_report(r.report);
        if (!out.empty()) {
            SurfaceFile o;
            o.metric = r.metric;
            o.theta_target = theta;
            o.heights = r.report.heights;
            write_file(out, write_surface(o, {{"report", report_json(r.report)}}));
        }
        return kOk;
    } catch (const SolveError& e) {
        print_report(e.report());
        std::cerr << e.what() << "\n";
        return exit_for(e);
    }
}

std::vector<double> parse_t_list(const std::string& s) {
    std::vector<double> ts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double t = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "bad t value '" + item + "'");
        ts.push_back(t);
    }
    if (ts.empty()) throw Error(ErrorCode::ParseError, "empty t list");
    return ts;
}

int cmd_transition(const std::string& path, const std::string& t_list, const std::string& prefix) {
    SurfaceFile f = load_valid(path);
    auto ts = parse_t_list(t_list);
    if (f.metric.bg == Background::Euclidean) {
        std::cerr << "transition needs a spherical or hyperbolic input\n";
        return kInvalid;
    }
    TransitionReport rep = transition_diagnostics(f.metric, ts);
    std::string csv = "t,max_anglesum_defect,max_weight_deviation\n";
    for (size_t k = 0; k < rep.rows.size(); ++k) {
        const TransitionRow& row = rep.rows[k];
        csv += num(row.t) + "," + num(row.max_anglesum_defect) + "," + num(row.max_weight_deviation) + "\n";
        if (!prefix.empty()) {
            SurfaceFile o;
            o.metric = row.metric;
            write_file(prefix + "_" + std::to_string(k) + ".json", write_surface(o, {{"t", num(row.t)}}));
        }
    }
    if (!prefix.empty()) {
        SurfaceFile lim;
        lim.metric = rep.limit;
        lim.heights = rep.cusp;
        write_file(prefix + "_limit.json", write_surface(lim));
        write_file(prefix + ".csv", csv);
    }
    std::cout << csv;
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decorated discrete conformal maps on triangulated surfaces"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (DDCE_THREADS overrides)")->check(CLI::PositiveNumber);

    std::string input, out, theta = "2pi", t_list = "1,10,100,1000,10000", prefix;
    double tol = 1e-10;
    int max_iter = 50;

    auto* v = app.add_subcommand("validate", "Check a decorated metric");
    v->add_option("input", input)->required();
    auto* d = app.add_subcommand("delaunay", "Flip to a weighted Delaunay triangulation");
    d->add_option("input", input)->required();
    d->add_option("--out", out);
    auto* inv = app.add_subcommand("invariant", "Print lambda-lengths of the weighted Delaunay tessellation");
    inv->add_option("input", input)->required();
    auto* s = app.add_subcommand("solve", "Solve the prescribed cone-angle problem");
    s->add_option("input", input)->required();
    s->add_option("--theta", theta, "Number, 2pi, file (theta_target of the input) or a JSON path");
    s->add_option("--tol", tol);
    s->add_option("--max-iter", max_iter);
    s->add_option("--out", out);
    auto* t = app.add_subcommand("transition", "Deform towards the euclidean limit");
    t->add_option("input", input)->required();
    t->add_option("--t-list", t_list);
    t->add_option("--out-prefix", prefix);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kParse;
    }
    set_thread_count(threads);

    try {
        if (*v) return cmd_validate(input);
        if (*d) return cmd_delaunay(input, out);
        if (*inv) return cmd_invariant(input);
        if (*s) return cmd_solve(input, theta, tol, max_iter, out);
        if (*t) return cmd_transition(input, t_list, prefix);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
