#pragma once

#include "ddce/error.hpp"
#include "ddce/metric.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace ddce {

std::vector<double> cone_angles(const DecoratedMetric& m);

enum class Feasibility { Feasible, Infeasible, Unknown };
const char* to_string(Feasibility f);

Feasibility gauss_bonnet_check(Background bg, const std::vector<double>& theta, int genus, int vertex_count);

// Theta - theta(m): gradient of the functional in the heights chart.
std::vector<double> gradient(const DecoratedMetric& m, const std::vector<double>& theta);

// Hessian of the functional in the heights chart (the negated Jacobian of the
// cone angles with respect to the heights).
Eigen::MatrixXd hessian(const DecoratedMetric& m);

// Decorated metric realized at heights h on a fixed invariant surface, kept
// weighted Delaunay by flips of the invariant.
struct HeightState {
    Background bg = Background::Hyperbolic;
    Invariant inv;
    Heights h;
    DecoratedMetric metric;
};

// Flips m to weighted Delaunay and reads off its invariant and heights. The
// state's metric is the flipped input, not a recomputation.
HeightState initial_state(const DecoratedMetric& m);

// Moves s to heights target along the straight segment, bisecting when a
// point cannot be realized. Returns the number of invariant flips.
// Throws PathLeavesDomain.
int advance(HeightState& s, const Heights& target);

// Difference of the functional between the heights of m0 and h (or along a
// polyline whose first point is reached from m0 without integrating), by
// composite Gauss-Legendre quadrature of the exact gradient.
double functional_value(const DecoratedMetric& m0, const Heights& h, const std::vector<double>& theta,
                        int subintervals = 32);
double functional_value(const DecoratedMetric& m0, const std::vector<Heights>& polyline,
                        const std::vector<double>& theta, int subintervals = 32);

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 50;
    std::optional<Heights> initial_heights;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residuals; // max |Theta - theta| before each step and at the end
    std::vector<int> flips;        // invariant flips per step
    std::vector<double> functional_increase;
    std::vector<double> step_sizes;
    Heights heights;
    std::vector<double> scale_factors;
};

struct SolveResult {
    DecoratedMetric metric;
    SolveReport report;
};

class SolveError : public Error {
public:
    SolveError(ErrorCode code, const std::string& what, SolveReport report)
        : Error(code, what), report_(std::move(report)) {}
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

// Newton iteration on the heights. Throws SolveError with the partial report
// on Infeasible, MaxIterations and LineSearchStalled.
SolveResult newton_solve(const DecoratedMetric& m0, const std::vector<double>& theta, const SolveOptions& opt = {});

} // namespace ddce
