#pragma once

#include "ddce/metric.hpp"

#include <vector>

namespace ddce {

// Omega^{-1}(t * Omega(h1)) for the spherical or hyperbolic background.
Heights scale_family(Background bg, const Heights& h1, const std::vector<int>& eps, double t);

// Cusp heights of the euclidean limit, gauged to zero at vertex 0.
Heights euclidean_limit(Background bg, const Heights& h, const std::vector<int>& eps);

struct TransitionRow {
    double t = 1;
    double max_anglesum_defect = 0; // max over faces of |angle sum - pi|
    double max_weight_deviation = 0; // max over edges of |w(h^t) - w(euclidean limit)|
    DecoratedMetric metric;
};

struct TransitionReport {
    Invariant inv;
    Heights h1;
    Heights cusp;
    DecoratedMetric limit;
    std::vector<TransitionRow> rows;
};

// The input is flipped to weighted Delaunay first; rows follow ts.
TransitionReport transition_diagnostics(const DecoratedMetric& m, const std::vector<double>& ts);

} // namespace ddce
