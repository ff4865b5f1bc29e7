#pragma once

#include "ddce/metric.hpp"

#include <vector>

namespace ddce {

TriangleGeometry face_geometry(const DecoratedMetric& m, int f);

// Decorated cotan weight, summed over both sides of the edge.
double edge_weight(const DecoratedMetric& m, int e);
std::vector<double> edge_weights(const DecoratedMetric& m);

// Sum of the signed face-circle center distances from e, mapped through
// tan / identity / tanh. Same sign as the edge weight.
double center_distance_sum(const DecoratedMetric& m, int e);

bool is_local_delaunay(const DecoratedMetric& m, int e, bool strict = false);

struct FlipRecord {
    int edge = 0;          // stable edge id
    int label = 0;         // least half-edge of the new diagonal
    double length = 0;     // new diagonal length
    double support_min = 0; // spherical only, after the flip
};

struct FlipResult {
    DecoratedMetric metric;
    std::vector<FlipRecord> log;
    double initial_support_min = 0; // spherical only
};

struct FlipOptions {
    int max_flips = -1; // -1: 1000 * |E| + 1000
    bool track_support = false;
};

FlipResult flip_to_delaunay(const DecoratedMetric& m, const FlipOptions& opt = {});

// Minimum of the support function over one face / the whole surface
// (spherical background only).
double face_support_minimum(const DecoratedMetric& m, int f);
double support_minimum(const DecoratedMetric& m);

struct Tessellation {
    std::vector<int> kept;        // edge ids with w > tol
    std::vector<int> removed;     // edge ids with |w| <= tol
    std::vector<int> face_group;  // per face, group index ordered by least face
    std::vector<int> group_sizes; // faces per group
};

Tessellation extract_tessellation(const DecoratedMetric& m, double tol = 1e-10);

} // namespace ddce
