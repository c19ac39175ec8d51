#pragma once

#include <cstddef>
#include <vector>

#include "steiner/forest.hpp"
#include "steiner/instance.hpp"

namespace steiner {

struct MstResult {
    /// Vertex i is input point i (all marked Terminal).
    EmbeddedForest tree;
    double length = 0.0;
    /// Vertices in the order Prim attached them; order[0] is the start.
    std::vector<std::size_t> order;
};

/// Dense O(n^2) Prim. Ties go to the smaller vertex index.
MstResult prim_mst(const std::vector<Point>& points, std::size_t start = 0);

/// MST length over the Steiner tree length. Throws std::logic_error if the ratio leaves
/// [1 - tol_len, sqrt(3) + tol_len], which can only mean a solver fault.
double steiner_ratio(const Instance& inst, double smt_length);

/// The corners {-1, 1}^d.
Instance hypercube_instance(int d);

struct HypercubeReport {
    int d = 0;
    double mst_length = 0.0;
    /// (2 / sqrt 3)(2^d - 1): lower bound on the Steiner tree length for d > 2.
    double lower_bound = 0.0;
    /// 2 (2^d - 1) / sqrt(3 d): MST length after rescaling the cube into the unit ball.
    double density = 0.0;
    /// The lower bound is only a theorem for d > 2.
    bool informational = false;
};

HypercubeReport hypercube_report(int d);

}  // namespace steiner
