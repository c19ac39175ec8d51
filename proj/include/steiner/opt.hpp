#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "steiner/forest.hpp"
#include "steiner/instance.hpp"
#include "steiner/topology.hpp"

namespace steiner {

struct OptOptions {
    /// Relative tolerance; absolute thresholds are tol * diameter.
    double tol = 1e-12;
    /// Vertices closer than merge_tol * diameter are reported as merged.
    double merge_tol = 1e-7;
    /// Smoothing continuation eta: from smoothing_start * diam down to smoothing_end * diam.
    bool smoothing = true;
    double smoothing_start = 1e-3;
    double smoothing_end = 1e-14;
    std::size_t max_iterations = 1000000;
    /// Optional starting positions for the n-2 branch points.
    std::optional<std::vector<Point>> initial;
};

/// Branch points merged into one location by the minimizer.
struct MergedCluster {
    std::vector<int> steiner;  // topology vertex ids (>= n)
    int terminal = -1;         // terminal id if the cluster sits on a terminal
};

struct FixedTopologyResult {
    /// Tree with merged clusters collapsed; vertex i < n is terminal i.
    EmbeddedForest tree;
    double length = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double max_branch_move_last_iter = 0.0;
    /// Positions of the n-2 branch variables (topology ids n..2n-3).
    std::vector<Point> branch_points;
    std::vector<MergedCluster> merged;
    /// Canonical code of the realized member of D(T) (contracted topology).
    std::string member_code;
    /// Largest norm of the gradient (free branch points) after polishing.
    double gradient_residual = 0.0;
    /// Largest subgradient excess over all merged clusters (<= 0 means optimal).
    double subgradient_excess = 0.0;
};

/// Minimize total length over branch positions for a fixed full topology.
FixedTopologyResult minimize_topology(const Instance& inst, const FullTopology& t, const OptOptions& opt = {});

/// Length of the topology's tree for given branch positions (no minimization).
double topology_length(const Instance& inst, const FullTopology& t, const std::vector<Point>& branch);

/// Tree with the given branch positions, no merging.
EmbeddedForest topology_tree(const Instance& inst, const FullTopology& t, const std::vector<Point>& branch);

struct VertexCheck {
    std::size_t vertex = 0;
    std::size_t degree = 0;
    double min_angle = 0.0;
    double max_angle_deviation = 0.0;  // from 2pi/3, degree-3 vertices only
    double coplanarity_residual = 0.0;
    bool pass = true;
    std::string reason;
};

struct MinimalityReport {
    bool pass = true;
    std::vector<VertexCheck> vertices;
};

inline constexpr double kDefaultTolAngle = 1e-6;
inline constexpr double kDefaultTolGrad = 1e-8;

/// Degree <= 3, angles >= 2pi/3, 120 degree planar stars at branching vertices. Boundary
/// vertices (from clipping) are skipped.
MinimalityReport validate_local_minimality(const EmbeddedForest& tree, double tol_angle = kDefaultTolAngle);

}  // namespace steiner
