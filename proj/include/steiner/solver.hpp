#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "steiner/forest.hpp"
#include "steiner/instance.hpp"
#include "steiner/opt.hpp"
#include "steiner/topology.hpp"

namespace steiner {

struct SolveOptions {
    int n_max = kDefaultMaxTerminals;
    unsigned threads = 1;
    /// Skip topologies whose cherry lower bound already exceeds the incumbent. Never changes the
    /// optimum, but the runner-up (and hence the gap) becomes an upper estimate.
    bool prune = false;
    /// Keep one audit record per full topology.
    bool keep_audit = false;
    /// In the plane, also run the convex minimizer where Melzak succeeded and record the
    /// largest disagreement.
    bool cross_check = false;
    OptOptions opt;
};

/// Outcome of minimizing one full topology.
struct TopologyAudit {
    std::string code;
    double length = 0.0;
    std::string member_code;
    bool melzak = false;
    bool converged = false;
};

struct SteinerSolution {
    EmbeddedForest tree;
    double length = 0.0;
    /// Full topology T whose family D(T) contains the optimum.
    std::string topology_code;
    /// The member of D(T) realized by the optimum.
    std::string member_code;
    std::vector<Point> branch_points;
    /// Best length over all other full topologies (infinite when n <= 3).
    double runner_up_length = std::numeric_limits<double>::infinity();
    std::string runner_up_code;
    bool gap_exact = true;
    std::size_t evaluated = 0;
    std::size_t pruned = 0;
    std::size_t melzak_hits = 0;
    double cross_check_max_diff = 0.0;
    /// Sorted by code when SolveOptions::keep_audit is set.
    std::vector<TopologyAudit> audit;

    double gap() const { return runner_up_length - length; }
};

/// Exact Steiner minimal tree by exhaustive full-topology enumeration. Equal lengths (within
/// 1e-12 * diameter) are resolved by the smallest topology code, so the result does not depend
/// on the thread count.
SteinerSolution solve(const Instance& inst, const SolveOptions& opts = {});

/// Minimum of one full topology: Melzak in the plane when it applies, otherwise the convex
/// minimizer.
FixedTopologyResult solve_topology(const Instance& inst, const FullTopology& t, const OptOptions& opt = {},
                                   bool* used_melzak = nullptr);

struct StabilityReport {
    std::string family_code;
    double gap = 0.0;
    bool gap_exact = true;
    /// gap / (5 n): perturbations below this must keep the family.
    double safe_shift = 0.0;
    double shift = 0.0;
    int trials = 0;
    int retained = 0;
    bool guaranteed = false;
    bool pass = true;
};

/// Moves every terminal by less than `shift` in random directions, re-solves, and counts how
/// often the optimum stays in the original family D(T).
StabilityReport stability_probe(const Instance& inst, double shift, int trials, std::uint64_t seed,
                                const SolveOptions& opts = {});

struct SolutionValidation {
    bool spans_terminals = true;
    bool connected = true;
    bool acyclic = true;
    bool in_hull = true;
    bool length_consistent = true;
    MinimalityReport minimality;
    bool maxwell_applicable = false;
    double maxwell_value = 0.0;
    double maxwell_residual = 0.0;
    bool maxwell_pass = true;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

/// Structural and optimality checks on any tree claimed to connect the instance.
SolutionValidation validate_tree(const EmbeddedForest& tree, const Instance& inst,
                                 double tol_angle = kDefaultTolAngle);
SolutionValidation validate_solution(const SteinerSolution& sol, const Instance& inst,
                                     double tol_angle = kDefaultTolAngle);

}  // namespace steiner
