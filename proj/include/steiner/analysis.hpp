#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steiner/forest.hpp"
#include "steiner/instance.hpp"

namespace steiner {

/// Outcome of one inequality check: pass iff measured <= bound (+ tolerance), or the reverse for
/// lower bounds.
struct Verdict {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = true;
    /// The bound is not a theorem in this setting; reported, never failed.
    bool informational = false;
};

struct MaxwellResult {
    double value = 0.0;     // Re sum conj(c_k) p_k
    double residual = 0.0;  // |Im sum conj(c_k) p_k|
};

/// Length of a planar full tree from its terminal positions and outward unit directions c_k.
/// Throws PreconditionError unless d = 2 and every terminal is a leaf.
MaxwellResult maxwell_length(const EmbeddedForest& tree);

/// Sum of the outward unit directions at the terminals.
Point windrose_sum(const EmbeddedForest& tree);

/// L_r = length inside the closed ball B_r(x) and t_r = number of crossings of the sphere of
/// radius r, tabulated on a grid containing every critical radius up to the scale s.
struct RegularityProfile {
    Point center;
    double scale = 0.0;
    std::vector<double> radii;
    std::vector<double> lengths;
    std::vector<std::size_t> crossings;
    /// The tree clipped to the closed ball of radius s; lengths at other radii are exact.
    EmbeddedForest clipped;

    double length_at(double r) const;
};

/// Throws PreconditionError when a terminal lies in the open ball B_s(x).
RegularityProfile ball_profile(const EmbeddedForest& tree, const Instance& inst, const Point& x, double s,
                               int samples = 64);

/// (64 d / (1 - rho))^(d - 2).
double main_bound_value(int d, double rho);
/// (64 d / (1 - rho))^(d - 1).
double segment_bound_value(int d, double rho);

/// L_{rho s} / s against the dimension bound (d > 2) or against 2 pi rho (d = 2).
Verdict check_main_bound(const RegularityProfile& profile, int d, double rho);

/// Maximal straight segments of the tree inside the closed ball B_r(x).
std::size_t count_segments_in_ball(const EmbeddedForest& tree, const Point& x, double r);

/// Segment count in B_{rho s}(x) against (64 d / (1 - rho))^(d - 1); informational for d = 2.
Verdict check_segment_bound(const EmbeddedForest& tree, const Point& x, double s, double rho, int d);

/// Integral of t_r over r against the length of the tree.
Verdict coarea_audit(const EmbeddedForest& tree, const Point& x);

/// Integral of t_r over [r0, r1] against L_{r1} - L_{r0}.
Verdict coarea_window_audit(const EmbeddedForest& tree, const Point& x, double r0, double r1);

/// Planar circle used as a competitor piece.
struct Circle {
    Point center;
    double radius = 0.0;
};

struct Competitor {
    EmbeddedForest segments{2};
    std::vector<Circle> circles;
    double length() const;
};

/// Replacing the part `removed` of an optimal tree by `added` cannot shorten it. Throws
/// PreconditionError when (tree u terminals u added) \ removed is disconnected.
Verdict exchange_audit(const EmbeddedForest& tree, const Instance& inst, const EmbeddedForest& removed,
                       const Competitor& added);

struct BranchedComponentsReport {
    std::size_t branched_components = 0;
    double branched_length = 0.0;
    std::vector<double> component_lengths;
    std::vector<std::size_t> boundary_points;
    Verdict count;   // at most two components with a branch point
    Verdict length;  // their union is at most (4 pi / 3 + 1) r
    Verdict floor;   // a component with >= 3 boundary points has length >= sqrt(3) r
    bool pass() const { return count.pass && length.pass && floor.pass; }
};

/// Planar audit of the components of the tree inside a terminal-free disc.
BranchedComponentsReport planar_branched_components_audit(const EmbeddedForest& tree, const Instance& inst,
                                                          const Point& x, double r);

}  // namespace steiner
