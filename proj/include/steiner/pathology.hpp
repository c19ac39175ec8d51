#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "steiner/forest.hpp"
#include "steiner/topology.hpp"

namespace steiner {

/// One stage of the construction of a full tree whose terminals lie on the unit circle and
/// whose branch points accumulate at the four corners of the initial rectangle.
///
/// Terminals 0..3 are the fixed rectangle corners; stage j appends the four new circle
/// terminals z (one per corner) and four tripod branch points.
struct PathologyStage {
    int j = 0;
    std::vector<Point> terminals;
    std::vector<Point> branch_points;
    /// Terminal i is vertex i, branch point k is vertex terminals.size() + k.
    TopologyGraph topology;
    /// Stage at which each terminal / branch point was created.
    std::vector<int> terminal_stage;
    std::vector<int> branch_stage;
    EmbeddedForest tree{2};
    double length = 0.0;

    /// Shift used to reach this stage (0 for stage 0).
    double epsilon = 0.0;
    /// Gap to the best tree outside the family D(T_j); measured or estimated.
    double delta = 0.0;
    bool delta_exact = false;
    /// epsilon < delta_{j-1}^2 / 64 held for this stage.
    bool gap_condition = true;

    /// Per corner: the shifted corner x', the tripod branch t, the new terminal z, and the
    /// shift orientation (+1 counterclockwise, -1 clockwise).
    std::array<Point, 4> shifted_corners;
    std::array<Point, 4> tripod_branches;
    std::array<Point, 4> new_terminals;
    std::array<int, 4> shift_orientation{};

    /// Diagnostics of the transition into this stage.
    double max_direction_deviation = 0.0;  // radians, over all edges
    double parallel_deviation = 0.0;       // radians, St' against the previous stage
    double max_corner_gap = 0.0;           // max |x z|
    double length_increment = 0.0;
    double maxwell_witness = 0.0;          // |Im sum conj(c_k) (x'_k - x_k)|
};

/// The rectangle tree: terminals +-e^{i pi/6}, +-e^{5 i pi/6}, branch points (+-1/sqrt 3, 0).
PathologyStage build_stage0();

/// Shift every corner along the circle by arc length epsilon, re-minimize, and insert one
/// tripod per corner. Throws StageAbort(j + 1, ...) when a structural check fails.
PathologyStage advance(const PathologyStage& stage, double epsilon);

struct StageCertification {
    int j = 0;
    bool exact = false;
    bool optimal = true;
    double solver_length = 0.0;
    double length_difference = 0.0;
    bool same_family = true;
    double delta = 0.0;
    bool local_minimality = true;
    bool rigid = true;
    bool full = true;
    bool counts = true;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

struct CertifyOptions {
    int n_max = kDefaultMaxTerminals;
    unsigned threads = 1;
    /// delta / epsilon ratio for stages above n_max.
    double delta_ratio = 0.0;
};

/// Exact certification by the solver when the stage is small enough, structural checks
/// otherwise. Updates stage.delta.
StageCertification certify_stage(PathologyStage& stage, const CertifyOptions& opts = {});

struct AccumulationCluster {
    Point limit;
    std::size_t members = 0;
    std::size_t stages = 0;
    /// |xi^6 + 1| for the rotated limit.
    double sextic_residual = 0.0;
    /// Largest distance to the limit of the points created at stage >= j, for each j >= 1.
    std::vector<double> radii;
    bool shrinking = true;
};

struct AccumulationReport {
    double linkage = 0.25;
    std::size_t clusters = 0;
    std::vector<AccumulationCluster> accumulating;
    double rotation = 0.0;
    bool pass = true;
};

/// Single-linkage clustering of the final stage's vertices; clusters fed by at least three
/// stages are accumulating.
AccumulationReport accumulation_report(const std::vector<PathologyStage>& stages, double linkage = 0.25);

struct PathologySchedule {
    double epsilon1 = 1e-3;
    double decay = 16.0;
    /// Also cap epsilon_{j+1} by delta_j^2 / 64.
    bool enforce_gap = false;
};

inline constexpr int kMaxPathologyStages = 12;

/// epsilon for stage j + 1 after stage j.
double next_epsilon(const PathologyStage& stage, const PathologySchedule& schedule);

}  // namespace steiner
