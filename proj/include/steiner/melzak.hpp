#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "steiner/instance.hpp"
#include "steiner/opt.hpp"
#include "steiner/topology.hpp"

namespace steiner {

/// Side of the directed line p1 -> p2.
enum class Side { Left, Right };

/// Apex of the equilateral triangle on [p1 p2] lying on the given side. Planar points only.
Point melzak_third_point(const Point& p1, const Point& p2, Side side);

struct MelzakMerge {
    int first = 0;   // merged vertex ids (topology ids)
    int second = 0;
    int branch = 0;  // the common branch vertex that becomes a leaf
    Side side = Side::Left;
    Point apex;
};

struct MelzakTrace {
    std::vector<MelzakMerge> merges;
    std::pair<int, int> final_pair{0, 1};
    /// Branch point positions, topology ids n..2n-3.
    std::vector<Point> branch_points;
};

/// Exact planar tree realizing the full topology with 2pi/3 angles at every branch point, or
/// nothing when no such realization exists. All orientation choices are searched; if several
/// succeed the shortest is returned.
std::optional<FixedTopologyResult> solve_full_planar(const Instance& inst, const FullTopology& t,
                                                     MelzakTrace* trace = nullptr);

/// One Melzak step: the first cherry (a, b) of t is replaced by the apex on `side`. The apex
/// becomes the last terminal of the reduced instance.
struct MelzakReduction {
    Instance instance;
    FullTopology topology;
    int merged_first;
    int merged_second;
};
MelzakReduction melzak_reduce(const Instance& inst, const FullTopology& t, Side side);

}  // namespace steiner
