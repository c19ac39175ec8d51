#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "steiner/errors.hpp"
#include "steiner/melzak.hpp"
#include "steiner/opt.hpp"
#include "steiner/random.hpp"

using namespace steiner;

namespace {

double shortest_edge(const EmbeddedForest& f) {
    double m = std::numeric_limits<double>::infinity();
    for (const Edge& e : f.edges()) m = std::min(m, edge_length(f, e));
    return m;
}

Instance random_planar(Rng& rng, int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.in_ball(2));
    return Instance(2, pts);
}

}  // namespace

TEST(Melzak, ThirdPointIsEquilateral) {
    Rng rng(201);
    for (int trial = 0; trial < 100; ++trial) {
        const Point a = rng.in_ball(2), b = rng.in_ball(2);
        for (Side side : {Side::Left, Side::Right}) {
            const Point c = melzak_third_point(a, b, side);
            EXPECT_NEAR(distance(a, c), distance(a, b), 1e-12);
            EXPECT_NEAR(distance(b, c), distance(a, b), 1e-12);
            const double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            EXPECT_EQ(cross > 0.0, side == Side::Left);
        }
    }
    EXPECT_THROW(melzak_third_point(Point{0.0, 0.0}, Point{0.0, 0.0}, Side::Left), PreconditionError);
    EXPECT_THROW(melzak_third_point(Point{0.0, 0.0, 0.0}, Point{1.0, 0.0, 0.0}, Side::Left), PreconditionError);
}

TEST(Melzak, UnitSquare) {
    const Instance sq(2, {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}});
    int full = 0;
    for (const FullTopology& t : enumerate_full(4)) {
        MelzakTrace trace;
        const auto r = solve_full_planar(sq, t, &trace);
        if (!r) continue;
        ++full;
        EXPECT_NEAR(r->length, 1.0 + std::sqrt(3.0), 1e-12);
        EXPECT_TRUE(validate_local_minimality(r->tree).pass);
        EXPECT_EQ(trace.merges.size(), 2u);
        EXPECT_EQ(r->tree.count(VertexKind::Steiner), 2u);
    }
    // Two of the three pairings are realizable as full trees; the diagonal pairing is not.
    EXPECT_EQ(full, 2);
}

// The construction and the convex minimizer must agree wherever a full realization exists.
TEST(Melzak, AgreesWithConvexMinimizer) {
    Rng rng(203);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + trial % 4;
        const Instance inst = random_planar(rng, n);
        const auto tops = enumerate_full(n);
        const FullTopology& t = tops[rng.below(tops.size())];
        const auto mz = solve_full_planar(inst, t);
        const FixedTopologyResult op = minimize_topology(inst, t);
        if (mz) {
            ++compared;
            EXPECT_NEAR(mz->length, op.length, 1e-8) << trial;
            EXPECT_TRUE(op.merged.empty()) << trial;
            EXPECT_TRUE(validate_local_minimality(mz->tree).pass);
            EXPECT_EQ(static_cast<int>(mz->tree.count(VertexKind::Steiner)), n - 2);
        } else if (op.merged.empty() && shortest_edge(op.tree) > 1e-4) {
            ADD_FAILURE() << "minimizer found a full tree that the construction missed, trial " << trial;
        }
    }
    EXPECT_GT(compared, 40);
}

// One side of the first merge preserves the full-tree length exactly.
TEST(Melzak, ReductionPreservesLength) {
    Rng rng(207);
    int checked = 0;
    for (int trial = 0; trial < 3000 && checked < 60; ++trial) {
        const int n = 4 + trial % 3;
        const Instance inst = random_planar(rng, n);
        const auto tops = enumerate_full(n);
        const FullTopology& t = tops[rng.below(tops.size())];
        const auto full = solve_full_planar(inst, t);
        if (!full) continue;
        ++checked;
        double best_diff = std::numeric_limits<double>::infinity();
        for (Side side : {Side::Left, Side::Right}) {
            const MelzakReduction red = melzak_reduce(inst, t, side);
            EXPECT_EQ(red.instance.size(), inst.size() - 1);
            EXPECT_EQ(red.topology.n(), n - 1);
            if (const auto reduced = solve_full_planar(red.instance, red.topology))
                best_diff = std::min(best_diff, std::abs(reduced->length - full->length));
        }
        EXPECT_LT(best_diff, 1e-9) << trial;
    }
    EXPECT_GE(checked, 60);
}

TEST(Melzak, RejectsNonPlanarAndOversized) {
    const Instance space(3, {Point{0.0, 0.0, 0.0}, Point{1.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}});
    EXPECT_THROW(solve_full_planar(space, enumerate_full(3).front()), PreconditionError);
}
