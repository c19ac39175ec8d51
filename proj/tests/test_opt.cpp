#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "steiner/opt.hpp"
#include "steiner/random.hpp"

using namespace steiner;

namespace {

FullTopology only_topology(int n) { return enumerate_full(n).front(); }

}  // namespace

TEST(Opt, EquilateralFermatPoint) {
    const Instance tri(2, {Point{1.0, 0.0}, Point{-0.5, std::sqrt(3.0) / 2.0}, Point{-0.5, -std::sqrt(3.0) / 2.0}});
    const FixedTopologyResult r = minimize_topology(tri, only_topology(3));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.length, 3.0, 1e-12);
    ASSERT_EQ(r.branch_points.size(), 1u);
    EXPECT_NEAR(r.branch_points[0].norm(), 0.0, 1e-10);
    EXPECT_TRUE(r.merged.empty());
}

// Branch point collapses onto the obtuse vertex: length 1 + sqrt(1.04).
TEST(Opt, DegenerateTriangle) {
    const Instance tri(2, {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{-1.0, 0.2}});
    const FixedTopologyResult r = minimize_topology(tri, only_topology(3));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.length, 1.0 + std::sqrt(1.04), 1e-12);
    ASSERT_EQ(r.merged.size(), 1u);
    EXPECT_EQ(r.merged[0].terminal, 0);
    EXPECT_EQ(r.tree.count(VertexKind::Steiner), 0u);
    EXPECT_TRUE(validate_local_minimality(r.tree).pass);
}

TEST(Opt, ThreePointsAgainstWeiszfeld) {
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 2 + trial % 3;
        const Instance inst(d, {rng.in_ball(d), rng.in_ball(d), rng.in_ball(d)});
        const FixedTopologyResult r = minimize_topology(inst, only_topology(3));
        EXPECT_TRUE(r.converged) << trial;
        EXPECT_NEAR(r.length, oracle::fermat_length(inst.terminal(0), inst.terminal(1), inst.terminal(2)), 1e-9) << trial;
    }
}

TEST(Opt, BranchPointsBalancedAndLengthConsistent) {
    Rng rng(103);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const int n = 4 + trial % 3;
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.in_ball(d));
        const Instance inst(d, pts);
        const auto tops = enumerate_full(n);
        const FullTopology& t = tops[rng.below(tops.size())];
        const FixedTopologyResult r = minimize_topology(inst, t);
        EXPECT_TRUE(r.converged) << trial;
        EXPECT_TRUE(r.tree.is_tree());
        // Terminals and coalesced branch points may carry sharp angles forced by the topology.
        for (const VertexCheck& c : validate_local_minimality(r.tree).vertices)
            if (r.tree.kind(c.vertex) == VertexKind::Steiner && c.degree == 3) {
                EXPECT_TRUE(c.pass) << trial << " " << c.reason;
            }
        EXPECT_NEAR(forest_length(r.tree), r.length, 1e-9);
        EXPECT_NEAR(topology_length(inst, t, r.branch_points), r.length, 1e-9);
        EXPECT_LE(r.gradient_residual, 1e-6);
        EXPECT_LE(r.subgradient_excess, 1e-6);
        // No random nudge of the branch points does better.
        for (int k = 0; k < 10; ++k) {
            std::vector<Point> moved = r.branch_points;
            for (Point& p : moved) p += rng.in_ball(d, 1e-3);
            EXPECT_GE(topology_length(inst, t, moved), r.length - 1e-12);
        }
    }
}

TEST(Opt, ScaleAndTranslationEquivariance) {
    Rng rng(107);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + trial % 2;
        std::vector<Point> pts, moved;
        const double scale = rng.uniform(0.1, 10.0);
        const Point shift = rng.in_ball(d, 5.0);
        for (int i = 0; i < 5; ++i) {
            pts.push_back(rng.in_ball(d));
            moved.push_back(pts.back() * scale + shift);
        }
        const FullTopology t = enumerate_full(5)[rng.below(15)];
        const double a = minimize_topology(Instance(d, pts), t).length;
        const double b = minimize_topology(Instance(d, moved), t).length;
        EXPECT_NEAR(b, a * scale, 1e-9 * scale);
    }
}

TEST(Opt, MinimalityRejectsSharpAngles) {
    EmbeddedForest path(2);
    const auto a = path.add_vertex(Point{0.0, 0.0}, VertexKind::Terminal);
    const auto b = path.add_vertex(Point{1.0, 0.0}, VertexKind::Terminal);
    const auto c = path.add_vertex(Point{1.0, 1.0}, VertexKind::Terminal);
    path.add_edge(a, b);
    path.add_edge(b, c);
    EXPECT_FALSE(validate_local_minimality(path).pass);

    EmbeddedForest degree2(2);
    const auto u = degree2.add_vertex(Point{0.0, 0.0}, VertexKind::Terminal);
    const auto s = degree2.add_vertex(Point{1.0, 0.0}, VertexKind::Steiner);
    const auto w = degree2.add_vertex(Point{2.0, 0.0}, VertexKind::Terminal);
    degree2.add_edge(u, s);
    degree2.add_edge(s, w);
    EXPECT_FALSE(validate_local_minimality(degree2).pass);
}
