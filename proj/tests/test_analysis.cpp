#include <gtest/gtest.h>

#include <cmath>

#include "steiner/analysis.hpp"
#include "steiner/errors.hpp"
#include "steiner/generators.hpp"
#include "steiner/random.hpp"
#include "steiner/solver.hpp"

using namespace steiner;

namespace {

EmbeddedForest segment_forest(const Point& a, const Point& b) {
    EmbeddedForest f(a.dim());
    f.add_edge(f.add_vertex(a, VertexKind::Terminal), f.add_vertex(b, VertexKind::Terminal));
    return f;
}

EmbeddedForest tripod(double arm, const Point& c = Point{0.0, 0.0}) {
    EmbeddedForest f(2);
    const auto s = f.add_vertex(c, VertexKind::Steiner);
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * kPi * k / 3.0 + 0.3;
        f.add_edge(s, f.add_vertex(c + Point{arm * std::cos(a), arm * std::sin(a)}, VertexKind::Terminal));
    }
    return f;
}

Instance rectangle_instance() {
    const double c = std::cos(kPi / 6.0);
    return Instance(2, {Point{c, 0.5}, Point{-c, 0.5}, Point{-c, -0.5}, Point{c, -0.5}});
}

Instance terminals_of(const EmbeddedForest& f) {
    std::vector<Point> pts;
    for (std::size_t v : f.terminal_vertices()) pts.push_back(f.point(v));
    return Instance(f.dim(), pts);
}

}  // namespace

TEST(Maxwell, Examples) {
    const MaxwellResult seg = maxwell_length(segment_forest(Point{0.0, 0.0}, Point{1.0, 0.0}));
    EXPECT_NEAR(seg.value, 1.0, 1e-15);
    EXPECT_NEAR(seg.residual, 0.0, 1e-15);
    const MaxwellResult tri = maxwell_length(tripod(1.0));
    EXPECT_NEAR(tri.value, 3.0, 1e-14);
    EXPECT_NEAR(tri.residual, 0.0, 1e-14);
    const SteinerSolution rect = solve(rectangle_instance());
    const MaxwellResult r = maxwell_length(rect.tree);
    EXPECT_NEAR(r.value, 2.0 * std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(r.residual, 0.0, 1e-12);
    EXPECT_LE(windrose_sum(rect.tree).norm(), 1e-12);
    EXPECT_LE(windrose_sum(tripod(1.0)).norm(), 1e-14);
    EXPECT_LE(windrose_sum(segment_forest(Point{0.0, 0.0}, Point{1.0, 0.0})).norm(), 1e-15);

    EXPECT_THROW(maxwell_length(segment_forest(Point{0.0, 0.0, 0.0}, Point{1.0, 0.0, 0.0})), PreconditionError);
}

// Full planar solver outputs satisfy the length formula and the zero direction sum, and the
// formula does not depend on where the origin sits.
TEST(Maxwell, RandomFullTrees) {
    Rng rng(401);
    int full = 0;
    for (std::uint64_t seed = 0; full < 60 && seed < 3000; ++seed) {
        const Instance inst = random_ball_instance(2, 3 + static_cast<int>(seed % 4), 4000 + seed);
        const SteinerSolution s = solve(inst);
        if (s.tree.count(VertexKind::Steiner) + 2 != inst.size()) continue;
        ++full;
        const MaxwellResult m = maxwell_length(s.tree);
        EXPECT_NEAR(m.value, s.length, 1e-9);
        EXPECT_LE(m.residual, 1e-9);
        EXPECT_LE(windrose_sum(s.tree).norm(), 1e-9);
        const Point shift = rng.in_ball(2, 10.0);
        std::vector<Point> moved;
        for (const Point& p : inst.terminals()) moved.push_back(p + shift);
        EXPECT_NEAR(maxwell_length(solve(Instance(2, moved)).tree).value, s.length, 1e-9);
    }
    EXPECT_EQ(full, 60);
}

TEST(Profile, RadialSegmentAndTripod) {
    const EmbeddedForest radial = segment_forest(Point{0.0, 0.0}, Point{2.0, 0.0});
    const RegularityProfile p = ball_profile(radial, Instance(2, {Point{3.0, 0.0}, Point{4.0, 0.0}}), Point{0.0, 0.0}, 1.0, 16);
    for (std::size_t i = 0; i < p.radii.size(); ++i) EXPECT_NEAR(p.lengths[i], p.radii[i], 1e-14);

    const EmbeddedForest tri = tripod(2.0);
    const RegularityProfile q = ball_profile(tri, terminals_of(tri), Point{0.0, 0.0}, 1.0, 16);
    for (std::size_t i = 0; i < q.radii.size(); ++i) {
        EXPECT_NEAR(q.lengths[i], 3.0 * q.radii[i], 1e-13);
        if (q.radii[i] > 0.0 && q.radii[i] < 1.0) {
            EXPECT_EQ(q.crossings[i], 3u);
        }
    }
}

// L_r = 2r until the branch radius 1/sqrt 3, then 2/sqrt 3 plus four arm pieces.
TEST(Profile, RectangleTree) {
    const Instance inst = rectangle_instance();
    const SteinerSolution s = solve(inst);
    const RegularityProfile p = ball_profile(s.tree, inst, Point{0.0, 0.0}, 1.0, 64);
    const double b = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
        const double r = p.radii[i];
        const double expected = r <= b ? 2.0 * r : 2.0 * b + 4.0 * (-b + std::sqrt(4.0 * r * r - 1.0)) / 2.0;
        EXPECT_NEAR(p.lengths[i], expected, 1e-12) << r;
        if (i > 0) {
            EXPECT_GE(p.lengths[i], p.lengths[i - 1]);
        }
    }
    EXPECT_NEAR(p.lengths.back(), 2.0 * std::sqrt(3.0), 1e-12);
    EXPECT_DOUBLE_EQ(p.lengths.front(), 0.0);
    EXPECT_THROW(ball_profile(s.tree, inst, Point{0.0, 0.0}, 1.1), PreconditionError);
}

TEST(Bounds, FormulaValues) {
    EXPECT_DOUBLE_EQ(main_bound_value(3, 0.5), 384.0);
    EXPECT_DOUBLE_EQ(main_bound_value(4, 0.5), 262144.0);
    EXPECT_DOUBLE_EQ(segment_bound_value(3, 0.5), 147456.0);
    EXPECT_THROW(main_bound_value(3, 1.0), PreconditionError);

    const Instance inst = rectangle_instance();
    const SteinerSolution s = solve(inst);
    const RegularityProfile p = ball_profile(s.tree, inst, Point{0.0, 0.0}, 1.0);
    const Verdict v = check_main_bound(p, 2, 0.9);
    EXPECT_NEAR(v.bound, 2.0 * kPi * 0.9, 1e-15);
    EXPECT_TRUE(v.pass);
    const Verdict unit = check_main_bound(p, 2, 0.999999);
    EXPECT_NEAR(unit.bound, 2.0 * kPi * 0.999999, 1e-15);
}

TEST(Bounds, SegmentCounts) {
    const EmbeddedForest chord = segment_forest(Point{-2.0, 0.3}, Point{2.0, 0.3});
    EXPECT_EQ(count_segments_in_ball(chord, Point{0.0, 0.0}, 1.0), 1u);
    EXPECT_EQ(count_segments_in_ball(tripod(2.0), Point{0.0, 0.0}, 1.0), 3u);
    const Verdict planar = check_segment_bound(tripod(2.0), Point{0.0, 0.0}, 1.0, 0.5, 2);
    EXPECT_TRUE(planar.informational);
}

TEST(Coarea, Audits) {
    const Point o{0.0, 0.0};
    const Verdict radial = coarea_audit(segment_forest(Point{-0.5, 0.0}, Point{0.5, 0.0}), o);
    EXPECT_NEAR(radial.measured, radial.bound, 1e-15);
    EXPECT_TRUE(radial.pass);
    const Verdict chord = coarea_audit(segment_forest(Point{-0.8, 0.6}, Point{0.8, 0.6}), o);
    EXPECT_NEAR(chord.measured, 0.8, 1e-15);
    EXPECT_NEAR(chord.bound, 1.6, 1e-15);
    EXPECT_TRUE(coarea_audit(EmbeddedForest(2), o).pass);
    EXPECT_TRUE(coarea_window_audit(tripod(2.0), o, 0.5, 1.5).pass);
}

TEST(Exchange, CircleCompetitor) {
    const Instance inst = rectangle_instance();
    const SteinerSolution s = solve(inst);
    const Point o{0.0, 0.0};
    for (double r : {0.3, 0.6, 0.9}) {
        Competitor circle;
        circle.circles.push_back({o, r});
        const Verdict v = exchange_audit(s.tree, inst, clip_to_ball(s.tree, Ball(o, r)), circle);
        EXPECT_TRUE(v.pass) << r;
        EXPECT_LE(v.measured, 2.0 * kPi * r + 1e-12);
    }
    // Nothing removed, nothing added.
    EXPECT_TRUE(exchange_audit(s.tree, inst, EmbeddedForest(2), Competitor{}).pass);
    // Identity competitor: remove one edge and add it back.
    const Edge e = s.tree.edges().front();
    EmbeddedForest one(2);
    one.add_edge(one.add_vertex(s.tree.point(e.u), VertexKind::Steiner), one.add_vertex(s.tree.point(e.v), VertexKind::Steiner));
    Competitor same;
    same.segments = one;
    const Verdict id = exchange_audit(s.tree, inst, one, same);
    EXPECT_NEAR(id.measured, id.bound, 1e-15);
    EXPECT_TRUE(id.pass);
    // Removing an edge without replacement disconnects the terminals.
    EXPECT_THROW(exchange_audit(s.tree, inst, one, Competitor{}), PreconditionError);
}

TEST(Branched, Examples) {
    const EmbeddedForest tri = tripod(1.0);
    const Instance inst = terminals_of(tri);
    const BranchedComponentsReport r = planar_branched_components_audit(tri, inst, Point{0.0, 0.0}, 1.0);
    EXPECT_EQ(r.branched_components, 1u);
    EXPECT_NEAR(r.branched_length, 3.0, 1e-14);
    EXPECT_TRUE(r.pass());
    EXPECT_NEAR(r.floor.measured, 3.0, 1e-14);

    const EmbeddedForest chord = segment_forest(Point{-2.0, 0.3}, Point{2.0, 0.3});
    const BranchedComponentsReport c = planar_branched_components_audit(chord, terminals_of(chord), Point{0.0, 0.0}, 1.0);
    EXPECT_EQ(c.branched_components, 0u);
    EXPECT_TRUE(c.floor.informational);
}

// Random solver outputs and random terminal-free balls.
TEST(Regularity, RandomAuditsPass) {
    Rng rng(409);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const Instance inst = random_ball_instance(d, 3 + trial % 5, 7000 + static_cast<std::uint64_t>(trial));
        const SteinerSolution s = solve(inst);
        const Point x = rng.in_ball(d);
        double nearest = std::numeric_limits<double>::infinity();
        for (const Point& p : inst.terminals()) nearest = std::min(nearest, distance(p, x));
        const double scale = nearest * rng.uniform(0.2, 1.0);
        const double rho = rng.uniform(0.05, 0.95);
        const RegularityProfile p = ball_profile(s.tree, inst, x, scale, 16);
        EXPECT_TRUE(check_main_bound(p, static_cast<int>(d), rho).pass);
        EXPECT_TRUE(check_segment_bound(s.tree, x, scale, rho, static_cast<int>(d)).pass);
        EXPECT_TRUE(coarea_audit(s.tree, x).pass);
        EXPECT_TRUE(coarea_window_audit(s.tree, x, 0.0, scale).pass);
        if (d == 2) {
            EXPECT_TRUE(planar_branched_components_audit(s.tree, inst, x, scale).pass()) << trial;
        }
    }
}
