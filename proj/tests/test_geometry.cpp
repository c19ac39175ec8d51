#include <gtest/gtest.h>

#include <cmath>

#include "steiner/errors.hpp"
#include "steiner/forest.hpp"
#include "steiner/geometry.hpp"
#include "steiner/instance.hpp"
#include "steiner/random.hpp"

using namespace steiner;

namespace {

EmbeddedForest segment_forest(const Point& a, const Point& b) {
    EmbeddedForest f(a.dim());
    const auto u = f.add_vertex(a, VertexKind::Terminal);
    const auto v = f.add_vertex(b, VertexKind::Terminal);
    f.add_edge(u, v);
    return f;
}

EmbeddedForest tripod(double arm) {
    EmbeddedForest f(2);
    const auto c = f.add_vertex(Point{0.0, 0.0}, VertexKind::Steiner);
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * kPi * k / 3.0;
        f.add_edge(c, f.add_vertex(Point{arm * std::cos(a), arm * std::sin(a)}, VertexKind::Terminal));
    }
    return f;
}

EmbeddedForest random_forest(Rng& rng, std::size_t d, int vertices) {
    EmbeddedForest f(d);
    f.add_vertex(rng.in_ball(d, 2.0), VertexKind::Terminal);
    for (int i = 1; i < vertices; ++i) {
        const auto v = f.add_vertex(rng.in_ball(d, 2.0), VertexKind::Terminal);
        f.add_edge(static_cast<std::size_t>(rng.below(v)), v);
    }
    return f;
}

}  // namespace

TEST(Geometry, Distance) {
    EXPECT_DOUBLE_EQ(distance(Point{0.0, 0.0}, Point{3.0, 4.0}), 5.0);
    EXPECT_DOUBLE_EQ(distance(Point{1.0, 2.0}, Point{1.0, 2.0}), 0.0);
    EXPECT_NEAR(distance(Point{1.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}), std::sqrt(2.0), 1e-15);
    EXPECT_THROW(distance(Point{0.0, 0.0}, Point{0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Geometry, AngleAt) {
    const Point o{0.0, 0.0};
    EXPECT_NEAR(angle_at(o, Point{1.0, 0.0}, Point{-0.5, std::sqrt(3.0) / 2.0}), 2.0 * kPi / 3.0, 1e-15);
    EXPECT_NEAR(angle_at(o, Point{1.0, 0.0}, Point{2.0, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(angle_at(o, Point{1.0, 0.0}, Point{-1.0, 0.0}), kPi, 1e-15);
    EXPECT_THROW(angle_at(o, o, Point{1.0, 0.0}), std::invalid_argument);
}

TEST(Geometry, AngleAtSymmetricAndRigid) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Point v = rng.in_ball(3), a = rng.in_ball(3), b = rng.in_ball(3);
        const double ang = angle_at(v, a, b);
        EXPECT_NEAR(ang, angle_at(v, b, a), 1e-12);
        // Rotation about the z axis plus a translation.
        const double t = rng.uniform(0.0, 2.0 * kPi);
        const Point shift = rng.in_ball(3, 5.0);
        auto move = [&](const Point& p) { return Point{std::cos(t) * p[0] - std::sin(t) * p[1], std::sin(t) * p[0] + std::cos(t) * p[1], p[2]} + shift; };
        EXPECT_NEAR(ang, angle_at(move(v), move(a), move(b)), 1e-9);
    }
}

TEST(Geometry, PointRejectsNonFinite) {
    EXPECT_THROW(Point({std::nan(""), 0.0}), std::invalid_argument);
}

TEST(Instance, Validation) {
    EXPECT_THROW(Instance(2, {Point{0.0, 0.0}}), PreconditionError);
    EXPECT_THROW(Instance(2, {Point{0.0, 0.0}, Point{0.0, 0.0}}), PreconditionError);
    EXPECT_THROW(Instance(2, {Point{0.0, 0.0}, Point{1.0, 0.0, 0.0}}), PreconditionError);
    EXPECT_NEAR(Instance(2, {Point{0.0, 0.0}, Point{3.0, 4.0}, Point{1.0, 1.0}}).diameter(), 5.0, 1e-15);
}

TEST(Forest, Length) {
    EXPECT_DOUBLE_EQ(forest_length(segment_forest(Point{0.0, 0.0}, Point{1.0, 0.0})), 1.0);
    EXPECT_DOUBLE_EQ(forest_length(EmbeddedForest(2)), 0.0);

    EmbeddedForest rect(2);
    const double c = std::cos(kPi / 6.0), h = 0.5;
    const auto ur = rect.add_vertex(Point{c, h}, VertexKind::Terminal);
    const auto ul = rect.add_vertex(Point{-c, h}, VertexKind::Terminal);
    const auto ll = rect.add_vertex(Point{-c, -h}, VertexKind::Terminal);
    const auto lr = rect.add_vertex(Point{c, -h}, VertexKind::Terminal);
    const auto right = rect.add_vertex(Point{1.0 / std::sqrt(3.0), 0.0}, VertexKind::Steiner);
    const auto left = rect.add_vertex(Point{-1.0 / std::sqrt(3.0), 0.0}, VertexKind::Steiner);
    rect.add_edge(ur, right);
    rect.add_edge(lr, right);
    rect.add_edge(ul, left);
    rect.add_edge(ll, left);
    rect.add_edge(left, right);
    EXPECT_NEAR(forest_length(rect), 2.0 * std::sqrt(3.0), 1e-12);
    EXPECT_TRUE(rect.is_tree());
}

TEST(Forest, Structure) {
    EmbeddedForest f(2);
    const auto a = f.add_vertex(Point{0.0, 0.0}, VertexKind::Terminal);
    const auto b = f.add_vertex(Point{1.0, 0.0}, VertexKind::Terminal);
    const auto c = f.add_vertex(Point{0.0, 1.0}, VertexKind::Terminal);
    EXPECT_THROW(f.add_vertex(Point{0.0, 1e-12}, VertexKind::Terminal), PreconditionError);
    EXPECT_EQ(f.find_or_add_vertex(Point{1.0, 1e-12}, VertexKind::Terminal), b);
    f.add_edge(a, b);
    EXPECT_FALSE(f.is_connected());
    f.add_edge(b, c);
    EXPECT_TRUE(f.is_tree());
    f.add_edge(c, a);
    EXPECT_FALSE(f.is_acyclic());
    EXPECT_THROW(f.add_edge(a, a), PreconditionError);
}

TEST(Clip, Examples) {
    const Ball unit(Point{0.0, 0.0}, 1.0);
    const EmbeddedForest through = clip_to_ball(segment_forest(Point{-2.0, 0.0}, Point{2.0, 0.0}), unit);
    ASSERT_EQ(through.edge_count(), 1u);
    EXPECT_NEAR(forest_length(through), 2.0, 1e-15);
    EXPECT_EQ(through.count(VertexKind::Boundary), 2u);

    EXPECT_EQ(clip_to_ball(segment_forest(Point{2.0, 2.0}, Point{3.0, 3.0}), unit).edge_count(), 0u);

    const EmbeddedForest tri = clip_to_ball(tripod(2.0), unit);
    EXPECT_EQ(tri.edge_count(), 3u);
    EXPECT_NEAR(forest_length(tri), 3.0, 1e-14);
}

TEST(Clip, NeverIncreasesLength) {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 2 + trial % 3;
        const EmbeddedForest f = random_forest(rng, d, 2 + static_cast<int>(rng.below(8)));
        const Ball b(rng.in_ball(d), rng.uniform(0.05, 2.5));
        const EmbeddedForest c = clip_to_ball(f, b);
        EXPECT_LE(forest_length(c), forest_length(f) + kTolLen);
        for (const Point& p : c.points()) EXPECT_LE(distance(p, b.center()), b.radius() + kTolGeom);
    }
}

TEST(SphereCrossings, Examples) {
    const EmbeddedForest diam = segment_forest(Point{-1.0, 0.0}, Point{1.0, 0.0});
    const Point o{0.0, 0.0};
    EXPECT_EQ(sphere_crossings(diam, o, 0.5), 2u);
    EXPECT_EQ(sphere_crossings(diam, o, 2.0), 0u);
    const EmbeddedForest chord = segment_forest(Point{-0.8, 0.6}, Point{0.8, 0.6});
    EXPECT_EQ(sphere_crossings(chord, o, 0.8), 2u);
    // Tangency counts once; a shared vertex on the sphere counts once.
    EXPECT_EQ(sphere_crossings(chord, o, 0.6), 1u);
    EXPECT_EQ(sphere_crossings(tripod(1.0), o, 1.0), 3u);
    EXPECT_EQ(sphere_crossings(tripod(1.0), Point{1.0, 0.0}, 1.0), 1u);
}

TEST(Coarea, Examples) {
    const Point o{0.0, 0.0};
    EXPECT_NEAR(coarea_integral(segment_forest(Point{-0.5, 0.0}, Point{0.5, 0.0}), o), 1.0, 1e-15);
    EXPECT_NEAR(coarea_integral(segment_forest(Point{-0.8, 0.6}, Point{0.8, 0.6}), o), 0.8, 1e-15);
    EXPECT_DOUBLE_EQ(coarea_integral(EmbeddedForest(2), o), 0.0);
}

// Midpoint quadrature of t_r against the closed form.
TEST(Coarea, MatchesQuadratureOfCrossings) {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const EmbeddedForest f = random_forest(rng, d, 2 + static_cast<int>(rng.below(5)));
        const Point x = rng.in_ball(d);
        double rmax = 0.0;
        for (const Point& p : f.points()) rmax = std::max(rmax, distance(p, x));
        const int steps = 20000;
        double quad = 0.0;
        for (int k = 0; k < steps; ++k) quad += static_cast<double>(sphere_crossings(f, x, (k + 0.5) * rmax / steps));
        quad *= rmax / steps;
        EXPECT_NEAR(coarea_integral(f, x), quad, 2e-3 * (1.0 + quad));
    }
}

TEST(Coarea, BoundedByLengthWithRadialEquality) {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 2 + trial % 3;
        const EmbeddedForest f = random_forest(rng, d, 2 + static_cast<int>(rng.below(8)));
        const Point x = rng.in_ball(d, 3.0);
        EXPECT_LE(coarea_integral(f, x), forest_length(f) + kTolLen);
    }
    // A star of segments on lines through x attains equality.
    for (int trial = 0; trial < 50; ++trial) {
        const Point x = rng.in_ball(3);
        EmbeddedForest star(3);
        for (int k = 0; k < 4; ++k) {
            const Point dir = rng.direction(3);
            const double t0 = rng.uniform(-1.0, 1.0), t1 = rng.uniform(-1.0, 1.0);
            if (std::abs(t1 - t0) < 1e-3) continue;
            const auto u = star.add_vertex_unchecked(x + dir * t0, VertexKind::Terminal);
            const auto v = star.add_vertex_unchecked(x + dir * t1, VertexKind::Terminal);
            star.add_edge(u, v);
        }
        EXPECT_NEAR(coarea_integral(star, x), forest_length(star), 1e-12);
    }
}

TEST(Coarea, WindowSumsToTotal) {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const EmbeddedForest f = random_forest(rng, 2, 6);
        const Point x = rng.in_ball(2);
        const double r = rng.uniform(0.1, 2.0);
        EXPECT_NEAR(coarea_integral_window(f, x, 0.0, r) + coarea_integral_window(f, x, r, 100.0), coarea_integral(f, x), 1e-12);
    }
}

TEST(Hull, Examples) {
    const std::vector<Point> square{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}};
    EXPECT_TRUE(convex_hull_contains(square, Point{0.5, 0.5}));
    EXPECT_FALSE(convex_hull_contains(square, Point{1.5, 0.5}));
    EXPECT_NEAR(hull_distance(square, Point{1.5, 0.5}), 0.5, 1e-12);
    const std::vector<Point> single{Point{0.0, 0.0}};
    EXPECT_TRUE(convex_hull_contains(single, Point{0.0, 0.0}));
    EXPECT_FALSE(convex_hull_contains(single, Point{0.1, 0.0}));
}

// Random points against a triangle, decided by barycentric signs.
TEST(Hull, AgreesWithBarycentricTest) {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const Point a = rng.in_ball(2), b = rng.in_ball(2), c = rng.in_ball(2), q = rng.in_ball(2, 1.2);
        auto cross = [](const Point& o, const Point& p, const Point& r) { return (p[0] - o[0]) * (r[1] - o[1]) - (p[1] - o[1]) * (r[0] - o[0]); };
        const double s1 = cross(a, b, q), s2 = cross(b, c, q), s3 = cross(c, a, q);
        const bool inside = (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
        const double margin = std::min({std::abs(s1) / distance(a, b), std::abs(s2) / distance(b, c), std::abs(s3) / distance(c, a)});
        if (margin < 1e-6) continue;
        EXPECT_EQ(convex_hull_contains(std::vector<Point>{a, b, c}, q), inside);
    }
}

TEST(Segments, RootsAndDistances) {
    const auto roots = segment_sphere_roots(Point{-2.0, 0.0}, Point{2.0, 0.0}, Point{0.0, 0.0}, 1.0);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(roots[0], 0.25, 1e-15);
    EXPECT_NEAR(roots[1], 0.75, 1e-15);
    EXPECT_NEAR(point_segment_distance(Point{0.0, 1.0}, Point{-1.0, 0.0}, Point{1.0, 0.0}), 1.0, 1e-15);
    EXPECT_NEAR(segment_distance(Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 1.0}, Point{0.5, 2.0}), 1.0, 1e-15);
    EXPECT_NEAR(segment_distance(Point{0.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}, Point{1.0, 0.0}), 0.0, 1e-15);
}

TEST(Segments, MaximalSegmentCount) {
    EmbeddedForest path(2);
    const auto a = path.add_vertex(Point{0.0, 0.0}, VertexKind::Terminal);
    const auto b = path.add_vertex(Point{1.0, 0.0}, VertexKind::Steiner);
    const auto c = path.add_vertex(Point{2.0, 0.0}, VertexKind::Terminal);
    path.add_edge(a, b);
    path.add_edge(b, c);
    EXPECT_EQ(maximal_segment_count(path), 1u);
    EXPECT_EQ(maximal_segment_count(tripod(1.0)), 3u);
}
