#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "steiner/geometry.hpp"

namespace steiner {

enum class VertexKind {
    Terminal,  // a point of the terminal set
    Steiner,   // a branching point that is not a terminal
    Boundary,  // introduced by clipping where an edge crosses a sphere
};

struct Edge {
    std::size_t u;
    std::size_t v;
};

/// Finite union of straight segments with indexed vertices.
///
/// Vertex coordinates are pairwise distinct (up to kTolGeom); terminals carry the index of the
/// instance point they represent in `label`.
class EmbeddedForest {
public:
    explicit EmbeddedForest(std::size_t dim = 2) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t vertex_count() const noexcept { return points_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Point& point(std::size_t i) const { return points_.at(i); }
    VertexKind kind(std::size_t i) const { return kinds_.at(i); }
    int label(std::size_t i) const { return labels_.at(i); }
    bool is_terminal(std::size_t i) const { return kind(i) == VertexKind::Terminal; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Throws PreconditionError if p coincides with an existing vertex.
    std::size_t add_vertex(const Point& p, VertexKind kind, int label = -1);
    /// Returns the existing vertex within kTolGeom of p, or adds a new one.
    std::size_t find_or_add_vertex(const Point& p, VertexKind kind, int label = -1);
    std::optional<std::size_t> find_vertex(const Point& p, double tol = kTolGeom) const;
    /// Skips the coincidence check; only for degenerate minimizers whose branch points
    /// legitimately sit on other vertices.
    std::size_t add_vertex_unchecked(const Point& p, VertexKind kind, int label = -1);

    /// Throws on self-loops, unknown vertices, duplicate edges.
    void add_edge(std::size_t u, std::size_t v);

    void set_point(std::size_t i, const Point& p);
    void set_kind(std::size_t i, VertexKind k) { kinds_.at(i) = k; }

    std::size_t degree(std::size_t i) const;
    std::vector<std::vector<std::size_t>> adjacency() const;

    /// Component id per vertex; returns the number of components.
    std::size_t components(std::vector<std::size_t>& comp) const;
    bool is_acyclic() const;
    bool is_connected() const;
    bool is_tree() const { return is_acyclic() && is_connected(); }

    std::size_t count(VertexKind k) const;
    std::vector<std::size_t> terminal_vertices() const;

private:
    std::size_t dim_;
    std::vector<Point> points_;
    std::vector<VertexKind> kinds_;
    std::vector<int> labels_;
    std::vector<Edge> edges_;
};

double edge_length(const EmbeddedForest& f, const Edge& e);

/// Total length of all segments.
double forest_length(const EmbeddedForest& f);

/// Intersection of the forest with the closed ball; crossing points become Boundary vertices.
EmbeddedForest clip_to_ball(const EmbeddedForest& f, const Ball& ball);

/// Number of distinct forest points at distance r from x (tolerance band kTolGeom).
std::size_t sphere_crossings(const EmbeddedForest& f, const Point& x, double r);

/// Exact value of the integral over r in [0, inf) of sphere_crossings(f, x, r).
double coarea_integral(const EmbeddedForest& f, const Point& x);

/// Same integral restricted to r in [r0, r1].
double coarea_integral_window(const EmbeddedForest& f, const Point& x, double r0, double r1);

/// Radii at which the crossing count may change: vertex distances and interior perpendicular
/// feet. Sorted, deduplicated.
std::vector<double> critical_radii(const EmbeddedForest& f, const Point& x);

/// Number of maximal straight segments: edges chained through degree-2 vertices whose two
/// edges are collinear within `angle_tol` radians count as one.
std::size_t maximal_segment_count(const EmbeddedForest& f, double angle_tol = 1e-9);

}  // namespace steiner
