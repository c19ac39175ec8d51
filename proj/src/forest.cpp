#include "steiner/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {

std::optional<std::size_t> EmbeddedForest::find_vertex(const Point& p, double tol) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (distance(points_[i], p) <= tol) return i;
    }
    return std::nullopt;
}

std::size_t EmbeddedForest::add_vertex(const Point& p, VertexKind kind, int label) {
    if (p.dim() != dim_) throw PreconditionError("vertex dimension does not match forest");
    if (find_vertex(p)) throw PreconditionError("repeated vertex coordinates");
    points_.push_back(p);
    kinds_.push_back(kind);
    labels_.push_back(label);
    return points_.size() - 1;
}

std::size_t EmbeddedForest::add_vertex_unchecked(const Point& p, VertexKind kind, int label) {
    if (p.dim() != dim_) throw PreconditionError("vertex dimension does not match forest");
    points_.push_back(p);
    kinds_.push_back(kind);
    labels_.push_back(label);
    return points_.size() - 1;
}

std::size_t EmbeddedForest::find_or_add_vertex(const Point& p, VertexKind kind, int label) {
    if (auto i = find_vertex(p)) return *i;
    return add_vertex(p, kind, label);
}

void EmbeddedForest::add_edge(std::size_t u, std::size_t v) {
    if (u >= points_.size() || v >= points_.size()) throw PreconditionError("edge references unknown vertex");
    if (u == v) throw PreconditionError("self-loop edge");
    for (const Edge& e : edges_) {
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) throw PreconditionError("duplicate edge");
    }
    edges_.push_back({u, v});
}

void EmbeddedForest::set_point(std::size_t i, const Point& p) {
    if (p.dim() != dim_) throw PreconditionError("vertex dimension does not match forest");
    points_.at(i) = p;
}

std::size_t EmbeddedForest::degree(std::size_t i) const {
    std::size_t d = 0;
    for (const Edge& e : edges_) d += (e.u == i) + (e.v == i);
    return d;
}

std::vector<std::vector<std::size_t>> EmbeddedForest::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(points_.size());
    for (const Edge& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

std::size_t EmbeddedForest::components(std::vector<std::size_t>& comp) const {
    std::vector<std::size_t> parent(points_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : edges_) parent[find(e.u)] = find(e.v);
    comp.assign(points_.size(), 0);
    std::vector<std::size_t> id(points_.size(), static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const std::size_t r = find(i);
        if (id[r] == static_cast<std::size_t>(-1)) id[r] = next++;
        comp[i] = id[r];
    }
    return next;
}

bool EmbeddedForest::is_acyclic() const {
    std::vector<std::size_t> comp;
    const std::size_t c = components(comp);
    return edges_.size() + c == points_.size();
}

bool EmbeddedForest::is_connected() const {
    std::vector<std::size_t> comp;
    return components(comp) <= 1;
}

std::size_t EmbeddedForest::count(VertexKind k) const {
    return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), k));
}

std::vector<std::size_t> EmbeddedForest::terminal_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
        if (kinds_[i] == VertexKind::Terminal) out.push_back(i);
    }
    return out;
}

double edge_length(const EmbeddedForest& f, const Edge& e) { return distance(f.point(e.u), f.point(e.v)); }

double forest_length(const EmbeddedForest& f) {
    double total = 0.0;
    for (const Edge& e : f.edges()) total += edge_length(f, e);
    return total;
}

EmbeddedForest clip_to_ball(const EmbeddedForest& f, const Ball& ball) {
    EmbeddedForest out(f.dim());
    std::vector<std::optional<std::size_t>> mapped(f.vertex_count());
    auto keep_vertex = [&](std::size_t i) {
        if (!mapped[i]) mapped[i] = out.find_or_add_vertex(f.point(i), f.kind(i), f.label(i));
        return *mapped[i];
    };
    const double r = ball.radius();
    for (std::size_t i = 0; i < f.vertex_count(); ++i) {
        if (f.degree(i) == 0 && distance(f.point(i), ball.center()) <= r) keep_vertex(i);
    }
    for (const Edge& e : f.edges()) {
        const Point& a = f.point(e.u);
        const Point& b = f.point(e.v);
        double t0 = 0.0;
        double t1 = 0.0;
        if (!segment_ball_interval(a, b, ball.center(), r, t0, t1)) continue;
        const Point dir = b - a;
        const std::size_t u = (t0 <= 0.0) ? keep_vertex(e.u)
                                          : out.find_or_add_vertex(a + dir * t0, VertexKind::Boundary);
        const std::size_t v = (t1 >= 1.0) ? keep_vertex(e.v)
                                          : out.find_or_add_vertex(a + dir * t1, VertexKind::Boundary);
        if (u != v) out.add_edge(u, v);
    }
    return out;
}

std::size_t sphere_crossings(const EmbeddedForest& f, const Point& x, double r) {
    if (!(r > 0.0)) throw PreconditionError("sphere radius must be positive");
    std::vector<Point> hits;
    auto record = [&](const Point& p) {
        for (const Point& h : hits) {
            if (distance(h, p) <= kTolGeom) return;
        }
        hits.push_back(p);
    };
    for (std::size_t i = 0; i < f.vertex_count(); ++i) {
        if (std::abs(distance(f.point(i), x) - r) <= kTolGeom) record(f.point(i));
    }
    for (const Edge& e : f.edges()) {
        const Point& a = f.point(e.u);
        const Point& b = f.point(e.v);
        for (double t : segment_sphere_roots(a, b, x, r)) {
            const Point p = a + (b - a) * t;
            // Roots clamped onto an endpoint that is not itself on the sphere are spurious.
            if (std::abs(distance(p, x) - r) <= kTolGeom) record(p);
        }
    }
    return hits.size();
}

namespace {

struct MonotonePiece {
    double lo;
    double hi;
};

// The distance from x along a segment is convex in the parameter, so it splits into at most
// two monotone pieces at the foot of the perpendicular.
void monotone_pieces(const Point& a, const Point& b, const Point& x, std::vector<MonotonePiece>& out) {
    const Point dir = b - a;
    const double l2 = dir.squared_norm();
    const double da = distance(a, x);
    const double db = distance(b, x);
    const double t = (x - a).dot(dir) / l2;
    if (t > 0.0 && t < 1.0) {
        const double dmin = distance(a + dir * t, x);
        out.push_back({dmin, da});
        out.push_back({dmin, db});
    } else {
        out.push_back({std::min(da, db), std::max(da, db)});
    }
}

}  // namespace

double coarea_integral_window(const EmbeddedForest& f, const Point& x, double r0, double r1) {
    std::vector<MonotonePiece> pieces;
    for (const Edge& e : f.edges()) monotone_pieces(f.point(e.u), f.point(e.v), x, pieces);
    double total = 0.0;
    for (const MonotonePiece& p : pieces) {
        const double lo = std::max(p.lo, r0);
        const double hi = std::min(p.hi, r1);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

double coarea_integral(const EmbeddedForest& f, const Point& x) {
    return coarea_integral_window(f, x, 0.0, std::numeric_limits<double>::infinity());
}

std::vector<double> critical_radii(const EmbeddedForest& f, const Point& x) {
    std::vector<double> radii;
    for (const Point& p : f.points()) radii.push_back(distance(p, x));
    for (const Edge& e : f.edges()) {
        const Point& a = f.point(e.u);
        const Point dir = f.point(e.v) - a;
        const double t = (x - a).dot(dir) / dir.squared_norm();
        if (t > 0.0 && t < 1.0) radii.push_back(distance(a + dir * t, x));
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end(),
                            [](double p, double q) { return std::abs(p - q) <= 1e-15; }),
                radii.end());
    return radii;
}

std::size_t maximal_segment_count(const EmbeddedForest& f, double angle_tol) {
    const auto adj = f.adjacency();
    std::size_t merges = 0;
    for (std::size_t i = 0; i < f.vertex_count(); ++i) {
        if (adj[i].size() != 2) continue;
        const double ang = angle_at(f.point(i), f.point(adj[i][0]), f.point(adj[i][1]));
        if (kPi - ang < angle_tol) ++merges;
    }
    return f.edge_count() - merges;
}

}  // namespace steiner
