#include "steiner/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "steiner/errors.hpp"

namespace steiner {

namespace {

void require_terminal_free(const Instance& inst, const Point& x, double s) {
    if (!(s > 0.0)) throw PreconditionError("ball radius must be positive");
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (distance(inst.terminal(i), x) < s - kTolGeom)
            throw PreconditionError("terminal " + std::to_string(i) + " lies inside the ball");
    }
}

// Outward unit direction at each terminal of a planar full tree.
std::vector<std::pair<Point, Point>> terminal_directions(const EmbeddedForest& tree) {
    if (tree.dim() != 2) throw PreconditionError("Maxwell formula needs a planar tree");
    std::vector<std::pair<Point, Point>> out;
    const auto adj = tree.adjacency();
    for (std::size_t i : tree.terminal_vertices()) {
        if (adj[i].size() != 1) throw PreconditionError("Maxwell formula needs a full tree (terminal degree 1)");
        const Point& p = tree.point(i);
        out.emplace_back(p, (p - tree.point(adj[i][0])).normalized());
    }
    return out;
}

}  // namespace

MaxwellResult maxwell_length(const EmbeddedForest& tree) {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [p, c] : terminal_directions(tree)) sum += std::conj(std::complex<double>(c[0], c[1])) * std::complex<double>(p[0], p[1]);
    return {sum.real(), std::abs(sum.imag())};
}

Point windrose_sum(const EmbeddedForest& tree) {
    Point sum = Point::zero(2);
    for (const auto& [p, c] : terminal_directions(tree)) sum += c;
    return sum;
}

double RegularityProfile::length_at(double r) const {
    if (r <= 0.0) return 0.0;
    return forest_length(clip_to_ball(clipped, Ball(center, std::min(r, scale))));
}

RegularityProfile ball_profile(const EmbeddedForest& tree, const Instance& inst, const Point& x, double s, int samples) {
    require_terminal_free(inst, x, s);
    if (samples < 1) throw PreconditionError("at least one sample radius is needed");
    RegularityProfile prof;
    prof.center = x;
    prof.scale = s;
    prof.clipped = clip_to_ball(tree, Ball(x, s));
    std::vector<double> radii{0.0};
    for (int k = 1; k <= samples; ++k) radii.push_back(s * k / samples);
    for (double r : critical_radii(tree, x)) {
        if (r > 0.0 && r < s) radii.push_back(r);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) {
        prof.radii.push_back(r);
        prof.lengths.push_back(prof.length_at(r));
        prof.crossings.push_back(r > 0.0 ? sphere_crossings(tree, x, r) : 0);
    }
    return prof;
}

double main_bound_value(int d, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("rho must lie in (0, 1)");
    return std::pow(64.0 * d / (1.0 - rho), d - 2);
}

double segment_bound_value(int d, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("rho must lie in (0, 1)");
    return std::pow(64.0 * d / (1.0 - rho), d - 1);
}

Verdict check_main_bound(const RegularityProfile& profile, int d, double rho) {
    Verdict v;
    v.measured = profile.length_at(rho * profile.scale) / profile.scale;
    if (d > 2) {
        v.name = "length in ball (dimension bound)";
        v.bound = main_bound_value(d, rho);
    } else {
        v.name = "length in disc (2 pi r)";
        if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("rho must lie in (0, 1)");
        v.bound = 2.0 * kPi * rho;
    }
    v.pass = v.measured <= v.bound + kTolLen;
    return v;
}

std::size_t count_segments_in_ball(const EmbeddedForest& tree, const Point& x, double r) {
    return maximal_segment_count(clip_to_ball(tree, Ball(x, r)));
}

Verdict check_segment_bound(const EmbeddedForest& tree, const Point& x, double s, double rho, int d) {
    Verdict v;
    v.name = "maximal segments in ball";
    v.measured = static_cast<double>(count_segments_in_ball(tree, x, rho * s));
    v.bound = segment_bound_value(d, rho);
    v.informational = d <= 2;
    v.pass = v.informational || v.measured <= v.bound;
    return v;
}

Verdict coarea_audit(const EmbeddedForest& tree, const Point& x) {
    Verdict v;
    v.name = "coarea inequality";
    v.measured = coarea_integral(tree, x);
    v.bound = forest_length(tree);
    v.pass = v.measured <= v.bound + kTolLen;
    return v;
}

Verdict coarea_window_audit(const EmbeddedForest& tree, const Point& x, double r0, double r1) {
    if (!(r0 >= 0.0 && r1 > r0)) throw PreconditionError("window must satisfy 0 <= r0 < r1");
    Verdict v;
    v.name = "coarea inequality on annulus";
    v.measured = coarea_integral_window(tree, x, r0, r1);
    const double inner = r0 > 0.0 ? forest_length(clip_to_ball(tree, Ball(x, r0))) : 0.0;
    v.bound = forest_length(clip_to_ball(tree, Ball(x, r1))) - inner;
    v.pass = v.measured <= v.bound + kTolLen;
    return v;
}

double Competitor::length() const {
    double total = forest_length(segments);
    for (const Circle& c : circles) total += 2.0 * kPi * c.radius;
    return total;
}

namespace {

struct Piece {
    enum Kind { Seg, Dot, Ring } kind;
    Point a;
    Point b;
    double radius = 0.0;
};

bool touches(const Piece& p, const Piece& q) {
    constexpr double tol = kTolGeom;
    if (p.kind > q.kind) return touches(q, p);
    if (p.kind == Piece::Seg && q.kind == Piece::Seg) return segment_distance(p.a, p.b, q.a, q.b) <= tol;
    if (p.kind == Piece::Seg && q.kind == Piece::Dot) return point_segment_distance(q.a, p.a, p.b) <= tol;
    if (p.kind == Piece::Seg && q.kind == Piece::Ring) {
        const double near = point_segment_distance(q.a, p.a, p.b);
        const double far = std::max(distance(q.a, p.a), distance(q.a, p.b));
        return near <= q.radius + tol && far >= q.radius - tol;
    }
    if (p.kind == Piece::Dot && q.kind == Piece::Dot) return distance(p.a, q.a) <= tol;
    if (p.kind == Piece::Dot && q.kind == Piece::Ring) return std::abs(distance(p.a, q.a) - q.radius) <= tol;
    const double dc = distance(p.a, q.a);
    return dc <= p.radius + q.radius + tol && dc >= std::abs(p.radius - q.radius) - tol;
}

// Parts of [a b] not covered by collinear segments of `removed`.
void subtract(const Point& a, const Point& b, const EmbeddedForest& removed, std::vector<Piece>& out) {
    const Point dir = b - a;
    const double l2 = dir.squared_norm();
    std::vector<std::pair<double, double>> cover;
    for (const Edge& e : removed.edges()) {
        const Point& c = removed.point(e.u);
        const Point& f = removed.point(e.v);
        auto off_line = [&](const Point& p) {
            const double t = (p - a).dot(dir) / l2;
            return distance(a + dir * t, p);
        };
        if (off_line(c) > kTolGeom || off_line(f) > kTolGeom) continue;
        double t0 = (c - a).dot(dir) / l2;
        double t1 = (f - a).dot(dir) / l2;
        if (t0 > t1) std::swap(t0, t1);
        t0 = std::max(t0, 0.0);
        t1 = std::min(t1, 1.0);
        if (t1 > t0) cover.emplace_back(t0, t1);
    }
    std::sort(cover.begin(), cover.end());
    const double len = std::sqrt(l2);
    double at = 0.0;
    auto emit = [&](double lo, double hi) {
        if ((hi - lo) * len > kTolGeom) out.push_back({Piece::Seg, a + dir * lo, a + dir * hi});
    };
    for (auto [lo, hi] : cover) {
        if (lo > at) emit(at, lo);
        at = std::max(at, hi);
    }
    if (at < 1.0) emit(at, 1.0);
}

}  // namespace

Verdict exchange_audit(const EmbeddedForest& tree, const Instance& inst, const EmbeddedForest& removed, const Competitor& added) {
    if (!added.circles.empty() && tree.dim() != 2) throw UnsupportedError("circle competitors are planar");
    std::vector<Piece> pieces;
    for (const Edge& e : tree.edges()) subtract(tree.point(e.u), tree.point(e.v), removed, pieces);
    for (const Point& p : inst.terminals()) pieces.push_back({Piece::Dot, p, p});
    for (const Edge& e : added.segments.edges()) pieces.push_back({Piece::Seg, added.segments.point(e.u), added.segments.point(e.v)});
    for (const Circle& c : added.circles) pieces.push_back({Piece::Ring, c.center, c.center, c.radius});

    std::vector<std::size_t> parent(pieces.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (find(i) != find(j) && touches(pieces[i], pieces[j])) parent[find(i)] = find(j);
        }
    }
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (find(i) != find(0)) throw PreconditionError("competitor does not reconnect the tree");
    }
    Verdict v;
    v.name = "competitor exchange";
    v.measured = forest_length(removed);
    v.bound = added.length();
    v.pass = v.measured <= v.bound + kTolLen;
    return v;
}

BranchedComponentsReport planar_branched_components_audit(const EmbeddedForest& tree, const Instance& inst, const Point& x,
                                                          double r) {
    if (tree.dim() != 2) throw PreconditionError("branched-component audit is planar");
    require_terminal_free(inst, x, r);
    const EmbeddedForest clip = clip_to_ball(tree, Ball(x, r));
    std::vector<std::size_t> comp;
    const std::size_t count = clip.components(comp);
    std::vector<double> length(count, 0.0);
    std::vector<bool> branched(count, false);
    std::vector<std::size_t> boundary(count, 0);
    for (const Edge& e : clip.edges()) length[comp[e.u]] += edge_length(clip, e);
    for (std::size_t v = 0; v < clip.vertex_count(); ++v) {
        if (clip.degree(v) >= 3) branched[comp[v]] = true;
        if (clip.degree(v) > 0 && distance(clip.point(v), x) >= r - kTolGeom) ++boundary[comp[v]];
    }
    BranchedComponentsReport rep;
    double floor_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < count; ++c) {
        if (!branched[c]) continue;
        ++rep.branched_components;
        rep.branched_length += length[c];
        rep.component_lengths.push_back(length[c]);
        rep.boundary_points.push_back(boundary[c]);
        if (boundary[c] >= 3) floor_ratio = std::min(floor_ratio, length[c] / r);
    }
    rep.count = {"branched components", static_cast<double>(rep.branched_components), 2.0, rep.branched_components <= 2};
    rep.length = {"branched length", rep.branched_length / r, 4.0 * kPi / 3.0 + 1.0,
                  rep.branched_length / r <= 4.0 * kPi / 3.0 + 1.0 + kTolLen};
    if (std::isinf(floor_ratio)) {
        rep.floor = {"full component floor", 0.0, kSqrt3, true, true};
    } else {
        rep.floor = {"full component floor", floor_ratio, kSqrt3, floor_ratio >= kSqrt3 - kTolLen};
    }
    return rep;
}

}  // namespace steiner
