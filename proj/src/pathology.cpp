#include "steiner/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "steiner/analysis.hpp"
#include "steiner/errors.hpp"
#include "steiner/instance.hpp"
#include "steiner/opt.hpp"
#include "steiner/solver.hpp"

namespace steiner {

namespace {

constexpr double kDirectionTol = 1e-7;

Point rotate(const Point& p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Point{c * p[0] - s * p[1], s * p[0] + c * p[1]};
}

double cross2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

// Distance of the edge direction from the nearest of 0, pi/3, 2pi/3 (mod pi).
double direction_deviation(const Point& a, const Point& b) {
    double ang = std::atan2(b[1] - a[1], b[0] - a[0]);
    ang = std::fmod(ang + 2.0 * kPi, kPi / 3.0);
    return std::min(ang, kPi / 3.0 - ang);
}

EmbeddedForest build_tree(const PathologyStage& s) {
    EmbeddedForest f(2);
    for (std::size_t i = 0; i < s.terminals.size(); ++i) f.add_vertex(s.terminals[i], VertexKind::Terminal, static_cast<int>(i));
    for (const Point& p : s.branch_points) f.add_vertex(p, VertexKind::Steiner);
    for (auto [a, b] : s.topology.edges) f.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return f;
}

// Neighbor of a terminal in the topology.
int neighbor_of(const TopologyGraph& g, int v) {
    for (auto [a, b] : g.edges) {
        if (a == v) return b;
        if (b == v) return a;
    }
    throw std::logic_error("terminal without an edge");
}

void finish(PathologyStage& s) {
    s.tree = build_tree(s);
    s.length = forest_length(s.tree);
    s.max_direction_deviation = 0.0;
    for (const Edge& e : s.tree.edges())
        s.max_direction_deviation = std::max(s.max_direction_deviation, direction_deviation(s.tree.point(e.u), s.tree.point(e.v)));
}

}  // namespace

PathologyStage build_stage0() {
    PathologyStage s;
    const double c = std::cos(kPi / 6.0);
    const double h = std::sin(kPi / 6.0);
    s.terminals = {Point{c, h}, Point{-c, h}, Point{-c, -h}, Point{c, -h}};
    s.branch_points = {Point{1.0 / kSqrt3, 0.0}, Point{-1.0 / kSqrt3, 0.0}};
    s.topology.terminals = 4;
    s.topology.vertices = 6;
    s.topology.edges = {{0, 4}, {3, 4}, {1, 5}, {2, 5}, {4, 5}};
    s.terminal_stage.assign(4, 0);
    s.branch_stage.assign(2, 0);
    s.shifted_corners = {s.terminals[0], s.terminals[1], s.terminals[2], s.terminals[3]};
    finish(s);
    return s;
}

PathologyStage advance(const PathologyStage& prev, double epsilon) {
    const int j = prev.j + 1;
    if (!(epsilon > 0.0)) throw PreconditionError("shift must be positive");
    if (epsilon > 0.1) throw PreconditionError("shift must be small (at most 0.1)");
    const int n = static_cast<int>(prev.terminals.size());
    const int m = static_cast<int>(prev.branch_points.size());
    auto pos = [&](const std::vector<Point>& branch, int v) -> const Point& {
        return v < n ? prev.terminals[static_cast<std::size_t>(v)] : branch[static_cast<std::size_t>(v - n)];
    };

    PathologyStage s;
    s.j = j;
    s.epsilon = epsilon;
    s.gap_condition = prev.delta > 0.0 && epsilon < prev.delta * prev.delta / 64.0;

    // Shift each corner along the circle into the 2pi/3 angle between its edge and the circle.
    std::vector<Point> shifted_terms = prev.terminals;
    std::complex<double> witness{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const Point& x = prev.terminals[static_cast<std::size_t>(i)];
        const Point& y = pos(prev.branch_points, neighbor_of(prev.topology, i));
        const Point tangent{-x[1], x[0]};
        const int orient = tangent.dot(y - x) < 0.0 ? 1 : -1;
        const Point xs = rotate(x, orient * epsilon);
        s.shift_orientation[static_cast<std::size_t>(i)] = orient;
        s.shifted_corners[static_cast<std::size_t>(i)] = xs;
        shifted_terms[static_cast<std::size_t>(i)] = xs;
        const Point c = (x - y).normalized();
        witness += std::conj(std::complex<double>(c[0], c[1])) * std::complex<double>(xs[0] - x[0], xs[1] - x[1]);
    }
    s.maxwell_witness = std::abs(witness.imag());

    // St': same topology on the shifted terminals, warm-started exact minimization.
    const Instance shifted(2, shifted_terms);
    const FullTopology topo(prev.topology);
    OptOptions opt;
    opt.smoothing = false;
    opt.merge_tol = 1e-15;
    opt.tol = 1e-16;
    opt.initial = prev.branch_points;
    const FixedTopologyResult moved = minimize_topology(shifted, topo, opt);
    if (!moved.merged.empty()) throw StageAbort(j, "shifted tree degenerated");
    const std::vector<Point>& branch = moved.branch_points;
    for (auto [a, b] : prev.topology.edges) {
        const Point before = pos(prev.branch_points, b) - pos(prev.branch_points, a);
        const Point pa = a < n ? shifted_terms[static_cast<std::size_t>(a)] : branch[static_cast<std::size_t>(a - n)];
        const Point pb = b < n ? shifted_terms[static_cast<std::size_t>(b)] : branch[static_cast<std::size_t>(b - n)];
        s.parallel_deviation = std::max(s.parallel_deviation, angle_between(before, pb - pa));
    }
    if (s.parallel_deviation > kDirectionTol)
        throw StageAbort(j, "shifted tree is not parallel to the previous stage (deviation " + std::to_string(s.parallel_deviation) + " rad)");

    // New vertex numbering: terminals 0..n+3, branch points follow.
    auto remap = [&](int v) { return v < n ? v : v + 4; };
    s.terminals = prev.terminals;
    s.terminal_stage = prev.terminal_stage;
    s.branch_points = branch;
    s.branch_stage = prev.branch_stage;
    s.topology.terminals = n + 4;
    s.topology.vertices = n + 4 + m + 4;
    std::vector<std::pair<int, int>> replaced;
    for (int i = 0; i < 4; ++i) {
        const Point& x = prev.terminals[static_cast<std::size_t>(i)];
        const Point& xs = s.shifted_corners[static_cast<std::size_t>(i)];
        const int yv = neighbor_of(prev.topology, i);
        const Point& y = yv < n ? shifted_terms[static_cast<std::size_t>(yv)] : branch[static_cast<std::size_t>(yv - n)];
        const double span = distance(xs, y);
        const Point u = (y - xs) / span;
        const Point d = x - xs;
        bool placed = false;
        for (int turn : {1, -1}) {
            const Point w = rotate(u, turn * 2.0 * kPi / 3.0);
            const double det = cross2(u, w);
            const double along = cross2(d, w) / det;
            const double out = cross2(u, d) / det;
            if (!(along > 0.0 && out > 0.0 && along < span)) continue;
            const Point t = xs + u * along;
            const Point w2 = rotate(u, -turn * 2.0 * kPi / 3.0);
            const double b = t.dot(w2);
            const double q = -b + std::sqrt(b * b + 1.0 - t.squared_norm());
            const Point z = t + w2 * q;
            s.tripod_branches[static_cast<std::size_t>(i)] = t;
            s.new_terminals[static_cast<std::size_t>(i)] = z;
            s.max_corner_gap = std::max(s.max_corner_gap, distance(x, z));
            placed = true;
            break;
        }
        if (!placed) throw StageAbort(j, "tripod at corner " + std::to_string(i) + " is infeasible");
        replaced.emplace_back(i, yv);
    }
    for (auto [a, b] : prev.topology.edges) {
        const bool gone = std::any_of(replaced.begin(), replaced.end(), [&](auto e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
        if (!gone) s.topology.edges.emplace_back(remap(a), remap(b));
    }
    for (int i = 0; i < 4; ++i) {
        const int z = n + i;
        const int t = n + 4 + m + i;
        const int yv = remap(replaced[static_cast<std::size_t>(i)].second);
        s.terminals.push_back(s.new_terminals[static_cast<std::size_t>(i)]);
        s.terminal_stage.push_back(j);
        s.branch_points.push_back(s.tripod_branches[static_cast<std::size_t>(i)]);
        s.branch_stage.push_back(j);
        s.topology.edges.emplace_back(t, yv);
        s.topology.edges.emplace_back(t, i);
        s.topology.edges.emplace_back(t, z);
    }
    try {
        finish(s);
    } catch (const PreconditionError& e) {
        // Tripods collapsed onto existing vertices: the shift is below coordinate resolution.
        throw StageAbort(j, std::string("degenerate stage: ") + e.what());
    }
    s.length_increment = s.length - prev.length;

    if (s.max_corner_gap >= std::sqrt(2.0 * epsilon))
        throw StageAbort(j, "new terminal too far from its corner");
    if (!(s.length_increment > 0.0 && s.length_increment < 4.0 * std::sqrt(2.0 * epsilon)))
        throw StageAbort(j, "length increment outside (0, 4 sqrt(2 eps))");
    if (s.max_direction_deviation > kDirectionTol) throw StageAbort(j, "edge leaves the three fixed directions");
    for (const Point& z : s.new_terminals) {
        if (std::abs(z.norm() - 1.0) > kTolGeom) throw StageAbort(j, "new terminal is off the circle");
    }
    return s;
}

StageCertification certify_stage(PathologyStage& stage, const CertifyOptions& opts) {
    StageCertification c;
    c.j = stage.j;
    const std::size_t n = stage.terminals.size();
    c.counts = n == 4 * static_cast<std::size_t>(stage.j + 1) && stage.branch_points.size() == 4 * static_cast<std::size_t>(stage.j) + 2;
    if (!c.counts) c.failures.push_back("terminal or branch count");
    for (std::size_t i = 0; i < n; ++i) c.full = c.full && stage.tree.degree(i) == 1;
    if (!c.full) c.failures.push_back("tree is not full");
    c.rigid = stage.max_direction_deviation <= kDirectionTol;
    if (!c.rigid) c.failures.push_back("edge directions drifted");
    c.local_minimality = validate_local_minimality(stage.tree).pass;
    if (!c.local_minimality) c.failures.push_back("local minimality");
    for (const Point& p : stage.terminals) {
        if (std::abs(p.norm() - 1.0) > kTolGeom) c.failures.push_back("terminal off the unit circle");
    }

    if (static_cast<int>(n) <= opts.n_max) {
        c.exact = true;
        SolveOptions so;
        so.n_max = opts.n_max;
        so.threads = opts.threads;
        const SteinerSolution sol = solve(Instance(2, stage.terminals), so);
        c.solver_length = sol.length;
        c.length_difference = std::abs(sol.length - stage.length);
        c.same_family = sol.topology_code == canonical_code(stage.topology);
        c.optimal = c.length_difference <= 1e-9 && c.same_family;
        if (!c.optimal) c.failures.push_back("solver optimum differs from the constructed tree");
        c.delta = sol.gap();
        if (!(c.delta > 0.0)) c.failures.push_back("no positive gap to other families");
        stage.delta = c.delta;
        stage.delta_exact = true;
    } else {
        c.delta = opts.delta_ratio * stage.epsilon;
        stage.delta = c.delta;
        stage.delta_exact = false;
    }
    return c;
}

double next_epsilon(const PathologyStage& stage, const PathologySchedule& schedule) {
    if (stage.j == 0) return schedule.epsilon1;
    double e = stage.epsilon / schedule.decay;
    if (schedule.enforce_gap && stage.delta > 0.0) e = std::min(e, stage.delta * stage.delta / 64.0);
    return e;
}

AccumulationReport accumulation_report(const std::vector<PathologyStage>& stages, double linkage) {
    if (stages.size() < 3) throw PreconditionError("accumulation analysis needs at least three stages");
    const PathologyStage& last = stages.back();
    AccumulationReport rep;
    rep.linkage = linkage;

    std::vector<Point> pts = last.terminals;
    pts.insert(pts.end(), last.branch_points.begin(), last.branch_points.end());
    std::vector<int> born = last.terminal_stage;
    born.insert(born.end(), last.branch_stage.begin(), last.branch_stage.end());

    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (distance(pts[a], pts[b]) <= linkage) parent[find(a)] = find(b);
        }
    }

    // Rotate so that the middle edge of the rectangle tree is horizontal.
    const Point mid = stages.front().branch_points[0] - stages.front().branch_points[1];
    rep.rotation = std::atan2(mid[1], mid[0]);
    const int newest = last.j;

    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (find(i) == i) roots.push_back(i);
    }
    rep.clusters = roots.size();
    for (std::size_t r : roots) {
        std::vector<std::size_t> members;
        std::vector<int> seen;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (find(i) != r) continue;
            members.push_back(i);
            if (std::find(seen.begin(), seen.end(), born[i]) == seen.end()) seen.push_back(born[i]);
        }
        if (seen.size() < 3) continue;
        AccumulationCluster cl;
        cl.members = members.size();
        cl.stages = seen.size();
        // The limit: the older member nearest to a point of the newest stage.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i : members) {
            if (born[i] == newest) continue;
            for (std::size_t k : members) {
                if (born[k] == newest && distance(pts[i], pts[k]) < best) {
                    best = distance(pts[i], pts[k]);
                    cl.limit = pts[i];
                }
            }
        }
        const std::complex<double> xi = std::polar(1.0, std::atan2(cl.limit[1], cl.limit[0]) - rep.rotation) * cl.limit.norm();
        cl.sextic_residual = std::abs(std::pow(xi, 6) + 1.0);
        for (int jj = 1; jj <= newest; ++jj) {
            double rad = 0.0;
            for (std::size_t k : members) {
                if (born[k] >= jj) rad = std::max(rad, distance(pts[k], cl.limit));
            }
            if (!cl.radii.empty() && !(rad < cl.radii.back())) cl.shrinking = false;
            cl.radii.push_back(rad);
        }
        rep.accumulating.push_back(std::move(cl));
    }
    rep.pass = rep.accumulating.size() == 4;
    for (const AccumulationCluster& cl : rep.accumulating) rep.pass = rep.pass && cl.sextic_residual <= 1e-6 && cl.shrinking;
    return rep;
}

}  // namespace steiner
