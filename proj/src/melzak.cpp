#include "steiner/melzak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steiner/errors.hpp"

namespace steiner {

namespace {

constexpr int kMaxMelzakTerminals = 12;

double cross2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

struct MergeStep {
    int first;
    int second;
    int branch;
};

// Cherry merges in deterministic order; returns the final leaf pair.
std::vector<MergeStep> merge_sequence(const TopologyGraph& g, std::pair<int, int>& final_pair) {
    std::vector<std::vector<int>> adj = g.adjacency();
    std::vector<MergeStep> steps;
    auto is_leaf = [&](int v) { return adj[static_cast<std::size_t>(v)].size() == 1; };
    auto unlink = [&](int u, int v) {
        auto& a = adj[static_cast<std::size_t>(u)];
        a.erase(std::find(a.begin(), a.end(), v));
        auto& b = adj[static_cast<std::size_t>(v)];
        b.erase(std::find(b.begin(), b.end(), u));
    };
    const int n = g.terminals;
    for (int round = 0; round < n - 2; ++round) {
        bool found = false;
        for (int s = n; s < g.vertices && !found; ++s) {
            if (adj[static_cast<std::size_t>(s)].size() != 3) continue;
            std::vector<int> leaves;
            for (int w : adj[static_cast<std::size_t>(s)]) {
                if (is_leaf(w)) leaves.push_back(w);
            }
            if (leaves.size() < 2) continue;
            std::sort(leaves.begin(), leaves.end());
            unlink(leaves[0], s);
            unlink(leaves[1], s);
            steps.push_back({leaves[0], leaves[1], s});
            found = true;
        }
        if (!found) throw PreconditionError("topology has no cherry; not a full topology");
    }
    for (int v = 0; v < g.vertices; ++v) {
        if (adj[static_cast<std::size_t>(v)].size() == 1) {
            final_pair = {v, adj[static_cast<std::size_t>(v)][0]};
            break;
        }
    }
    return steps;
}

// Second intersection of the ray p -> w with the circumcircle of (p, p1, p2), if it lies on
// [p w] and on the arc p1 p2 opposite p.
std::optional<Point> branch_on_arc(const Point& p, const Point& p1, const Point& p2, const Point& w) {
    const Point centre = (p + p1 + p2) / 3.0;
    const Point v = w - p;
    const double vv = v.squared_norm();
    if (vv <= kTolGeom * kTolGeom) return std::nullopt;
    const double t = -2.0 * v.dot(p - centre) / vv;
    const double slack = kTolGeom / std::sqrt(vv);
    if (t < -slack || t > 1.0 + slack) return std::nullopt;
    const Point q = p + v * std::clamp(t, 0.0, 1.0);
    const Point base = p2 - p1;
    const double bl = base.norm();
    const double side_p = cross2(base, p - p1) / bl;
    const double side_q = cross2(base, q - p1) / bl;
    if (!(side_p * side_q < 0.0) || std::abs(side_q) <= kTolGeom) return std::nullopt;
    return q;
}

}  // namespace

Point melzak_third_point(const Point& p1, const Point& p2, Side side) {
    if (p1.dim() != 2 || p2.dim() != 2) throw PreconditionError("Melzak construction is planar");
    if (distance(p1, p2) <= kTolGeom) throw PreconditionError("coincident points have no equilateral apex");
    const Point mid = (p1 + p2) / 2.0;
    const double dx = p2[0] - p1[0];
    const double dy = p2[1] - p1[1];
    const double h = kSqrt3 / 2.0;
    // Left normal of p1 -> p2 is (-dy, dx).
    return side == Side::Left ? Point{mid[0] - h * dy, mid[1] + h * dx} : Point{mid[0] + h * dy, mid[1] - h * dx};
}

std::optional<FixedTopologyResult> solve_full_planar(const Instance& inst, const FullTopology& t, MelzakTrace* trace) {
    if (inst.dim() != 2) throw PreconditionError("Melzak solver requires d = 2");
    const TopologyGraph& g = t.graph();
    const int n = g.terminals;
    if (static_cast<int>(inst.size()) != n) throw PreconditionError("topology and instance sizes differ");
    if (n > kMaxMelzakTerminals) throw UnsupportedError("Melzak solver is capped at 12 terminals");

    std::pair<int, int> final_pair{0, 1};
    const std::vector<MergeStep> steps = merge_sequence(g, final_pair);
    const int merges = static_cast<int>(steps.size());

    std::vector<Point> leaf_pos(static_cast<std::size_t>(g.vertices));
    for (int i = 0; i < n; ++i) leaf_pos[static_cast<std::size_t>(i)] = inst.terminal(static_cast<std::size_t>(i));
    std::vector<Point> actual(static_cast<std::size_t>(g.vertices));

    std::optional<FixedTopologyResult> best;
    std::vector<Side> best_sides;
    std::size_t tried = 0;
    for (unsigned mask = 0; mask < (1u << merges); ++mask) {
        ++tried;
        bool ok = true;
        for (int k = 0; k < merges && ok; ++k) {
            const MergeStep& m = steps[static_cast<std::size_t>(k)];
            const Point& a = leaf_pos[static_cast<std::size_t>(m.first)];
            const Point& b = leaf_pos[static_cast<std::size_t>(m.second)];
            if (distance(a, b) <= kTolGeom) ok = false;
            else leaf_pos[static_cast<std::size_t>(m.branch)] = melzak_third_point(a, b, (mask >> k) & 1u ? Side::Right : Side::Left);
        }
        if (!ok) continue;

        auto place = [&](int s, const Point& w) {
            const MergeStep* m = nullptr;
            for (const MergeStep& st : steps) {
                if (st.branch == s) m = &st;
            }
            auto q = branch_on_arc(leaf_pos[static_cast<std::size_t>(s)], leaf_pos[static_cast<std::size_t>(m->first)],
                                   leaf_pos[static_cast<std::size_t>(m->second)], w);
            if (!q) return false;
            actual[static_cast<std::size_t>(s)] = *q;
            return true;
        };
        auto [fa, fb] = final_pair;
        if (fa < n) std::swap(fa, fb);  // a Steiner end first, if any
        if (fa >= n) {
            ok = place(fa, leaf_pos[static_cast<std::size_t>(fb)]);
            if (ok && fb >= n) ok = place(fb, actual[static_cast<std::size_t>(fa)]);
        }
        for (int k = merges - 1; k >= 0 && ok; --k) {
            const MergeStep& m = steps[static_cast<std::size_t>(k)];
            for (int c : {m.first, m.second}) {
                if (ok && c >= n) ok = place(c, actual[static_cast<std::size_t>(m.branch)]);
            }
        }
        if (!ok) continue;

        std::vector<Point> branch(actual.begin() + n, actual.end());
        EmbeddedForest tree = topology_tree(inst, t, branch);
        for (const Edge& e : tree.edges()) {
            if (edge_length(tree, e) <= kTolGeom) ok = false;
        }
        if (!ok) continue;
        const double len = forest_length(tree);
        if (best && best->length <= len) continue;
        FixedTopologyResult r;
        r.tree = std::move(tree);
        r.length = len;
        r.converged = true;
        r.branch_points = std::move(branch);
        r.member_code = t.code();
        best = std::move(r);
        best_sides.clear();
        for (int k = 0; k < merges; ++k) best_sides.push_back((mask >> k) & 1u ? Side::Right : Side::Left);
    }
    if (best) {
        best->iterations = tried;
        if (trace) {
            trace->merges.clear();
            for (int k = 0; k < merges; ++k) {
                const MergeStep& m = steps[static_cast<std::size_t>(k)];
                trace->merges.push_back({m.first, m.second, m.branch, best_sides[static_cast<std::size_t>(k)], Point{}});
            }
            // Recompute the apexes for the chosen orientations.
            for (MelzakMerge& m : trace->merges) {
                m.apex = melzak_third_point(leaf_pos[static_cast<std::size_t>(m.first)], leaf_pos[static_cast<std::size_t>(m.second)], m.side);
                leaf_pos[static_cast<std::size_t>(m.branch)] = m.apex;
            }
            trace->final_pair = final_pair;
            trace->branch_points = best->branch_points;
        }
    }
    return best;
}

MelzakReduction melzak_reduce(const Instance& inst, const FullTopology& t, Side side) {
    const TopologyGraph& g = t.graph();
    const int n = g.terminals;
    if (n < 3) throw PreconditionError("a Melzak step needs at least three terminals");
    std::pair<int, int> final_pair;
    const MergeStep m = merge_sequence(g, final_pair).front();
    const Point apex = melzak_third_point(inst.terminal(static_cast<std::size_t>(m.first)),
                                          inst.terminal(static_cast<std::size_t>(m.second)), side);

    std::vector<int> map(static_cast<std::size_t>(g.vertices), -1);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        if (i == m.first || i == m.second) continue;
        map[static_cast<std::size_t>(i)] = static_cast<int>(pts.size());
        pts.push_back(inst.terminal(static_cast<std::size_t>(i)));
    }
    map[static_cast<std::size_t>(m.branch)] = static_cast<int>(pts.size());
    pts.push_back(apex);
    int next = n - 1;
    for (int v = n; v < g.vertices; ++v) {
        if (v != m.branch) map[static_cast<std::size_t>(v)] = next++;
    }
    TopologyGraph r;
    r.terminals = n - 1;
    r.vertices = next;
    for (auto [a, b] : g.edges) {
        if (map[static_cast<std::size_t>(a)] < 0 || map[static_cast<std::size_t>(b)] < 0) continue;
        r.edges.emplace_back(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
    }
    return {Instance(2, std::move(pts)), FullTopology(std::move(r)), m.first, m.second};
}

}  // namespace steiner
