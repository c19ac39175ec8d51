// Fixed-topology length minimization.
//
// The length of a tree with fixed topology is a convex sum of norms of affine functions of
// the branch positions. We minimize it in two phases:
//   1. Newton's method on the smoothed objective sum sqrt(|e|^2 + eta^2), with eta decreased
//      geometrically; this tracks the minimizer into the non-smooth coincidence locus.
//   2. Branch points that ended up within merge distance of each other or of a terminal are
//      collapsed into clusters, and the remaining smooth problem is polished with exact Newton.

#include "steiner/opt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "steiner/errors.hpp"

namespace steiner {

namespace {

// Problem over a set of free points; fixed points (terminals, terminal clusters) are constants.
struct NormSum {
    int d = 2;
    int free_count = 0;
    std::vector<double> fixed;                // fixed point coordinates, packed
    std::vector<std::pair<int, int>> edges;   // ids: >= 0 free index, < 0 fixed index (-1 - k)

    const double* coords(const Eigen::VectorXd& x, int id) const {
        return id >= 0 ? x.data() + static_cast<std::ptrdiff_t>(id) * d
                       : fixed.data() + static_cast<std::ptrdiff_t>(-1 - id) * d;
    }

    double value(const Eigen::VectorXd& x, double eta) const {
        double total = 0.0;
        const double eta2 = eta * eta;
        for (auto [a, b] : edges) {
            const double* pa = coords(x, a);
            const double* pb = coords(x, b);
            double s = 0.0;
            for (int k = 0; k < d; ++k) {
                const double t = pa[k] - pb[k];
                s += t * t;
            }
            total += std::sqrt(s + eta2);
        }
        return total;
    }

    void derivatives(const Eigen::VectorXd& x, double eta, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
        const int nv = free_count * d;
        g.setZero(nv);
        h.setZero(nv, nv);
        const double eta2 = eta * eta;
        double diff[8];
        for (auto [a, b] : edges) {
            const double* pa = coords(x, a);
            const double* pb = coords(x, b);
            double s2 = 0.0;
            for (int k = 0; k < d; ++k) {
                diff[k] = pa[k] - pb[k];
                s2 += diff[k] * diff[k];
            }
            const double s = std::sqrt(s2 + eta2);
            if (s == 0.0) continue;
            const double inv = 1.0 / s;
            for (int r = 0; r < d; ++r) {
                const double gr = diff[r] * inv;
                if (a >= 0) g(a * d + r) += gr;
                if (b >= 0) g(b * d + r) -= gr;
                for (int c = 0; c < d; ++c) {
                    const double hrc = ((r == c ? 1.0 : 0.0) - diff[r] * diff[c] * inv * inv) * inv;
                    if (a >= 0) h(a * d + r, a * d + c) += hrc;
                    if (b >= 0) h(b * d + r, b * d + c) += hrc;
                    if (a >= 0 && b >= 0) {
                        h(a * d + r, b * d + c) -= hrc;
                        h(b * d + r, a * d + c) -= hrc;
                    }
                }
            }
        }
    }

    double min_edge(const Eigen::VectorXd& x) const {
        double m = std::numeric_limits<double>::infinity();
        for (auto [a, b] : edges) {
            const double* pa = coords(x, a);
            const double* pb = coords(x, b);
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += (pa[k] - pb[k]) * (pa[k] - pb[k]);
            m = std::min(m, std::sqrt(s));
        }
        return m;
    }
};

struct NewtonOutcome {
    std::size_t iterations = 0;
    double last_move = 0.0;
    bool converged = false;
};

// Damped Newton with backtracking. Stops when the step is below step_tol (max-norm) or the
// objective stops decreasing.
NewtonOutcome newton(const NormSum& p, Eigen::VectorXd& x, double eta, double step_tol, std::size_t max_iter) {
    NewtonOutcome out;
    const int nv = p.free_count * p.d;
    if (nv == 0) {
        out.converged = true;
        return out;
    }
    Eigen::VectorXd g(nv);
    Eigen::MatrixXd h(nv, nv);
    double f = p.value(x, eta);
    for (std::size_t it = 0; it < max_iter; ++it) {
        ++out.iterations;
        p.derivatives(x, eta, g, h);
        if (g.lpNorm<Eigen::Infinity>() == 0.0) {
            out.last_move = 0.0;
            out.converged = true;
            return out;
        }
        const double ridge = 1e-14 * std::max(1.0, h.diagonal().maxCoeff());
        h.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        Eigen::VectorXd step = ldlt.solve(-g);
        if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(g) >= 0.0) step = -g;
        const double slope = step.dot(g);
        if (-slope <= 1e-13 * std::max(1.0, f)) {
            // Predicted decrease is below the rounding level of f: judge the full step by the
            // gradient instead.
            Eigen::VectorXd trial = x + step;
            Eigen::VectorXd g2(nv);
            Eigen::MatrixXd h2(nv, nv);
            p.derivatives(trial, eta, g2, h2);
            if (!(g2.norm() < g.norm())) {
                out.converged = true;
                return out;
            }
            x = trial;
            f = p.value(x, eta);
            out.last_move = step.lpNorm<Eigen::Infinity>();
            if (out.last_move <= step_tol) {
                out.converged = true;
                return out;
            }
            continue;
        }
        double alpha = 1.0;
        Eigen::VectorXd trial(nv);
        double ftrial = f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            trial = x + alpha * step;
            ftrial = p.value(trial, eta);
            if (ftrial <= f + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            out.converged = true;
            return out;
        }
        x = trial;
        f = ftrial;
        out.last_move = alpha * step.lpNorm<Eigen::Infinity>();
        if (out.last_move <= step_tol) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
};

Eigen::VectorXd laplacian_start(const Instance& inst, const TopologyGraph& g) {
    const int n = g.terminals;
    const int m = g.vertices - n;
    const int d = static_cast<int>(inst.dim());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, d);
    for (auto [a, b] : g.edges) {
        for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
            if (u < n) continue;
            lap(u - n, u - n) += 1.0;
            if (v >= n) {
                lap(u - n, v - n) -= 1.0;
            } else {
                for (int k = 0; k < d; ++k) rhs(u - n, k) += inst.terminal(static_cast<std::size_t>(v))[static_cast<std::size_t>(k)];
            }
        }
    }
    const Eigen::MatrixXd y = lap.ldlt().solve(rhs);
    Eigen::VectorXd x(m * d);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < d; ++k) x(i * d + k) = y(i, k);
    return x;
}

TopologyGraph contract_clusters(const TopologyGraph& g, const std::vector<int>& rep) {
    // rep maps every vertex to its cluster representative (a terminal if the cluster has one).
    TopologyGraph out;
    out.terminals = g.terminals;
    std::vector<int> renum(static_cast<std::size_t>(g.vertices), -1);
    for (int v = 0; v < g.terminals; ++v) renum[static_cast<std::size_t>(v)] = v;
    int next = g.terminals;
    for (int v = g.terminals; v < g.vertices; ++v) {
        const int r = rep[static_cast<std::size_t>(v)];
        if (renum[static_cast<std::size_t>(r)] < 0) renum[static_cast<std::size_t>(r)] = next++;
    }
    out.vertices = next;
    for (auto [a, b] : g.edges) {
        const int ra = renum[static_cast<std::size_t>(rep[static_cast<std::size_t>(a)])];
        const int rb = renum[static_cast<std::size_t>(rep[static_cast<std::size_t>(b)])];
        if (ra != rb) out.edges.emplace_back(ra, rb);
    }
    return out;
}

}  // namespace

EmbeddedForest topology_tree(const Instance& inst, const FullTopology& t, const std::vector<Point>& branch) {
    const int n = t.n();
    if (static_cast<int>(inst.size()) != n) throw PreconditionError("topology and instance sizes differ");
    if (static_cast<int>(branch.size()) != t.graph().vertices - n) throw PreconditionError("wrong number of branch points");
    EmbeddedForest f(inst.dim());
    for (int i = 0; i < n; ++i) f.add_vertex_unchecked(inst.terminal(static_cast<std::size_t>(i)), VertexKind::Terminal, i);
    for (const Point& p : branch) f.add_vertex_unchecked(p, VertexKind::Steiner);
    for (auto [a, b] : t.graph().edges) f.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return f;
}

double topology_length(const Instance& inst, const FullTopology& t, const std::vector<Point>& branch) {
    return forest_length(topology_tree(inst, t, branch));
}

FixedTopologyResult minimize_topology(const Instance& inst, const FullTopology& t, const OptOptions& opt) {
    const TopologyGraph& g = t.graph();
    const int n = g.terminals;
    if (static_cast<int>(inst.size()) != n) throw PreconditionError("topology and instance sizes differ");
    const int d = static_cast<int>(inst.dim());
    if (d > 8) throw UnsupportedError("minimize_topology supports d <= 8");
    const int m = g.vertices - n;
    const double diam = inst.diameter();

    FixedTopologyResult res;
    res.tree = EmbeddedForest(inst.dim());
    for (int i = 0; i < n; ++i) res.tree.add_vertex(inst.terminal(static_cast<std::size_t>(i)), VertexKind::Terminal, i);
    if (m == 0) {
        for (auto [a, b] : g.edges) res.tree.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        res.length = forest_length(res.tree);
        res.converged = true;
        res.member_code = t.code();
        return res;
    }

    NormSum full;
    full.d = d;
    full.free_count = m;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) full.fixed.push_back(inst.terminal(static_cast<std::size_t>(i))[static_cast<std::size_t>(k)]);
    for (auto [a, b] : g.edges) {
        auto id = [n](int v) { return v < n ? -1 - v : v - n; };
        full.edges.emplace_back(id(a), id(b));
    }

    Eigen::VectorXd x;
    if (opt.initial) {
        if (static_cast<int>(opt.initial->size()) != m) throw PreconditionError("initial guess has wrong size");
        x.resize(m * d);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < d; ++k) x(i * d + k) = (*opt.initial)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    } else {
        x = laplacian_start(inst, g);
    }

    const double step_tol = opt.tol * diam;
    std::size_t iterations = 0;
    if (opt.smoothing) {
        for (double eta = opt.smoothing_start * diam; eta >= opt.smoothing_end * diam * 0.999; eta *= 0.1) {
            if (iterations >= opt.max_iterations) break;
            iterations += newton(full, x, eta, step_tol, std::min<std::size_t>(200, opt.max_iterations - iterations)).iterations;
        }
    }

    // Cluster detection and exact polishing.
    const double merge_abs = opt.merge_tol * diam;
    std::vector<std::pair<int, int>> forbidden;  // edges that must not be merged
    std::vector<int> rep(static_cast<std::size_t>(g.vertices));
    NewtonOutcome polish;
    for (int round = 0; round < 8; ++round) {
        UnionFind uf(g.vertices);
        std::vector<int> cluster_terminal(static_cast<std::size_t>(g.vertices), -1);
        for (int i = 0; i < n; ++i) cluster_terminal[static_cast<std::size_t>(i)] = i;
        auto pos = [&](int v) -> const double* {
            return v < n ? full.fixed.data() + static_cast<std::ptrdiff_t>(v) * d : x.data() + static_cast<std::ptrdiff_t>(v - n) * d;
        };
        for (auto [a, b] : g.edges) {
            if (a < n && b < n) continue;
            if (std::find(forbidden.begin(), forbidden.end(), std::pair{a, b}) != forbidden.end()) continue;
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += (pos(a)[k] - pos(b)[k]) * (pos(a)[k] - pos(b)[k]);
            if (std::sqrt(s) >= merge_abs) continue;
            const int ra = uf.find(a);
            const int rb = uf.find(b);
            if (ra == rb) continue;
            const int ta = cluster_terminal[static_cast<std::size_t>(ra)];
            const int tb = cluster_terminal[static_cast<std::size_t>(rb)];
            if (ta >= 0 && tb >= 0) continue;
            uf.parent[static_cast<std::size_t>(ra)] = rb;
            cluster_terminal[static_cast<std::size_t>(rb)] = std::max(ta, tb);
        }
        // Representative: the terminal if present, else the smallest member.
        std::vector<int> root_rep(static_cast<std::size_t>(g.vertices), -1);
        for (int v = 0; v < g.vertices; ++v) {
            const int r = uf.find(v);
            const int term = cluster_terminal[static_cast<std::size_t>(r)];
            if (term >= 0) root_rep[static_cast<std::size_t>(r)] = term;
            else if (root_rep[static_cast<std::size_t>(r)] < 0) root_rep[static_cast<std::size_t>(r)] = v;
        }
        for (int v = 0; v < g.vertices; ++v) rep[static_cast<std::size_t>(v)] = root_rep[static_cast<std::size_t>(uf.find(v))];

        // Reduced problem: one free variable per cluster without a terminal.
        NormSum red;
        red.d = d;
        red.fixed = full.fixed;
        std::vector<int> var_of(static_cast<std::size_t>(g.vertices), 0);
        std::vector<int> var_rep;
        for (int v = n; v < g.vertices; ++v) {
            if (rep[static_cast<std::size_t>(v)] == v) {
                var_of[static_cast<std::size_t>(v)] = static_cast<int>(var_rep.size());
                var_rep.push_back(v);
            }
        }
        red.free_count = static_cast<int>(var_rep.size());
        Eigen::VectorXd z(red.free_count * d);
        for (int i = 0; i < red.free_count; ++i) {
            // Cluster position: mean of members.
            const int r = var_rep[static_cast<std::size_t>(i)];
            int cnt = 0;
            for (int k = 0; k < d; ++k) z(i * d + k) = 0.0;
            for (int v = n; v < g.vertices; ++v) {
                if (rep[static_cast<std::size_t>(v)] != r) continue;
                ++cnt;
                for (int k = 0; k < d; ++k) z(i * d + k) += x((v - n) * d + k);
            }
            for (int k = 0; k < d; ++k) z(i * d + k) /= cnt;
        }
        auto red_id = [&](int v) {
            const int r = rep[static_cast<std::size_t>(v)];
            return r < n ? -1 - r : var_of[static_cast<std::size_t>(r)];
        };
        for (auto [a, b] : g.edges) {
            const int ra = red_id(a);
            const int rb = red_id(b);
            if (ra != rb) red.edges.emplace_back(ra, rb);
        }
        polish = newton(red, z, 0.0, step_tol, 200);
        iterations += polish.iterations;
        // Write cluster positions back to every member.
        for (int v = n; v < g.vertices; ++v) {
            const int r = rep[static_cast<std::size_t>(v)];
            for (int k = 0; k < d; ++k) {
                x((v - n) * d + k) = r < n ? full.fixed[static_cast<std::size_t>(r * d + k)] : z(var_of[static_cast<std::size_t>(r)] * d + k);
            }
        }
        const bool edge_collapsed = red.free_count > 0 && red.min_edge(z) < merge_abs;

        // Optimality audit: per Steiner member, external unit directions vs internal edge count.
        double grad_res = 0.0;
        double excess = 0.0;
        std::vector<std::pair<int, int>> spurious;
        for (int v = n; v < g.vertices; ++v) {
            const int r = rep[static_cast<std::size_t>(v)];
            Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
            int internal = 0;
            int internal_nbr = -1;
            for (auto [a, b] : g.edges) {
                if (a != v && b != v) continue;
                const int w = (a == v) ? b : a;
                if (rep[static_cast<std::size_t>(w)] == r) {
                    ++internal;
                    internal_nbr = w;
                    continue;
                }
                Eigen::VectorXd dir(d);
                for (int k = 0; k < d; ++k) dir(k) = pos(v)[k] - pos(w)[k];
                sum += dir / dir.norm();
            }
            const double norm = sum.norm();
            if (internal == 0) {
                grad_res = std::max(grad_res, norm);
            } else {
                const double e = norm - internal;
                excess = std::max(excess, e);
                if (e > 1e-6 && internal == 1) spurious.emplace_back(std::min(v, internal_nbr), std::max(v, internal_nbr));
            }
        }
        res.gradient_residual = grad_res;
        res.subgradient_excess = excess;

        if (!spurious.empty()) {
            // A merge that violates the subgradient condition: separate the branch point along
            // its descent direction and re-polish without merging that edge.
            for (auto e : spurious) {
                forbidden.push_back(e);
                forbidden.emplace_back(e.second, e.first);
                const int v = e.first >= n && rep[static_cast<std::size_t>(e.first)] != e.first ? e.first : e.second;
                if (v < n) continue;
                Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
                for (auto [a, b] : g.edges) {
                    if (a != v && b != v) continue;
                    const int w = (a == v) ? b : a;
                    if (rep[static_cast<std::size_t>(w)] == rep[static_cast<std::size_t>(v)]) continue;
                    Eigen::VectorXd dir(d);
                    for (int k = 0; k < d; ++k) dir(k) = pos(v)[k] - pos(w)[k];
                    sum += dir / dir.norm();
                }
                if (sum.norm() > 0.0) {
                    for (int k = 0; k < d; ++k) x((v - n) * d + k) -= 10.0 * merge_abs * sum(k) / sum.norm();
                }
            }
            continue;
        }
        if (edge_collapsed) continue;
        break;
    }

    res.iterations = iterations;
    res.max_branch_move_last_iter = polish.last_move;
    res.converged = iterations < opt.max_iterations && polish.converged &&
                    res.gradient_residual <= 1e-6 && res.subgradient_excess <= 1e-6;

    res.branch_points.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = x(i * d + k);
        res.branch_points.emplace_back(std::move(c));
    }

    // Clusters and the collapsed tree.
    std::vector<int> vertex_of(static_cast<std::size_t>(g.vertices), -1);
    for (int i = 0; i < n; ++i) vertex_of[static_cast<std::size_t>(i)] = i;
    for (int v = n; v < g.vertices; ++v) {
        const int r = rep[static_cast<std::size_t>(v)];
        if (r < n) continue;
        if (vertex_of[static_cast<std::size_t>(r)] < 0) {
            vertex_of[static_cast<std::size_t>(r)] = static_cast<int>(
                res.tree.add_vertex_unchecked(res.branch_points[static_cast<std::size_t>(r - n)], VertexKind::Steiner));
        }
    }
    for (auto [a, b] : g.edges) {
        const int va = vertex_of[static_cast<std::size_t>(rep[static_cast<std::size_t>(a)])];
        const int vb = vertex_of[static_cast<std::size_t>(rep[static_cast<std::size_t>(b)])];
        if (va != vb) res.tree.add_edge(static_cast<std::size_t>(va), static_cast<std::size_t>(vb));
    }
    for (int r = 0; r < g.vertices; ++r) {
        std::vector<int> members;
        for (int v = n; v < g.vertices; ++v) {
            if (rep[static_cast<std::size_t>(v)] == r) members.push_back(v);
        }
        const bool is_cluster = (r < n && !members.empty()) || (r >= n && members.size() > 1);
        if (is_cluster) res.merged.push_back({members, r < n ? r : -1});
    }
    res.length = forest_length(res.tree);
    res.member_code = canonical_code(contract_clusters(g, rep));
    return res;
}

MinimalityReport validate_local_minimality(const EmbeddedForest& tree, double tol_angle) {
    MinimalityReport rep;
    const auto adj = tree.adjacency();
    const double target = 2.0 * kPi / 3.0;
    for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
        if (tree.kind(v) == VertexKind::Boundary) continue;
        VertexCheck c;
        c.vertex = v;
        c.degree = adj[v].size();
        c.min_angle = kPi;
        const bool steiner = tree.kind(v) == VertexKind::Steiner;
        if (c.degree > 3) {
            c.pass = false;
            c.reason = "degree above 3";
        } else if (steiner && c.degree != 3) {
            c.pass = false;
            c.reason = "branching point without degree 3";
        }
        std::vector<Point> dirs;
        for (std::size_t w : adj[v]) dirs.push_back((tree.point(w) - tree.point(v)).normalized());
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            for (std::size_t j = i + 1; j < dirs.size(); ++j) {
                const double a = angle_between(dirs[i], dirs[j]);
                c.min_angle = std::min(c.min_angle, a);
                if (c.degree == 3) c.max_angle_deviation = std::max(c.max_angle_deviation, std::abs(a - target));
            }
        }
        if (dirs.size() >= 2 && c.min_angle < target - tol_angle && c.pass) {
            c.pass = false;
            c.reason = "angle below 2pi/3";
        }
        if (c.degree == 3) {
            // Distance of the third direction from the plane of the first two.
            const Point& u = dirs[0];
            Point w = dirs[1] - u * u.dot(dirs[1]);
            const double wn = w.norm();
            Point r = dirs[2] - u * u.dot(dirs[2]);
            if (wn > 0.0) {
                w /= wn;
                r -= w * w.dot(r);
            }
            c.coplanarity_residual = r.norm();
            if (c.pass && c.max_angle_deviation > tol_angle) {
                c.pass = false;
                c.reason = "branching angles differ from 2pi/3";
            }
            if (c.pass && c.coplanarity_residual > tol_angle) {
                c.pass = false;
                c.reason = "branching edges not coplanar";
            }
        }
        rep.pass = rep.pass && c.pass;
        rep.vertices.push_back(std::move(c));
    }
    return rep;
}

}  // namespace steiner
