#include "steiner/solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "steiner/analysis.hpp"
#include "steiner/errors.hpp"
#include "steiner/melzak.hpp"
#include "steiner/random.hpp"

namespace steiner {

namespace {

struct Candidate {
    double length;
    std::string code;
    FixedTopologyResult result;
};

struct Ranked {
    double length;
    std::string code;
};

bool ranked_less(const Ranked& a, const Ranked& b) {
    return a.length < b.length || (a.length == b.length && a.code < b.code);
}

// Disjoint cherries contribute at least the distance between their two terminals.
double cherry_bound(const Instance& inst, const FullTopology& t) {
    const auto adj = t.graph().adjacency();
    const int n = t.n();
    double bound = 0.0;
    for (std::size_t s = static_cast<std::size_t>(n); s < adj.size(); ++s) {
        std::vector<int> leaves;
        for (int w : adj[s]) {
            if (w < n) leaves.push_back(w);
        }
        if (leaves.size() >= 2)
            bound += distance(inst.terminal(static_cast<std::size_t>(leaves[0])), inst.terminal(static_cast<std::size_t>(leaves[1])));
    }
    return bound;
}

struct Worker {
    std::vector<Candidate> near;  // within the tie window of the local best
    std::vector<Ranked> top;      // two best overall
    std::vector<TopologyAudit> audit;
    double best = std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;
    std::size_t pruned = 0;
    std::size_t melzak_hits = 0;
    double cross_diff = 0.0;

    void offer(Candidate c, double tie) {
        Ranked r{c.length, c.code};
        top.push_back(r);
        std::sort(top.begin(), top.end(), ranked_less);
        if (top.size() > 2) top.pop_back();
        if (c.length > best + tie) return;
        if (c.length < best) {
            best = c.length;
            std::erase_if(near, [&](const Candidate& x) { return x.length > best + tie; });
        }
        near.push_back(std::move(c));
    }
};

}  // namespace

FixedTopologyResult solve_topology(const Instance& inst, const FullTopology& t, const OptOptions& opt, bool* used_melzak) {
    if (used_melzak) *used_melzak = false;
    if (inst.dim() == 2 && t.n() >= 3) {
        if (auto r = solve_full_planar(inst, t)) {
            if (used_melzak) *used_melzak = true;
            return std::move(*r);
        }
    }
    return minimize_topology(inst, t, opt);
}

SteinerSolution solve(const Instance& inst, const SolveOptions& opts) {
    const int n = static_cast<int>(inst.size());
    if (n > opts.n_max) throw UnsupportedError("instance has " + std::to_string(n) + " terminals, above the cap of " + std::to_string(opts.n_max));
    const double tie = 1e-12 * inst.diameter();
    const unsigned threads = std::max(1u, opts.threads);
    std::vector<Worker> workers(threads);

    auto run = [&](unsigned id) {
        Worker& w = workers[id];
        std::size_t index = 0;
        for_each_full(
            n,
            [&](const FullTopology& t) {
                if (index++ % threads != id) return;
                if (opts.prune && cherry_bound(inst, t) > w.best + tie) {
                    ++w.pruned;
                    return;
                }
                bool melzak = false;
                FixedTopologyResult r = solve_topology(inst, t, opts.opt, &melzak);
                ++w.evaluated;
                if (melzak) {
                    ++w.melzak_hits;
                    if (opts.cross_check) {
                        const double other = minimize_topology(inst, t, opts.opt).length;
                        w.cross_diff = std::max(w.cross_diff, std::abs(other - r.length));
                    }
                }
                if (opts.keep_audit) w.audit.push_back({t.code(), r.length, r.member_code, melzak, r.converged});
                const double len = r.length;
                w.offer({len, t.code(), std::move(r)}, tie);
            },
            opts.n_max);
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(run, id);
        for (std::thread& th : pool) th.join();
    }

    double best = std::numeric_limits<double>::infinity();
    for (const Worker& w : workers) best = std::min(best, w.best);
    const Candidate* winner = nullptr;
    for (const Worker& w : workers) {
        for (const Candidate& c : w.near) {
            if (c.length <= best + tie && (!winner || c.code < winner->code)) winner = &c;
        }
    }
    if (!winner) throw std::logic_error("no topology was evaluated");

    SteinerSolution sol;
    sol.tree = winner->result.tree;
    sol.length = winner->result.length;
    sol.topology_code = winner->code;
    sol.member_code = winner->result.member_code;
    sol.branch_points = winner->result.branch_points;
    sol.gap_exact = !opts.prune;
    for (const Worker& w : workers) {
        for (const Ranked& r : w.top) {
            if (r.code != sol.topology_code && r.length < sol.runner_up_length) {
                sol.runner_up_length = r.length;
                sol.runner_up_code = r.code;
            }
        }
        sol.evaluated += w.evaluated;
        sol.pruned += w.pruned;
        sol.melzak_hits += w.melzak_hits;
        sol.cross_check_max_diff = std::max(sol.cross_check_max_diff, w.cross_diff);
        sol.audit.insert(sol.audit.end(), w.audit.begin(), w.audit.end());
    }
    std::sort(sol.audit.begin(), sol.audit.end(), [](const TopologyAudit& a, const TopologyAudit& b) { return a.code < b.code; });
    return sol;
}

StabilityReport stability_probe(const Instance& inst, double shift, int trials, std::uint64_t seed, const SolveOptions& opts) {
    if (!(shift > 0.0)) throw PreconditionError("shift must be positive");
    if (trials < 0) throw PreconditionError("trial count must be nonnegative");
    const SteinerSolution base = solve(inst, opts);
    StabilityReport rep;
    rep.family_code = base.topology_code;
    rep.gap = base.gap();
    rep.gap_exact = base.gap_exact;
    rep.safe_shift = rep.gap / (5.0 * static_cast<double>(inst.size()));
    rep.shift = shift;
    rep.trials = trials;
    rep.guaranteed = shift < rep.safe_shift;
    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
        std::vector<Point> moved;
        for (const Point& p : inst.terminals()) moved.push_back(p + rng.direction(inst.dim()) * (shift * rng.uniform()));
        const SteinerSolution s = solve(Instance(inst.dim(), std::move(moved)), opts);
        if (s.topology_code == rep.family_code) ++rep.retained;
    }
    rep.pass = !rep.guaranteed || rep.retained == rep.trials;
    return rep;
}

SolutionValidation validate_tree(const EmbeddedForest& tree, const Instance& inst, double tol_angle) {
    SolutionValidation v;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        auto at = tree.find_vertex(inst.terminal(i));
        if (!at || tree.kind(*at) != VertexKind::Terminal) v.spans_terminals = false;
    }
    if (!v.spans_terminals) v.failures.push_back("a terminal is missing from the tree");
    v.connected = tree.is_connected();
    if (!v.connected) v.failures.push_back("tree is disconnected");
    v.acyclic = tree.is_acyclic();
    if (!v.acyclic) v.failures.push_back("tree has a cycle");
    for (const Point& p : tree.points()) {
        if (!convex_hull_contains(inst.terminals(), p)) v.in_hull = false;
    }
    if (!v.in_hull) v.failures.push_back("a vertex lies outside the convex hull of the terminals");
    v.minimality = validate_local_minimality(tree, tol_angle);
    if (!v.minimality.pass) v.failures.push_back("local minimality violated");

    if (tree.dim() == 2 && tree.edge_count() > 0) {
        bool full = true;
        for (std::size_t i : tree.terminal_vertices()) full = full && tree.degree(i) == 1;
        if (full && v.minimality.pass) {
            v.maxwell_applicable = true;
            const MaxwellResult m = maxwell_length(tree);
            v.maxwell_value = m.value;
            v.maxwell_residual = m.residual;
            v.maxwell_pass = std::abs(m.value - forest_length(tree)) <= kTolLen && m.residual <= kTolLen;
            if (!v.maxwell_pass) v.failures.push_back("Maxwell length formula disagrees");
        }
    }
    return v;
}

SolutionValidation validate_solution(const SteinerSolution& sol, const Instance& inst, double tol_angle) {
    SolutionValidation v = validate_tree(sol.tree, inst, tol_angle);
    v.length_consistent = std::abs(forest_length(sol.tree) - sol.length) <= kTolLen;
    if (!v.length_consistent) v.failures.push_back("reported length differs from the tree length");
    return v;
}

}  // namespace steiner
