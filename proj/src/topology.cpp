#include "steiner/topology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {

std::vector<std::vector<int>> TopologyGraph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

std::vector<int> TopologyGraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertices), 0);
    for (auto [a, b] : edges) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    return deg;
}

bool TopologyGraph::is_tree() const {
    if (vertices <= 0) return false;
    if (static_cast<int>(edges.size()) != vertices - 1) return false;
    std::vector<int> parent(static_cast<std::size_t>(vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertices || b >= vertices || a == b) return false;
        const int ra = find(a);
        const int rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
}

namespace {

std::string encode(const std::vector<std::vector<int>>& adj, int terminals, int v, int parent) {
    std::string head = (v < terminals) ? std::to_string(v + 1) : std::string("s");
    std::vector<std::string> children;
    for (int w : adj[static_cast<std::size_t>(v)]) {
        if (w != parent) children.push_back(encode(adj, terminals, w, v));
    }
    if (children.empty()) return head;
    std::sort(children.begin(), children.end());
    head += '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) head += ',';
        head += children[i];
    }
    head += ')';
    return head;
}

}  // namespace

std::string canonical_code(const TopologyGraph& g) {
    if (g.terminals < 1) throw PreconditionError("topology without terminals");
    return encode(g.adjacency(), g.terminals, 0, -1);
}

FullTopology::FullTopology(TopologyGraph g) : graph_(std::move(g)) {
    const int n = graph_.terminals;
    if (n < 2) throw PreconditionError("full topology needs at least two terminals");
    if (graph_.vertices != n + std::max(0, n - 2)) throw PreconditionError("full topology must have n-2 Steiner vertices");
    if (!graph_.is_tree()) throw PreconditionError("topology is not a tree");
    const auto deg = graph_.degrees();
    for (int v = 0; v < graph_.vertices; ++v) {
        const int want = (v < n) ? 1 : 3;
        if (deg[static_cast<std::size_t>(v)] != want) throw PreconditionError("full topology degree constraint violated");
    }
    code_ = canonical_code(graph_);
}

int FullTopology::terminal_neighbor(int terminal) const {
    for (auto [a, b] : graph_.edges) {
        if (a == terminal) return b;
        if (b == terminal) return a;
    }
    throw PreconditionError("terminal has no neighbor");
}

std::string canonical_code(const FullTopology& t) { return t.code(); }

TopologyGraph contract_edges(const TopologyGraph& g, const std::vector<std::pair<int, int>>& contracted) {
    std::vector<int> target(static_cast<std::size_t>(g.vertices));
    std::iota(target.begin(), target.end(), 0);
    for (auto [term, st] : contracted) {
        if (term < 0 || term >= g.terminals || st < g.terminals || st >= g.vertices) {
            throw PreconditionError("contracted edge must join a terminal and a Steiner vertex");
        }
        target[static_cast<std::size_t>(st)] = term;
    }
    int next = g.terminals;
    std::vector<int> renum(static_cast<std::size_t>(g.vertices), -1);
    for (int v = 0; v < g.vertices; ++v) {
        if (v < g.terminals) renum[static_cast<std::size_t>(v)] = v;
        else if (target[static_cast<std::size_t>(v)] == v) renum[static_cast<std::size_t>(v)] = next++;
    }
    TopologyGraph out;
    out.terminals = g.terminals;
    out.vertices = next;
    for (auto [a, b] : g.edges) {
        const int ra = renum[static_cast<std::size_t>(target[static_cast<std::size_t>(a)])];
        const int rb = renum[static_cast<std::size_t>(target[static_cast<std::size_t>(b)])];
        if (ra != rb) out.edges.emplace_back(ra, rb);
    }
    return out;
}

TopologyGraph ContractedTopology::graph() const {
    if (!base) throw PreconditionError("contracted topology without base");
    return contract_edges(base->graph(), contracted);
}

std::size_t full_topology_count(int n) {
    if (n < 2) throw PreconditionError("need n >= 2");
    std::size_t c = 1;
    for (int k = 3; k <= 2 * n - 5; k += 2) c *= static_cast<std::size_t>(k);
    return c;
}

namespace {

constexpr int kSteinerBase = 1000;

void grow(std::vector<std::pair<int, int>>& edges, int have, int n,
          const std::function<void(const FullTopology&)>& visit) {
    if (have == n) {
        TopologyGraph g;
        g.terminals = n;
        g.vertices = n + std::max(0, n - 2);
        g.edges.reserve(edges.size());
        for (auto [a, b] : edges) {
            auto remap = [n](int v) { return v >= kSteinerBase ? n + (v - kSteinerBase) : v; };
            g.edges.emplace_back(remap(a), remap(b));
        }
        visit(FullTopology(std::move(g)));
        return;
    }
    const int steiner = kSteinerBase + (have - 2);
    const std::size_t m = edges.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto [a, b] = edges[i];
        edges[i] = {a, steiner};
        edges.emplace_back(steiner, b);
        edges.emplace_back(steiner, have);
        grow(edges, have + 1, n, visit);
        edges.pop_back();
        edges.pop_back();
        edges[i] = {a, b};
    }
}

}  // namespace

void for_each_full(int n, const std::function<void(const FullTopology&)>& visit, int n_max) {
    if (n < 2) throw PreconditionError("need at least two terminals");
    if (n > n_max) {
        throw UnsupportedError("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(n_max));
    }
    std::vector<std::pair<int, int>> edges{{0, 1}};
    grow(edges, 2, n, visit);
}

std::vector<FullTopology> enumerate_full(int n, int n_max) {
    std::vector<FullTopology> out;
    for_each_full(n, [&](const FullTopology& t) { out.push_back(t); }, n_max);
    std::sort(out.begin(), out.end(), [](const FullTopology& a, const FullTopology& b) { return a.code() < b.code(); });
    return out;
}

std::vector<ContractedTopology> contract_family(const FullTopology& t) {
    const int n = t.n();
    std::vector<ContractedTopology> out;
    if (n == 2) {
        out.push_back({&t, {}});
        return out;
    }
    std::vector<int> nbr(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nbr[static_cast<std::size_t>(i)] = t.terminal_neighbor(i);
    const unsigned limit = 1u << n;
    for (unsigned mask = 0; mask < limit; ++mask) {
        std::vector<int> used;
        std::vector<std::pair<int, int>> chosen;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            const int s = nbr[static_cast<std::size_t>(i)];
            if (std::find(used.begin(), used.end(), s) != used.end()) ok = false;
            used.push_back(s);
            chosen.emplace_back(i, s);
        }
        if (ok) out.push_back({&t, std::move(chosen)});
    }
    return out;
}

bool is_degenerate(const TopologyGraph& g) {
    const auto deg = g.degrees();
    for (int v = 0; v < g.terminals; ++v) {
        if (deg[static_cast<std::size_t>(v)] >= 3) return true;
    }
    return false;
}

FullTopology expand_to_full(const TopologyGraph& g) {
    if (!g.is_tree()) throw PreconditionError("expand_to_full: input is not a tree");
    if (is_degenerate(g)) throw PreconditionError("expand_to_full: degenerate topology (terminal of degree >= 3)");
    const auto deg = g.degrees();
    for (int v = g.terminals; v < g.vertices; ++v) {
        if (deg[static_cast<std::size_t>(v)] != 3) throw PreconditionError("expand_to_full: Steiner vertex without degree 3");
    }
    // Steiner ids shift up to make room; new Steiner vertices are appended.
    TopologyGraph out;
    out.terminals = g.terminals;
    out.vertices = g.vertices;
    std::vector<std::pair<int, int>> edges = g.edges;
    for (int x = 0; x < g.terminals; ++x) {
        if (deg[static_cast<std::size_t>(x)] != 2) continue;
        const int s = out.vertices++;
        for (auto& [a, b] : edges) {
            if (a == x) a = s;
            else if (b == x) b = s;
        }
        edges.emplace_back(s, x);
    }
    out.edges = std::move(edges);
    return FullTopology(std::move(out));
}

}  // namespace steiner
