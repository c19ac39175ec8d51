#include "steiner/spanning.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {

MstResult prim_mst(const std::vector<Point>& points, std::size_t start) {
    if (points.empty()) throw PreconditionError("spanning tree of an empty point set");
    if (start >= points.size()) throw PreconditionError("start vertex out of range");
    const std::size_t n = points.size();
    MstResult res;
    res.tree = EmbeddedForest(points.front().dim());
    for (std::size_t i = 0; i < n; ++i) res.tree.add_vertex(points[i], VertexKind::Terminal, static_cast<int>(i));

    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> link(n, start);
    std::vector<bool> in_tree(n, false);
    std::size_t cur = start;
    for (std::size_t step = 0; step < n; ++step) {
        in_tree[cur] = true;
        res.order.push_back(cur);
        if (step > 0) {
            res.tree.add_edge(link[cur], cur);
            res.length += best[cur];
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double w = distance(points[cur], points[v]);
            if (w < best[v]) {
                best[v] = w;
                link[v] = cur;
            }
        }
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
        }
        if (next == n) break;
        cur = next;
    }
    return res;
}

double steiner_ratio(const Instance& inst, double smt_length) {
    if (!(smt_length > 0.0)) throw PreconditionError("Steiner tree length must be positive");
    const double ratio = prim_mst(inst.terminals()).length / smt_length;
    if (ratio < 1.0 - kTolLen || ratio > kSqrt3 + kTolLen)
        throw std::logic_error("Steiner ratio " + std::to_string(ratio) + " outside [1, sqrt 3]");
    return ratio;
}

Instance hypercube_instance(int d) {
    if (d < 2 || d > 16) throw PreconditionError("hypercube dimension must be in [2, 16]");
    std::vector<Point> corners;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = (mask >> k) & 1u ? 1.0 : -1.0;
        corners.emplace_back(std::move(c));
    }
    return Instance(static_cast<std::size_t>(d), std::move(corners));
}

HypercubeReport hypercube_report(int d) {
    HypercubeReport r;
    r.d = d;
    r.mst_length = prim_mst(hypercube_instance(d).terminals()).length;
    const double edges = std::ldexp(1.0, d) - 1.0;
    r.lower_bound = 2.0 / kSqrt3 * edges;
    r.density = 2.0 * edges / std::sqrt(3.0 * d);
    r.informational = d <= 2;
    return r;
}

}  // namespace steiner
