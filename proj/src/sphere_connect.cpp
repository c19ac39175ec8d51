#include "steiner/sphere_connect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steiner/errors.hpp"
#include "steiner/random.hpp"
#include "steiner/spanning.hpp"

namespace steiner {

namespace {

double halton(std::size_t index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

void check_on_sphere(const std::vector<Point>& points, std::size_t d) {
    for (const Point& p : points) {
        if (p.dim() != d) throw PreconditionError("point dimension does not match the sphere");
        if (std::abs(p.norm() - 1.0) > kTolGeom) throw PreconditionError("point is not on the unit sphere");
    }
}

}  // namespace

double chord(double theta) { return 2.0 * std::sin(std::min(theta, kPi) / 2.0); }

std::vector<Point> sphere_net(std::size_t d, std::size_t count) {
    if (d < 3) throw UnsupportedError("sphere nets are built for d >= 3");
    if (d > 2 * std::size(kPrimes)) throw UnsupportedError("sphere net dimension too large");
    std::vector<Point> net;
    net.reserve(count);
    if (d == 3) {
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * static_cast<double>(i);
            net.push_back(Point{rho * std::cos(a), rho * std::sin(a), z});
        }
        return net;
    }
    for (std::size_t i = 1; net.size() < count; ++i) {
        std::vector<double> c(d);
        for (std::size_t k = 0; k < d; k += 2) {
            const double u = halton(i, kPrimes[k]);
            const double v = halton(i, kPrimes[k + 1]);
            const double rad = std::sqrt(-2.0 * std::log(u));
            c[k] = rad * std::cos(2.0 * kPi * v);
            if (k + 1 < d) c[k + 1] = rad * std::sin(2.0 * kPi * v);
        }
        Point p(std::move(c));
        const double nrm = p.norm();
        if (nrm > 1e-12) net.push_back(p / nrm);
    }
    return net;
}

double cap_count_bound(std::size_t d, double epsilon) {
    return std::sqrt(2.0 * kPi * static_cast<double>(d)) / std::pow(epsilon, static_cast<double>(d) - 1.0);
}

CapPacking greedy_cap_packing(const std::vector<Point>& points, std::size_t d, double epsilon, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("cap radius must lie in (0, 1)");
    check_on_sphere(points, d);
    CapPacking pack;
    pack.d = d;
    pack.epsilon = epsilon;
    pack.phi = std::asin(epsilon);
    pack.cap_angle = 2.0 * std::asin(epsilon / 2.0);

    Rng rng(seed);
    std::vector<Point> inputs = points;
    rng.shuffle(inputs);
    const auto net_size = static_cast<std::size_t>(std::ceil(64.0 / std::pow(epsilon, static_cast<double>(d) - 1.0)));
    std::vector<Point> net = sphere_net(d, net_size);
    rng.shuffle(net);
    pack.candidates = inputs.size() + net.size();

    // Disjoint caps: centers at least two cap angles apart, i.e. chord(2 cap_angle) apart.
    const double min_sep = chord(2.0 * pack.cap_angle);
    auto offer = [&](const Point& c) {
        for (const Point& x : pack.centers) {
            if (distance(x, c) < min_sep) return;
        }
        pack.centers.push_back(c);
    };
    for (const Point& p : inputs) offer(p);
    for (const Point& p : net) offer(p);
    return pack;
}

PrimStepAudit prim_step_bound_audit(const CapPacking& packing) {
    PrimStepAudit a;
    a.chord_bound = chord(4.0 * packing.phi);
    a.literal_bound = std::sin(4.0 * packing.phi);
    if (packing.centers.size() >= 2) {
        const MstResult mst = prim_mst(packing.centers);
        for (const Edge& e : mst.tree.edges()) a.max_edge = std::max(a.max_edge, edge_length(mst.tree, e));
    }
    a.chord_pass = a.max_edge <= a.chord_bound + kTolGeom;
    a.literal_pass = a.max_edge <= a.literal_bound + kTolGeom;
    return a;
}

double optimal_cap_constant(std::size_t d) {
    const double dd = static_cast<double>(d);
    return std::pow(2.0 * std::sqrt(2.0 * kPi * dd) * (dd - 1.0), 1.0 / dd);
}

double sphere_length_bound(std::size_t d, std::size_t t) {
    const double dd = static_cast<double>(d);
    return 2.0 * optimal_cap_constant(d) * dd / (dd - 1.0) * std::pow(static_cast<double>(t), (dd - 2.0) / (dd - 1.0));
}

SphereConnection connect_on_sphere(const std::vector<Point>& points, std::size_t d, std::uint64_t seed) {
    if (d < 3) throw UnsupportedError("the sphere connector needs d >= 3");
    if (points.empty()) throw PreconditionError("no points to connect");
    check_on_sphere(points, d);
    const std::size_t t = points.size();
    SphereConnection res;
    res.forest = EmbeddedForest(d);
    res.c_min = optimal_cap_constant(d);
    res.length_bound = sphere_length_bound(d, t);
    for (const Point& p : points) res.forest.find_or_add_vertex(p, VertexKind::Terminal);
    if (t == 1) {
        res.epsilon = res.c_min;
        return res;
    }
    res.epsilon = res.c_min * std::pow(static_cast<double>(t), -1.0 / (static_cast<double>(d) - 1.0));
    if (res.epsilon > kMaxCapEpsilon) {
        res.epsilon = kMaxCapEpsilon;
        res.epsilon_clamped = true;
    }
    res.packing = greedy_cap_packing(points, d, res.epsilon, seed);
    res.k_bound = cap_count_bound(d, res.epsilon);
    res.k_pass = static_cast<double>(res.packing.centers.size()) <= res.k_bound;

    std::vector<std::size_t> center_vertex;
    for (const Point& c : res.packing.centers) center_vertex.push_back(res.forest.find_or_add_vertex(c, VertexKind::Steiner));
    const MstResult mst = prim_mst(res.packing.centers);
    for (const Edge& e : mst.tree.edges()) res.forest.add_edge(center_vertex[e.u], center_vertex[e.v]);
    res.prim = prim_step_bound_audit(res.packing);

    res.attachment_bound = chord(2.0 * res.packing.phi);
    for (const Point& p : points) {
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < res.packing.centers.size(); ++i) {
            const double dist = distance(p, res.packing.centers[i]);
            if (dist < best) {
                best = dist;
                nearest = i;
            }
        }
        res.max_attachment = std::max(res.max_attachment, best);
        const std::size_t pv = *res.forest.find_vertex(p);
        const std::size_t cv = center_vertex[nearest];
        if (pv == cv) continue;
        bool exists = false;
        for (const Edge& e : res.forest.edges()) exists = exists || (e.u == pv && e.v == cv) || (e.u == cv && e.v == pv);
        if (!exists) res.forest.add_edge(pv, cv);
    }
    res.attachment_pass = res.max_attachment <= res.attachment_bound + kTolGeom;
    res.length = forest_length(res.forest);
    res.length_pass = res.length <= res.length_bound + kTolLen;
    res.connected = res.forest.is_connected();
    return res;
}

}  // namespace steiner
