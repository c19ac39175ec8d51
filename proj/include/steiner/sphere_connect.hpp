#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "steiner/forest.hpp"

namespace steiner {

/// Centers on the unit sphere S^{d-1} whose caps of Euclidean radius epsilon are pairwise
/// disjoint and which is maximal with respect to a finite candidate set.
struct CapPacking {
    std::size_t d = 3;
    double epsilon = 0.0;
    /// phi with sin(phi) = epsilon.
    double phi = 0.0;
    /// Angular radius of one cap: 2 asin(epsilon / 2).
    double cap_angle = 0.0;
    std::vector<Point> centers;
    std::size_t candidates = 0;
};

/// Chord length of the central angle theta (capped at pi).
double chord(double theta);

/// Quasi-uniform points on S^{d-1}: Fibonacci spiral for d = 3, Halton + Box-Muller otherwise.
std::vector<Point> sphere_net(std::size_t d, std::size_t count);

/// Greedy packing over the input points (offered first, shuffled) followed by a shuffled net of
/// ceil(64 / epsilon^(d-1)) points.
CapPacking greedy_cap_packing(const std::vector<Point>& points, std::size_t d, double epsilon, std::uint64_t seed);

/// sqrt(2 pi d) / epsilon^(d-1).
double cap_count_bound(std::size_t d, double epsilon);

struct PrimStepAudit {
    double max_edge = 0.0;
    /// chord(4 phi)
    double chord_bound = 0.0;
    /// sin(4 phi) read literally
    double literal_bound = 0.0;
    bool chord_pass = true;
    bool literal_pass = true;
    bool pass() const { return chord_pass; }
};

PrimStepAudit prim_step_bound_audit(const CapPacking& packing);

/// (2 sqrt(2 pi d)(d - 1))^(1/d)
double optimal_cap_constant(std::size_t d);

/// 2 c_min d / (d - 1) * t^((d - 2)/(d - 1))
double sphere_length_bound(std::size_t d, std::size_t t);

struct SphereConnection {
    EmbeddedForest forest{3};
    CapPacking packing;
    double length = 0.0;
    double c_min = 0.0;
    double epsilon = 0.0;
    /// epsilon = c_min t^(-1/(d-1)) would reach 1 for small t; it is then capped.
    bool epsilon_clamped = false;
    double length_bound = 0.0;
    bool length_pass = true;
    double k_bound = 0.0;
    bool k_pass = true;
    double max_attachment = 0.0;
    double attachment_bound = 0.0;
    bool attachment_pass = true;
    PrimStepAudit prim;
    bool connected = true;
    bool pass() const { return length_pass && k_pass && attachment_pass && prim.pass() && connected; }
};

inline constexpr double kMaxCapEpsilon = 0.99;

/// Connects t points of S^{d-1} (d >= 3): Prim tree over packing centers plus an edge from each
/// point to its nearest center.
SphereConnection connect_on_sphere(const std::vector<Point>& points, std::size_t d, std::uint64_t seed = 0);

}  // namespace steiner
