#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "steiner/instance.hpp"

namespace steiner {

/// n points on the circle of radius r about the origin such that at most one of the chords
/// between circular neighbours is longer than r. Consecutive angular gaps are at least 0.05.
Instance cocircular_instance(int n, double radius, std::uint64_t seed);

/// n points uniform in the unit ball of R^d.
Instance random_ball_instance(std::size_t d, int n, std::uint64_t seed);

/// n points uniform on the unit sphere of R^d.
std::vector<Point> random_sphere_points(std::size_t d, int n, std::uint64_t seed);

}  // namespace steiner
