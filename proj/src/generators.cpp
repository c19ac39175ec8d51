#include "steiner/generators.hpp"

#include <cmath>

#include "steiner/errors.hpp"
#include "steiner/random.hpp"

namespace steiner {

Instance cocircular_instance(int n, double radius, std::uint64_t seed) {
    if (n < 2) throw PreconditionError("need at least two points");
    if (!(radius > 0.0)) throw PreconditionError("radius must be positive");
    constexpr double kMinGap = 0.05;
    constexpr int kAttempts = 10000;
    Rng rng(seed);
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        // n - 1 gaps of at most pi/3 (chord <= r); the closing gap takes the rest.
        std::vector<double> gaps;
        double used = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            gaps.push_back(rng.uniform(kMinGap, kPi / 3.0));
            used += gaps.back();
        }
        if (2.0 * kPi - used < kMinGap) continue;
        double angle = rng.uniform(0.0, 2.0 * kPi);
        std::vector<Point> pts{Point{radius * std::cos(angle), radius * std::sin(angle)}};
        for (double g : gaps) {
            angle += g;
            pts.push_back(Point{radius * std::cos(angle), radius * std::sin(angle)});
        }
        int long_chords = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (distance(pts[i], pts[(i + 1) % pts.size()]) > radius) ++long_chords;
        if (long_chords > 1) continue;
        return Instance(2, std::move(pts));
    }
    throw PreconditionError("no admissible cocircular configuration for n = " + std::to_string(n));
}

Instance random_ball_instance(std::size_t d, int n, std::uint64_t seed) {
    if (n < 2) throw PreconditionError("need at least two points");
    Rng rng(seed);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.in_ball(d));
    return Instance(d, std::move(pts));
}

std::vector<Point> random_sphere_points(std::size_t d, int n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("need at least one point");
    Rng rng(seed);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.direction(d));
    return pts;
}

}  // namespace steiner
