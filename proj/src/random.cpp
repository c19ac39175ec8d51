#include "steiner/random.hpp"

#include <cmath>
#include <limits>

namespace steiner {

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

double Rng::normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
}

Point Rng::direction(std::size_t d) {
    for (;;) {
        std::vector<double> c(d);
        double s = 0.0;
        for (double& x : c) {
            x = normal();
            s += x * x;
        }
        if (s < 1e-20) continue;
        const double inv = 1.0 / std::sqrt(s);
        for (double& x : c) x *= inv;
        return Point(std::move(c));
    }
}

Point Rng::in_ball(std::size_t d, double r) {
    const double radius = r * std::pow(uniform(), 1.0 / static_cast<double>(d));
    return direction(d) * radius;
}

}  // namespace steiner
