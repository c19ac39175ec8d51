#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "steiner/geometry.hpp"

namespace steiner {

/// Portable random source: mt19937_64 output is converted to doubles by hand so that streams are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal (Box-Muller).
    double normal();

    /// Uniform direction on the unit sphere of R^d.
    Point direction(std::size_t d);
    /// Uniform point in the ball of radius r around the origin.
    Point in_ball(std::size_t d, double r = 1.0);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace steiner
