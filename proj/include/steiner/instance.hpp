#pragma once

#include <cstddef>
#include <vector>

#include "steiner/geometry.hpp"

namespace steiner {

/// Terminal set A in R^d: at least two pairwise distinct points of a common dimension.
class Instance {
public:
    Instance(std::size_t dim, std::vector<Point> terminals);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return terminals_.size(); }
    const std::vector<Point>& terminals() const noexcept { return terminals_; }
    const Point& terminal(std::size_t i) const { return terminals_.at(i); }

    /// Largest pairwise distance.
    double diameter() const;

private:
    std::size_t dim_;
    std::vector<Point> terminals_;
};

}  // namespace steiner
