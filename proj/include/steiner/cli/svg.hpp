#pragma once

#include <optional>
#include <string>

#include "steiner/forest.hpp"

namespace steiner::cli {

struct SvgOptions {
    double size = 600.0;
    /// Optional circle drawn underneath the tree (center, radius).
    std::optional<std::pair<Point, double>> circle;
    std::string title;
};

/// Planar forest as SVG: edges stroked black, terminals red, branch points blue, clipping
/// boundary points green.
std::string render_svg(const EmbeddedForest& f, const SvgOptions& opts = {});

}  // namespace steiner::cli
