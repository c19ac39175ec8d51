#pragma once

#include <istream>
#include <string>
#include <vector>

#include "steiner/instance.hpp"

namespace steiner::cli {

/// Reads the ".pts" format: "d n" on the first data line, then n points of d coordinates.
/// '#' starts a comment. Throws ParseError with a line number on malformed input.
Instance parse_pts(std::istream& in);
Instance read_pts(const std::string& path);

/// Canonical text form; coordinates use the shortest round-trip representation.
std::string format_pts(const Instance& inst, const std::string& comment = "");
std::string format_points(std::size_t d, const std::vector<Point>& points, const std::string& comment = "");

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace steiner::cli
