#pragma once

#include <string>

#include "json.hpp"
#include "steiner/analysis.hpp"
#include "steiner/forest.hpp"

namespace steiner::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Point& p);
/// Vertices with kind and coordinates, plus the edge list.
Json to_json(const EmbeddedForest& f);
/// Measured value, bound and PASS / FAIL / INFO.
Json to_json(const Verdict& v);
Json verdict(const std::string& name, double measured, double bound, bool pass);

/// 64-bit FNV-1a, as 16 hex digits.
std::string digest(const std::string& text);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace steiner::cli
