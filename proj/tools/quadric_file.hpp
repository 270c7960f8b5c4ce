#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "quadhess/quadric.hpp"

namespace quadhess::cli {

/// "exact" | "float" | "complex".
ScalarKind parse_mode(std::string_view text);

/// Reads a quadric file:
///   {"n": 1, "kind": "rational", "entries": [["1","0","0"], ...]}
/// Exact mode accepts "p/q" strings and JSON integers; float mode also takes
/// JSON numbers; complex mode additionally takes [re, im] pairs. A file whose
/// declared kind cannot be represented in the requested mode is rejected.
/// All failures throw Error(parse).
template <Scalar T>
QuadricSurface<T> quadric_from_json(const nlohmann::json& doc);

template <Scalar T>
QuadricSurface<T> read_quadric_file(const std::string& path);

/// Comma-separated coordinates. Exact mode: rational syntax only ("3/5",
/// "-2"); float mode: decimal syntax only; complex mode: a JSON-style list
/// whose items are numbers or [re, im] pairs, e.g. "[0.3,0.1],0.2".
template <Scalar T>
ColVector<T> parse_point(std::string_view text);

}  // namespace quadhess::cli
