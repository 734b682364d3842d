#pragma once

#include <string>
#include <string_view>

#include "stallings/graph.hpp"

namespace stallings {

/// Graphviz rendering. The basepoint is drawn as a double circle; edge labels
/// use the word alphabet (x, y, z or x1, x2, ...).
std::string to_dot(const LabeledGraph& g, std::string_view name = "G");
std::string to_dot(const StallingsGraph& g, std::string_view name = "G");

/// Reads the edge-list fixture format:
///
///     # comment
///     rank 2
///     base 0
///     edge 0 1 x
///     edge 3 0 x
///
/// `vertices N` is optional; otherwise the vertex count is one more than the
/// largest id mentioned. Labels use the word syntax for a single positive
/// generator. Throws MalformedInput.
LabeledGraph parse_graph(std::string_view text);

}  // namespace stallings
