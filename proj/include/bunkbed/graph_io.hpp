#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bunkbed/graph.hpp"
#include "bunkbed/numbers.hpp"

namespace bunkbed {

// Text graph format (LF line endings):
//   line 1: "n m"
//   m lines: "u v" or "u v w", w an integer or rational "p/q"
//   optional bunkbed weight section: a line "%vertical" followed by n lines
//   with one weight each (vertex order 0..n-1). Horizontal weights are the
//   per-edge w values, shared by both layers.
// '#' starts a comment (whole line or trailing); blank lines are skipped.
struct GraphFile {
    BaseGraph graph;
    // absent => unweighted file; individual missing weights default to 1
    std::optional<std::vector<Rational>> edge_weights;
    // present iff the %vertical section exists
    std::optional<std::vector<Rational>> vertical_weights;
};

GraphFile parse_graph_text(std::string_view text);
GraphFile read_graph_file(const std::string& path);

// Canonical serialization: exactly the format above, weights always
// written, no comments. Byte-stable for identical inputs.
std::string serialize_graph(const BaseGraph& graph,
                            const std::vector<Rational>* edge_weights = nullptr,
                            const std::vector<Rational>* vertical_weights = nullptr);

// FNV-1a 64 over the canonical serialization; used as the instance digest.
std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

} // namespace bunkbed
