#pragma once

#include <string>
#include <string_view>

#include "pcurv/graph.hpp"

namespace pcurv {

/// Parses the graph JSON document
///   { "vertices": [ {"id": "<label>", "mu": <positive, default 1>} ... ],
///     "edges":    [ {"u": "<id>", "v": "<id>", "w": <positive, default 1>} ... ] }
/// Each undirected edge must appear exactly once; orientation of (u, v) is
/// immaterial. Throws ParseError on malformed documents, nonpositive
/// measures or weights, self-loops, unknown endpoints and duplicate edges.
WeightedGraph parse_graph(std::string_view text);

/// Inverse of parse_graph up to label order: parse(serialize(g)) == g.
std::string serialize_graph(const WeightedGraph& g);

/// Parses a function document { "values": { "<label>": <number> ... } }
/// against the given graph. Values may cover any subset of the vertices;
/// unknown labels are an error.
VertexFunction parse_vertex_function(const WeightedGraph& g, std::string_view text);

bool graphs_equal(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace pcurv
