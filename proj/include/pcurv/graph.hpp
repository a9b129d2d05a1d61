#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcurv/errors.hpp"

namespace pcurv {

struct VertexId {
  std::string label;
  int index = -1;
};

struct Neighbor {
  int to;
  double w;
};

struct Edge {
  int u;
  int v;
  double w;
};

/// Undirected weighted graph with positive vertex measures.
///
/// Dense integer indices back every evaluation path; string labels exist only
/// at the I/O boundary. Instances are immutable once built (see GraphBuilder),
/// so they can be shared freely across concurrent evaluations.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& label(int v) const;
  VertexId vertex(int v) const;
  /// Index of the vertex with the given label, or -1 when absent.
  int find(std::string_view label) const;
  /// Like find(), but throws UnknownVertex when absent.
  int require(std::string_view label) const;
  void require_vertex(int v) const;

  double mu(int v) const;
  int degree(int v) const;
  std::span<const Neighbor> neighbors(int v) const;
  /// Weight of the edge {u, v}; 0 when the pair is not an edge.
  double weight(int u, int v) const;
  bool has_edge(int u, int v) const { return weight(u, v) > 0.0; }

  /// Every undirected edge exactly once, in construction order.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> mu_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<Edge> edges_;
};

/// Accumulates vertices and undirected edges, validates the invariants
/// (positive measures, positive weights, no self-loops, no duplicate edges)
/// and produces an immutable WeightedGraph.
class GraphBuilder {
 public:
  int add_vertex(std::string label, double mu = 1.0);
  void add_edge(int u, int v, double w = 1.0);
  void add_edge(std::string_view ulabel, std::string_view vlabel, double w = 1.0);

  int vertex_count() const { return static_cast<int>(g_.labels_.size()); }
  int find(std::string_view label) const;

  WeightedGraph build();

  /// Builds a graph whose per-vertex adjacency order is given verbatim.
  /// Used by extract_ball2_inc so that ball evaluations sum edge terms in
  /// exactly the same order as evaluations on the host graph.
  static WeightedGraph from_adjacency(std::vector<std::string> labels,
                                      std::vector<double> mu,
                                      std::vector<std::vector<Neighbor>> adj);

 private:
  WeightedGraph g_;
  bool built_ = false;
};

// Standard families. All use unit weights and unit measures.
WeightedGraph make_path(int n);
WeightedGraph make_cycle(int d);
WeightedGraph make_star(int center_degree);
WeightedGraph make_complete(int n);
WeightedGraph make_hypercube(int dim);

/// Cartesian product. Vertex (i, j) gets index i * |V2| + j and label
/// "<l1>|<l2>"; measures multiply and each edge keeps its factor weight.
WeightedGraph cartesian_product(const WeightedGraph& g1, const WeightedGraph& g2);

/// Index of the product vertex (i, j) under the cartesian_product convention.
inline int product_vertex(const WeightedGraph& g2, int i, int j) {
  return i * g2.vertex_count() + j;
}

/// Combinatorial (hop) distances from source; -1 for unreachable vertices.
std::vector<int> hop_distances(const WeightedGraph& g, int source);

/// A real-valued function on (a subset of) the vertices of one graph.
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(int size);
  static VertexFunction constant(int size, double value);

  int size() const { return static_cast<int>(values_.size()); }
  bool is_defined(int v) const;
  bool fully_defined() const;
  double operator[](int v) const;
  void set(int v, double value);

 private:
  std::vector<double> values_;
  std::vector<char> defined_;
};

/// The incomplete 2-ball around a center vertex: the induced subgraph of the
/// radius-2 ball with every edge between two 2-sphere vertices removed. This
/// is the exact support on which Gamma_{2,p} at the center depends.
///
/// Local indices are laid out as [center, 1-sphere..., 2-sphere...], and each
/// local adjacency list preserves the host graph's neighbor order, so
/// operator evaluations on the ball reproduce host-graph evaluations bit for
/// bit.
struct LocalBall {
  WeightedGraph graph;
  std::vector<int> source_index;  // local index -> host graph index
  int s1_count = 0;
  int s2_count = 0;

  int center() const { return 0; }
  int size() const { return graph.vertex_count(); }
  std::span<const int> s1_sources() const {
    return std::span<const int>(source_index).subspan(1, s1_count);
  }

  /// Restriction of a host-graph function to the ball's local indices.
  VertexFunction restricted(const VertexFunction& f) const;
};

LocalBall extract_ball2_inc(const WeightedGraph& g, int x);

}  // namespace pcurv
