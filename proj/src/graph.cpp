#include "pcurv/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

namespace pcurv {

const std::string& WeightedGraph::label(int v) const {
  require_vertex(v);
  return labels_[v];
}

VertexId WeightedGraph::vertex(int v) const {
  require_vertex(v);
  return VertexId{labels_[v], v};
}

int WeightedGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  return it == index_.end() ? -1 : it->second;
}

int WeightedGraph::require(std::string_view label) const {
  const int v = find(label);
  if (v < 0) throw UnknownVertex("unknown vertex label '" + std::string(label) + "'");
  return v;
}

void WeightedGraph::require_vertex(int v) const {
  if (v < 0 || v >= vertex_count())
    throw UnknownVertex("vertex index " + std::to_string(v) + " out of range");
}

double WeightedGraph::mu(int v) const {
  require_vertex(v);
  return mu_[v];
}

int WeightedGraph::degree(int v) const {
  require_vertex(v);
  return static_cast<int>(adj_[v].size());
}

std::span<const Neighbor> WeightedGraph::neighbors(int v) const {
  require_vertex(v);
  return adj_[v];
}

double WeightedGraph::weight(int u, int v) const {
  require_vertex(u);
  require_vertex(v);
  for (const Neighbor& nb : adj_[u])
    if (nb.to == v) return nb.w;
  return 0.0;
}

int GraphBuilder::add_vertex(std::string label, double mu) {
  if (built_) throw std::logic_error("GraphBuilder already consumed");
  if (label.empty()) throw ParseError("vertex label must be non-empty");
  if (g_.index_.count(label)) throw ParseError("duplicate vertex label '" + label + "'");
  if (!(mu > 0.0)) throw ParseError("vertex measure must be positive at '" + label + "'");
  const int idx = static_cast<int>(g_.labels_.size());
  g_.index_.emplace(label, idx);
  g_.labels_.push_back(std::move(label));
  g_.mu_.push_back(mu);
  g_.adj_.emplace_back();
  return idx;
}

void GraphBuilder::add_edge(int u, int v, double w) {
  if (built_) throw std::logic_error("GraphBuilder already consumed");
  const int n = static_cast<int>(g_.labels_.size());
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw UnknownVertex("edge endpoint out of range");
  if (u == v) throw ParseError("self-loop at '" + g_.labels_[u] + "'");
  if (!(w > 0.0)) throw ParseError("edge weight must be positive");
  for (const Neighbor& nb : g_.adj_[u])
    if (nb.to == v)
      throw ParseError("duplicate edge {" + g_.labels_[u] + ", " + g_.labels_[v] + "}");
  g_.adj_[u].push_back({v, w});
  g_.adj_[v].push_back({u, w});
  g_.edges_.push_back({u, v, w});
}

void GraphBuilder::add_edge(std::string_view ulabel, std::string_view vlabel, double w) {
  const int u = find(ulabel);
  const int v = find(vlabel);
  if (u < 0) throw UnknownVertex("unknown vertex label '" + std::string(ulabel) + "'");
  if (v < 0) throw UnknownVertex("unknown vertex label '" + std::string(vlabel) + "'");
  add_edge(u, v, w);
}

int GraphBuilder::find(std::string_view label) const {
  auto it = g_.index_.find(std::string(label));
  return it == g_.index_.end() ? -1 : it->second;
}

WeightedGraph GraphBuilder::build() {
  if (built_) throw std::logic_error("GraphBuilder already consumed");
  built_ = true;
  return std::move(g_);
}

WeightedGraph GraphBuilder::from_adjacency(std::vector<std::string> labels,
                                           std::vector<double> mu,
                                           std::vector<std::vector<Neighbor>> adj) {
  WeightedGraph g;
  const int n = static_cast<int>(labels.size());
  for (int v = 0; v < n; ++v) g.index_.emplace(labels[v], v);
  g.labels_ = std::move(labels);
  g.mu_ = std::move(mu);
  g.adj_ = std::move(adj);
  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < n; ++v)
    for (const Neighbor& nb : g.adj_[v]) {
      auto key = std::minmax(v, nb.to);
      if (seen.insert({key.first, key.second}).second)
        g.edges_.push_back({key.first, key.second, nb.w});
    }
  return g;
}

namespace {

std::string dense_label(int i) { return "v" + std::to_string(i); }

}  // namespace

WeightedGraph make_path(int n) {
  if (n < 2) throw std::invalid_argument("make_path: need at least 2 vertices");
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex(dense_label(i));
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return b.build();
}

WeightedGraph make_cycle(int d) {
  if (d < 3) throw std::invalid_argument("make_cycle: need at least 3 vertices");
  GraphBuilder b;
  for (int i = 0; i < d; ++i) b.add_vertex(dense_label(i));
  for (int i = 0; i < d; ++i) b.add_edge(i, (i + 1) % d);
  return b.build();
}

WeightedGraph make_star(int center_degree) {
  if (center_degree < 1) throw std::invalid_argument("make_star: center degree must be >= 1");
  GraphBuilder b;
  b.add_vertex("c");
  for (int i = 1; i <= center_degree; ++i) {
    b.add_vertex("z" + std::to_string(i));
    b.add_edge(0, i);
  }
  return b.build();
}

WeightedGraph make_complete(int n) {
  if (n < 1) throw std::invalid_argument("make_complete: need at least 1 vertex");
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex(dense_label(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return b.build();
}

WeightedGraph make_hypercube(int dim) {
  if (dim < 1 || dim > 12) throw std::invalid_argument("make_hypercube: dimension must be in [1, 12]");
  GraphBuilder base;
  base.add_vertex("0");
  base.add_vertex("1");
  base.add_edge(0, 1);
  WeightedGraph q = base.build();
  for (int k = 1; k < dim; ++k) {
    GraphBuilder b2;
    b2.add_vertex("0");
    b2.add_vertex("1");
    b2.add_edge(0, 1);
    q = cartesian_product(q, b2.build());
  }
  return q;
}

WeightedGraph cartesian_product(const WeightedGraph& g1, const WeightedGraph& g2) {
  const int n1 = g1.vertex_count();
  const int n2 = g2.vertex_count();
  GraphBuilder b;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      b.add_vertex(g1.label(i) + "|" + g2.label(j), g1.mu(i) * g2.mu(j));
  // Moves along the second factor first, then along the first.
  for (int i = 0; i < n1; ++i)
    for (const Edge& e : g2.edges()) b.add_edge(i * n2 + e.u, i * n2 + e.v, e.w);
  for (const Edge& e : g1.edges())
    for (int j = 0; j < n2; ++j) b.add_edge(e.u * n2 + j, e.v * n2 + j, e.w);
  return b.build();
}

std::vector<int> hop_distances(const WeightedGraph& g, int source) {
  g.require_vertex(source);
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(v))
      if (dist[nb.to] < 0) {
        dist[nb.to] = dist[v] + 1;
        queue.push_back(nb.to);
      }
  }
  return dist;
}

VertexFunction::VertexFunction(int size)
    : values_(static_cast<std::size_t>(size), 0.0),
      defined_(static_cast<std::size_t>(size), 0) {
  if (size < 0) throw std::invalid_argument("VertexFunction: negative size");
}

VertexFunction VertexFunction::constant(int size, double value) {
  VertexFunction f(size);
  for (int v = 0; v < size; ++v) f.set(v, value);
  return f;
}

bool VertexFunction::is_defined(int v) const {
  return v >= 0 && v < size() && defined_[v];
}

bool VertexFunction::fully_defined() const {
  for (char d : defined_)
    if (!d) return false;
  return true;
}

double VertexFunction::operator[](int v) const {
  if (v < 0 || v >= size())
    throw UnknownVertex("function index " + std::to_string(v) + " out of range");
  if (!defined_[v])
    throw MissingValue("function has no value at vertex index " + std::to_string(v));
  return values_[v];
}

void VertexFunction::set(int v, double value) {
  if (v < 0 || v >= size())
    throw UnknownVertex("function index " + std::to_string(v) + " out of range");
  values_[v] = value;
  defined_[v] = 1;
}

VertexFunction LocalBall::restricted(const VertexFunction& f) const {
  VertexFunction out(size());
  for (int v = 0; v < size(); ++v) out.set(v, f[source_index[v]]);
  return out;
}

LocalBall extract_ball2_inc(const WeightedGraph& g, int x) {
  g.require_vertex(x);

  LocalBall ball;
  std::vector<int> local_of(g.vertex_count(), -1);
  auto admit = [&](int host) {
    local_of[host] = static_cast<int>(ball.source_index.size());
    ball.source_index.push_back(host);
  };

  admit(x);
  for (const Neighbor& nb : g.neighbors(x)) admit(nb.to);
  ball.s1_count = static_cast<int>(ball.source_index.size()) - 1;
  for (int s1 = 1; s1 <= ball.s1_count; ++s1)
    for (const Neighbor& nb : g.neighbors(ball.source_index[s1]))
      if (local_of[nb.to] < 0) admit(nb.to);
  ball.s2_count = static_cast<int>(ball.source_index.size()) - 1 - ball.s1_count;

  // Per-vertex adjacency keeps the host order; edges between two 2-sphere
  // vertices are the spherical edges and are dropped.
  const int m = static_cast<int>(ball.source_index.size());
  std::vector<std::string> labels(m);
  std::vector<double> mu(m);
  std::vector<std::vector<Neighbor>> adj(m);
  auto in_core = [&](int local) { return local <= ball.s1_count; };
  for (int v = 0; v < m; ++v) {
    const int host = ball.source_index[v];
    labels[v] = g.label(host);
    mu[v] = g.mu(host);
    for (const Neighbor& nb : g.neighbors(host)) {
      const int lw = local_of[nb.to];
      if (lw < 0) continue;
      if (!in_core(v) && !in_core(lw)) continue;
      adj[v].push_back({lw, nb.w});
    }
  }
  ball.graph = GraphBuilder::from_adjacency(std::move(labels), std::move(mu), std::move(adj));
  return ball;
}

}  // namespace pcurv
