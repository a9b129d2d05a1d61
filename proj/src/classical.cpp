#include "pcurv/classical.hpp"

namespace pcurv {

double classical_delta(const WeightedGraph& g, const VertexFunction& f, int x) {
  g.require_vertex(x);
  const double fx = f[x];
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) acc += nb.w * (f[nb.to] - fx);
  return acc / g.mu(x);
}

double classical_gamma(const WeightedGraph& g, const VertexFunction& f,
                       const VertexFunction& h, int x) {
  g.require_vertex(x);
  const double fx = f[x];
  const double hx = h[x];
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) acc += nb.w * (f[nb.to] - fx) * (h[nb.to] - hx);
  return acc / (2.0 * g.mu(x));
}

double classical_gamma2(const WeightedGraph& g, const VertexFunction& f, int x) {
  g.require_vertex(x);
  // Gamma(f, f) and Delta f are needed on the 1-ball of x only.
  VertexFunction energy(g.vertex_count());
  VertexFunction lap(g.vertex_count());
  energy.set(x, classical_gamma(g, f, f, x));
  lap.set(x, classical_delta(g, f, x));
  for (const Neighbor& nb : g.neighbors(x)) {
    energy.set(nb.to, classical_gamma(g, f, f, nb.to));
    lap.set(nb.to, classical_delta(g, f, nb.to));
  }
  return 0.5 * classical_delta(g, energy, x) - classical_gamma(g, f, lap, x);
}

}  // namespace pcurv
