#include "pcurv/operators.hpp"

#include <cmath>

namespace pcurv {

namespace {

double pow_abs(double t, double e) { return std::pow(std::fabs(t), e); }

}  // namespace

double phi_p(double t, PValue p) {
  if (t == 0.0) return 0.0;
  return pow_abs(t, p.get() - 2.0) * t;
}

double abs_power_term(double t, double cofactor, PValue p) {
  if (t == 0.0) {
    if (p.get() > 2.0) return 0.0;
    if (p.get() == 2.0) return cofactor;
    if (cofactor == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), cofactor);
  }
  return pow_abs(t, p.get() - 2.0) * cofactor;
}

double delta_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p) {
  g.require_vertex(x);
  const double fx = f[x];
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) acc += nb.w * phi_p(f[nb.to] - fx, p);
  return acc / g.mu(x);
}

double gamma_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p) {
  g.require_vertex(x);
  const double fx = f[x];
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) acc += nb.w * pow_abs(f[nb.to] - fx, p.get());
  return (p.get() - 1.0) / (2.0 * g.mu(x)) * acc;
}

double gamma_p_bilinear(const WeightedGraph& g, const VertexFunction& u,
                        const VertexFunction& f, const VertexFunction& h, int x, PValue p) {
  g.require_vertex(x);
  const double ux = u[x];
  const double fx = f[x];
  const double hx = h[x];
  double acc = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    const double cof = (f[nb.to] - fx) * (h[nb.to] - hx);
    acc += nb.w * abs_power_term(u[nb.to] - ux, cof, p);
  }
  return (p.get() - 1.0) / (2.0 * g.mu(x)) * acc;
}

double gamma2_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p) {
  g.require_vertex(x);
  const double pd = p.get();
  const double fx = f[x];
  const double gpx = gamma_p(g, f, x, p);

  double first = 0.0;
  VertexFunction lap(g.vertex_count());
  lap.set(x, delta_p(g, f, x, p));
  for (const Neighbor& nb : g.neighbors(x)) {
    first += nb.w * abs_power_term(f[nb.to] - fx, gamma_p(g, f, nb.to, p) - gpx, p);
    lap.set(nb.to, delta_p(g, f, nb.to, p));
  }
  first /= pd * (pd - 1.0) * g.mu(x);

  const double second = gamma_p_bilinear(g, f, f, lap, x, p) / ((pd - 1.0) * (pd - 1.0));
  return first - second;
}

double cd_gap(const WeightedGraph& g, const VertexFunction& f, int x, PValue p,
              Dimension m, double K) {
  double value = gamma2_p(g, f, x, p);
  const double coef = m.coefficient(p);
  if (coef != 0.0) {
    const double d = delta_p(g, f, x, p);
    value -= coef * d * d;
  }
  if (K != 0.0) {
    const double pd = p.get();
    value -= K * std::pow(gamma_p(g, f, x, p), (2.0 * pd - 2.0) / pd);
  }
  return value;
}

double cd_ratio(const WeightedGraph& g, const VertexFunction& f, int x, PValue p,
                Dimension m) {
  const double gp = gamma_p(g, f, x, p);
  if (gp == 0.0)
    throw DegenerateFunction("Gamma_p vanishes at the base vertex; the ratio is undefined");
  double num = gamma2_p(g, f, x, p);
  const double coef = m.coefficient(p);
  if (coef != 0.0) {
    const double d = delta_p(g, f, x, p);
    num -= coef * d * d;
  }
  const double pd = p.get();
  return num / std::pow(gp, (2.0 * pd - 2.0) / pd);
}

}  // namespace pcurv
