#pragma once

#include "pcurv/graph.hpp"

namespace pcurv {

// Classical (p = 2) operators on their own code path, kept deliberately
// independent of the p-deformed implementations so they can serve as an
// oracle for the p = 2 reduction.

/// (1/mu(x)) sum_{y ~ x} w_xy (f(y) - f(x)).
double classical_delta(const WeightedGraph& g, const VertexFunction& f, int x);

/// (1/(2 mu(x))) sum_{y ~ x} w_xy (f(y) - f(x)) (h(y) - h(x)).
double classical_gamma(const WeightedGraph& g, const VertexFunction& f,
                       const VertexFunction& h, int x);

/// (1/2) Delta Gamma(f, f)(x) - Gamma(f, Delta f)(x).
double classical_gamma2(const WeightedGraph& g, const VertexFunction& f, int x);

}  // namespace pcurv
