#pragma once

#include <vector>

#include "pcurv/operators.hpp"

namespace pcurv {

// Functions on a Cartesian product are plain VertexFunctions on the graph
// built by cartesian_product(g1, g2); vertex (i, j) has index
// product_vertex(g2, i, j).

/// Row slice: the function f(x, .) on the second factor.
VertexFunction slice_row(const WeightedGraph& g1, const WeightedGraph& g2,
                         const VertexFunction& f, int x);
/// Column slice: the function f(., y) on the first factor.
VertexFunction slice_col(const WeightedGraph& g1, const WeightedGraph& g2,
                         const VertexFunction& f, int y);

struct AdditivityResiduals {
  double delta;  // |Delta_p f(x,y) - Delta_p(f_y)(x) - Delta_p(f^x)(y)|
  double gamma;  // |Gamma_p f(x,y) - Gamma_p(f_y)(x) - Gamma_p(f^x)(y)|
};

/// Residuals of the product additivity identities for Delta_p and Gamma_p.
/// Both vanish (up to roundoff) on unit-measure products.
AdditivityResiduals check_additivity(const WeightedGraph& g1, const WeightedGraph& g2,
                                     const VertexFunction& f, int x, int y, PValue p);

struct PairTerm {
  int xi;  // neighbor of x in g1
  int yk;  // neighbor of y in g2
  double value;
};

struct GapBreakdown {
  /// The reported gap; equals the per-pair sum when the closed form applies,
  /// otherwise the direct operator value.
  double gap = 0.0;
  /// Per-neighbor-pair closed-form terms; empty when a factor is not
  /// unit-weighted/unit-measured.
  std::vector<PairTerm> per_pair;
  /// Direct operator evaluation of
  /// Gamma_{2,p}(f)(x,y) - Gamma_{2,p}(f^x)(y) - Gamma_{2,p}(f_y)(x).
  double direct = 0.0;
  bool closed_form = false;
};

/// Per-pair term of the product decomposition gap in the edge-difference
/// variables A = f(x_i,y)-f(x,y), B = f(x,y_k)-f(x,y),
/// C = f(x_i,y_k)-f(x_i,y), D = f(x_i,y_k)-f(x,y_k), which always satisfy
/// C - B = D - A:
///   (1/(2p)) (|A|^(p-2)(|C|^p - |B|^p) + |B|^(p-2)(|D|^p - |A|^p))
/// - (1/(2(p-1))) (phi(A) phi(C) - 2 phi(A) phi(B) + phi(B) phi(D)).
double product_pair_gap_term(double A, double B, double C, double D, PValue p);

/// Decomposition gap at (x, y), computed two ways on unit factors (direct
/// operators and the per-pair closed form); a disagreement beyond 1e-10
/// indicates an implementation fault and throws std::logic_error.
GapBreakdown gamma2_decomposition_gap(const WeightedGraph& g1, const WeightedGraph& g2,
                                      const VertexFunction& f, int x, int y, PValue p);

/// The witness with A_i = 1, B_k = 0, C_ik = 1, D_ik = 2 on every neighbor
/// pair, extended constantly outward: f(u, v) is 0 when u = x, otherwise 1
/// when v = y and 2 when v != y.
VertexFunction counterexample_function(const WeightedGraph& g1, const WeightedGraph& g2,
                                       int x, int y);

/// True iff the witness makes the decomposition gap negative, i.e.
/// Gamma_{2,p}(f)(x,y) < Gamma_{2,p}(f^x)(y) + Gamma_{2,p}(f_y)(x).
/// Holds for every p > 2 with gap = -deg(x) deg(y) / (2p(p-1)).
bool verify_product_superadditivity_failure(const WeightedGraph& g1, const WeightedGraph& g2,
                                            int x, int y, PValue p);

/// Quarter-sum form of the gap at p = 2:
/// sum over pairs of (1/4)((A_i - D_ik)^2 + (C_ik - B_k)^2).
double quarter_sum_gap(const WeightedGraph& g1, const WeightedGraph& g2,
                       const VertexFunction& f, int x, int y);

}  // namespace pcurv
