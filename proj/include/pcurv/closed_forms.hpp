#pragma once

#include "pcurv/operators.hpp"

namespace pcurv {

struct StarLeafParams {
  int center_degree;  // D >= 1; the hub has D leaves, one of which is the base vertex
  PValue p;
};

/// Exact infinite-dimension curvature at a leaf of a star whose hub has
/// degree D:
///   (4/(p-1)^2) ((p-1)/2)^(2/p) (1/(p-1) - (D-1)/(2p(p-1))).
/// Linear and decreasing in D; negative exactly when D > 2p + 1. The formula
/// is established for p >= 2; evaluation is allowed for every p > 1.
double star_leaf_curvature(const StarLeafParams& params);
double star_leaf_curvature(int center_degree, PValue p);

/// Exact infinite-dimension curvature at a leaf of a path with at least two
/// edges: (1/(2p) + 1/(2(p-1))) (2/(p-1))^((2p-2)/p). Positive for all p > 1.
double path_leaf_curvature(PValue p);

struct ScalarMin {
  double argmin;
  double value;
};

/// g(y) = (1/(2p)) y^p - (1/(2(p-1))) y^(p-1) for y >= 0.
double aux_g(double y, PValue p);
/// Minimum of aux_g over y >= 0: attained at y = 1 with value -1/(2p(p-1)).
ScalarMin aux_g_min(PValue p);

/// h(z) = (1/(2p)) x^(p-2) z^p - (1/(2(p-1))) x^(p-1) z^(p-1) for z, x >= 0.
double aux_h(double z, double x_param, PValue p);
/// Minimum of aux_h over z >= 0: attained at z = x with value
/// -x^(2p-2)/(2p(p-1)).
ScalarMin aux_h_min(double x_param, PValue p);

/// 2p + 1: star_leaf_curvature(D, p) < 0 exactly when D > 2p + 1.
double negativity_threshold(PValue p);

/// Closed-form Gamma_{2,p} at a middle vertex of a path, in the
/// edge-difference variables A, B (differences to the two neighbors) and
/// C, D (differences continuing outward):
///   (1/(2p)) (|A|^(p-2)|C|^p - |A|^(p-2)|B|^p + |B|^(p-2)|D|^p - |B|^(p-2)|A|^p)
/// + (1/(2(p-1))) (2|A|^(2p-2) + 2|B|^(2p-2) + 2|A|^(p-2)|B|^(p-2) A B
///                 - |A|^(p-2)|C|^(p-2) A C - |B|^(p-2)|D|^(p-2) B D).
double gamma2_path_middle(double A, double B, double C, double D, PValue p);

}  // namespace pcurv
