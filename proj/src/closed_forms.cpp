#include "pcurv/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace pcurv {

namespace {

double pow_abs(double t, double e) { return std::pow(std::fabs(t), e); }

}  // namespace

double star_leaf_curvature(const StarLeafParams& params) {
  return star_leaf_curvature(params.center_degree, params.p);
}

double star_leaf_curvature(int center_degree, PValue p) {
  if (center_degree < 1) throw std::invalid_argument("center degree must be >= 1");
  const double pd = p.get();
  const double scale = 4.0 / ((pd - 1.0) * (pd - 1.0)) * std::pow((pd - 1.0) / 2.0, 2.0 / pd);
  return scale * (1.0 / (pd - 1.0) - (center_degree - 1.0) / (2.0 * pd * (pd - 1.0)));
}

double path_leaf_curvature(PValue p) {
  const double pd = p.get();
  const double minimum = 1.0 / (2.0 * pd) + 1.0 / (2.0 * (pd - 1.0));
  return minimum * std::pow(2.0 / (pd - 1.0), (2.0 * pd - 2.0) / pd);
}

double aux_g(double y, PValue p) {
  if (y < 0.0) throw std::invalid_argument("aux_g: y must be >= 0");
  const double pd = p.get();
  return std::pow(y, pd) / (2.0 * pd) - std::pow(y, pd - 1.0) / (2.0 * (pd - 1.0));
}

ScalarMin aux_g_min(PValue p) {
  const double pd = p.get();
  return {1.0, -1.0 / (2.0 * pd * (pd - 1.0))};
}

double aux_h(double z, double x_param, PValue p) {
  if (z < 0.0 || x_param < 0.0) throw std::invalid_argument("aux_h: arguments must be >= 0");
  if (x_param == 0.0) return 0.0;
  const double pd = p.get();
  return std::pow(x_param, pd - 2.0) * std::pow(z, pd) / (2.0 * pd) -
         std::pow(x_param, pd - 1.0) * std::pow(z, pd - 1.0) / (2.0 * (pd - 1.0));
}

ScalarMin aux_h_min(double x_param, PValue p) {
  if (x_param < 0.0) throw std::invalid_argument("aux_h_min: x must be >= 0");
  const double pd = p.get();
  return {x_param, -std::pow(x_param, 2.0 * pd - 2.0) / (2.0 * pd * (pd - 1.0))};
}

double negativity_threshold(PValue p) { return 2.0 * p.get() + 1.0; }

double gamma2_path_middle(double A, double B, double C, double D, PValue p) {
  const double pd = p.get();
  // Standalone |t|^(p-2) factors follow the same zero conventions as the
  // operator evaluations (1 at p == 2, 0 for p > 2, infinite for p < 2).
  auto sf = [pd](double t) {
    if (t == 0.0) {
      if (pd > 2.0) return 0.0;
      if (pd == 2.0) return 1.0;
      return std::numeric_limits<double>::infinity();
    }
    return pow_abs(t, pd - 2.0);
  };
  auto phi = [pd](double t) { return t == 0.0 ? 0.0 : pow_abs(t, pd - 2.0) * t; };

  const double first = (sf(A) * pow_abs(C, pd) - sf(A) * pow_abs(B, pd) +
                        sf(B) * pow_abs(D, pd) - sf(B) * pow_abs(A, pd)) /
                       (2.0 * pd);
  const double second = (2.0 * pow_abs(A, 2.0 * pd - 2.0) + 2.0 * pow_abs(B, 2.0 * pd - 2.0) +
                         2.0 * sf(A) * sf(B) * A * B - phi(A) * phi(C) - phi(B) * phi(D)) /
                        (2.0 * (pd - 1.0));
  return first + second;
}

}  // namespace pcurv
