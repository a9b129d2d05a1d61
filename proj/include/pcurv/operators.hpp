#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcurv/graph.hpp"

namespace pcurv {

/// Exponent p > 1 selecting the nonlinearity of the p-Laplacian.
class PValue {
 public:
  enum class Regime { SubQuadratic, Quadratic, SuperQuadratic };

  explicit PValue(double p) : p_(p) {
    if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  }

  double get() const { return p_; }
  Regime regime() const {
    if (p_ < 2.0) return Regime::SubQuadratic;
    return p_ == 2.0 ? Regime::Quadratic : Regime::SuperQuadratic;
  }

 private:
  double p_;
};

/// Dimension parameter m in (0, inf]. At infinity the (p-1)/m term vanishes.
class Dimension {
 public:
  static Dimension infinite() { return Dimension(std::numeric_limits<double>::infinity()); }
  static Dimension finite(double m) {
    if (!(m > 0.0)) throw std::invalid_argument("dimension must be positive");
    if (std::isinf(m)) return infinite();
    return Dimension(m);
  }

  bool is_infinite() const { return std::isinf(m_); }
  double get() const { return m_; }
  /// (p-1)/m, identically 0 at infinite dimension.
  double coefficient(PValue p) const { return is_infinite() ? 0.0 : (p.get() - 1.0) / m_; }

 private:
  explicit Dimension(double m) : m_(m) {}
  double m_;
};

/// |t|^(p-2) t, extended continuously by phi_p(0) = 0 for every p > 1.
double phi_p(double t, PValue p);

/// |t|^(p-2) * cofactor with the zero-difference conventions used throughout:
/// at t == 0 the factor is 1 for p == 2 (classical reduction), 0 for p > 2,
/// and for p < 2 the product is a signed infinity unless the cofactor is 0.
double abs_power_term(double t, double cofactor, PValue p);

/// p-Laplacian: (1/mu(x)) sum_{y ~ x} w_xy |f(y)-f(x)|^(p-2) (f(y)-f(x)).
double delta_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p);

/// p-energy density: ((p-1)/(2 mu(x))) sum_{y ~ x} w_xy |f(y)-f(x)|^p.
double gamma_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p);

/// Bilinear form ((p-1)/(2 mu(x))) sum w_xy |u(y)-u(x)|^(p-2) (f(y)-f(x))(h(y)-h(x)).
double gamma_p_bilinear(const WeightedGraph& g, const VertexFunction& u,
                        const VertexFunction& f, const VertexFunction& h, int x, PValue p);

/// Iterated form
///   (1/(p(p-1) mu(x))) sum w_xy |f(y)-f(x)|^(p-2) (Gamma_p f(y) - Gamma_p f(x))
///   - (1/(p-1)^2) Gamma_{p,f}(f, Delta_p f)(x).
/// Depends on f only through its restriction to extract_ball2_inc(g, x).
/// For p < 2 a zero edge-difference at x against a nonzero cofactor makes the
/// value a signed infinity; that is the mechanism behind the curvature
/// diverging to -infinity in the subquadratic regime.
double gamma2_p(const WeightedGraph& g, const VertexFunction& f, int x, PValue p);

/// Gamma_{2,p} f(x) - (p-1)/m (Delta_p f(x))^2 - K (Gamma_p f(x))^((2p-2)/p).
/// The CD_p(m, K) condition holds at x iff this is >= 0 for every f.
double cd_gap(const WeightedGraph& g, const VertexFunction& f, int x, PValue p,
              Dimension m, double K);

/// [Gamma_{2,p} f(x) - (p-1)/m (Delta_p f(x))^2] / (Gamma_p f(x))^((2p-2)/p);
/// the unique K making the CD_p inequality tight for this f. Invariant under
/// f -> lambda f and f -> f + c. Throws DegenerateFunction when Gamma_p
/// vanishes at x.
double cd_ratio(const WeightedGraph& g, const VertexFunction& f, int x, PValue p,
                Dimension m);

}  // namespace pcurv
