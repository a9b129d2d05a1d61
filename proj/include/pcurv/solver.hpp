#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcurv/operators.hpp"

namespace pcurv {

struct SolverConfig {
  int restarts = 64;
  std::uint64_t seed = 0;
  int max_iterations = 400;
  double step_tolerance = 1e-10;
  double value_tolerance = 1e-9;
  /// Below this distance of any edge-difference from 0, the objective is
  /// treated as nonsmooth for p < 3 and the minimizer switches to pattern
  /// search steps.
  double smoothing_epsilon = 1e-8;
  /// Ratios below this value are reported as divergence to -infinity.
  double divergence_threshold = -1e6;
  /// Probe the p < 2 divergence family before minimizing (p < 2 only).
  bool probe_divergence = true;
  /// Number of threads over which restarts are distributed. Results are
  /// bitwise independent of this value.
  int workers = 1;
  /// Optional start points (on the host graph, defined on the 2-ball of the
  /// base vertex); they occupy the first restart slots.
  std::vector<VertexFunction> warm_starts;

  void validate() const;
};

struct DivergenceEvidence {
  double t;           // probed edge-difference magnitude; 0 when found by descent
  int sphere_vertex;  // host index of the probed 1-sphere vertex; -1 when found by descent
  double ratio;       // cd_ratio of the witness
};

struct CurvatureEstimate {
  enum class Status { Converged, DivergingToMinusInfinity, Degenerate };

  Status status = Status::Degenerate;
  /// cd_ratio at the witness; meaningful when converged.
  double value = 0.0;
  /// Minimizing function on the host graph, defined on the incomplete 2-ball,
  /// gauge-fixed to witness(x) = 0 and Gamma_p witness(x) = 1.
  VertexFunction witness;
  int restarts_used = 0;
  /// Final objective value of each restart, in restart order.
  std::vector<double> best_per_restart;
  /// Present when divergence was established by the probe family.
  std::optional<DivergenceEvidence> evidence;
};

/// The CD ratio restricted to an incomplete 2-ball with the center value
/// gauge-fixed to 0, as a smooth-where-possible objective over the remaining
/// vertex values. Exposes the analytic gradient used by the local minimizer.
class BallRatio {
 public:
  BallRatio(const LocalBall& ball, PValue p, Dimension m);

  int dimension() const { return n_ - 1; }
  double p() const { return p_; }

  /// cd_ratio of the function (0, x[0], ..., x[n-2]); +infinity when the
  /// center Gamma_p vanishes or the value is not a number.
  double value(std::span<const double> x) const;
  double gamma_p_center(std::span<const double> x) const;
  double min_abs_edge_difference(std::span<const double> x) const;
  /// Rescales x so that Gamma_p at the center is 1 (no-op when it is 0).
  void normalize(std::span<double> x) const;
  /// Analytic gradient of value() at x. Valid wherever the objective is
  /// differentiable (p >= 3, or no edge-difference at 0).
  void gradient(std::span<const double> x, std::span<double> out) const;

 private:
  double at(std::span<const double> x, int v) const { return v == 0 ? 0.0 : x[v - 1]; }
  double gamma_at(std::span<const double> x, int v) const;
  double delta_at(std::span<const double> x, int v) const;

  int n_;
  double p_;
  double mcoef_;  // (p-1)/m
  std::vector<double> mu_;
  std::vector<std::vector<Neighbor>> adj_;
};

struct ProbeResult {
  VertexFunction witness;  // on the host graph
  DivergenceEvidence info;
};

/// Evaluates the divergence family for p < 2: one 1-sphere edge-difference
/// set to t, the others to 1, 2-sphere values copying their first 1-sphere
/// neighbor, for t = 1e-1, 1e-2, ... down to 1e-100. Returns evidence as
/// soon as the ratio falls below the threshold. The decade floor bounds how
/// close to p = 2 a divergence can be certified; the acceptance range
/// p <= 1.8 needs t down to about 1e-32.
std::optional<ProbeResult> probe_divergence(const WeightedGraph& g, int x, PValue p,
                                            Dimension m, double divergence_threshold = -1e6);

/// Estimates the curvature K_{p,x,G}(m) by multistart minimization of the CD
/// ratio over the incomplete 2-ball. The estimate is an upper bound on the
/// true infimum and equals cd_ratio(witness).
CurvatureEstimate estimate_curvature(const WeightedGraph& g, int x, PValue p, Dimension m,
                                     const SolverConfig& cfg);

/// Independent oracle: minimum of the CD ratio over a product grid of vertex
/// values in [-range_bound, range_bound] (center fixed at 0), refined by
/// coordinate descent from the best grid point. Throws BallTooLarge when the
/// ball has more than 6 free variables.
double brute_force_curvature(const WeightedGraph& g, int x, PValue p, Dimension m,
                             int grid_resolution, double range_bound);

struct CdVerdict {
  bool falsified = false;
  /// cd_gap of the witness against the tested K (when falsified).
  double gap = 0.0;
  std::optional<VertexFunction> witness;
};

/// One-sided check of CD_p(m, K) at x: falsified when the solver finds f
/// with cd_gap below -value_tolerance, otherwise not falsified.
CdVerdict check_cd(const WeightedGraph& g, int x, PValue p, Dimension m, double K,
                   const SolverConfig& cfg);

std::vector<CurvatureEstimate> curvature_profile(const WeightedGraph& g, int x, PValue p,
                                                 std::span<const Dimension> m_list,
                                                 const SolverConfig& cfg);

}  // namespace pcurv
